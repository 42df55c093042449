//! Exhaustive checks of a bound against sieve truth over integer ranges.

use rayon::prelude::*;

use super::{BoundFamily, BoundSpec, Direction, Subject};
use crate::error::{Error, Result};
use crate::prime_engine::PrimeTable;

/// Bound and truth this close (relative to `max(1, |bound|)`) are a tie.
pub const MARGINAL_TOLERANCE: f64 = 1e-9;

// Shards per worker thread for the parallel sweep.
const SHARDS_PER_THREAD: usize = 4;

// Sample density of the crossover scan.
const CROSSOVER_SAMPLES: usize = 1024;
const CROSSOVER_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// The inequality fails outright.
    Strict,
    /// Bound and truth agree to within [`MARGINAL_TOLERANCE`].
    Marginal,
    /// The bound is undefined here although its claim covers the point.
    Undefined,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    /// `x` for `π` bounds, `n` for `pₙ` bounds.
    pub arg: u64,
    /// `None` when the bound is undefined at `arg`.
    pub bound: Option<f64>,
    pub truth: u64,
    pub kind: ViolationKind,
}

/// Outcome of sweeping one bound over `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidityReport {
    pub spec: BoundSpec,
    pub lo: u64,
    pub hi: u64,
    /// Sorted by argument.
    pub violations: Vec<Violation>,
    /// Arguments outside the bound's domain that its claim excludes.
    pub skipped: Vec<u64>,
    /// Smallest `t` such that the bound holds on every integer in `[t, hi]`.
    pub empirical_threshold: Option<u64>,
}

impl ValidityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn checked(&self) -> u64 {
        self.hi - self.lo + 1 - self.skipped.len() as u64
    }
}

/// Truth value the bound is compared with: `π(arg)` or `p_arg`.
pub(crate) fn truth(table: &PrimeTable, subject: Subject, arg: u64) -> u64 {
    match subject {
        Subject::PrimeCount => table.pi(arg),
        Subject::NthPrime => table
            .nth_prime(arg)
            .expect("argument range checked against the table"),
    }
}

fn check_range(spec: &BoundSpec, table: &PrimeTable, lo: u64, hi: u64) -> Result<()> {
    if lo > hi {
        return Err(Error::Range(format!("empty range [{lo}, {hi}]")));
    }
    match spec.family.subject() {
        Subject::PrimeCount if hi > table.limit() => Err(Error::Range(format!(
            "x = {hi} beyond sieve limit {}",
            table.limit()
        ))),
        Subject::NthPrime if lo == 0 => Err(Error::Range("primes are indexed from 1".into())),
        Subject::NthPrime if hi > table.prime_count() => Err(Error::Range(format!(
            "n = {hi} beyond the {} primes in the table",
            table.prime_count()
        ))),
        _ => Ok(()),
    }
}

enum Outcome {
    Holds,
    Skipped,
    Fails(Violation),
}

fn classify(spec: &BoundSpec, table: &PrimeTable, arg: u64) -> Result<Outcome> {
    let family = spec.family;
    let truth = truth(table, family.subject(), arg);
    let bound = match spec.evaluate(arg) {
        Ok(v) => v,
        Err(Error::Domain { .. }) if family.undefined_is_violation() => {
            return Ok(Outcome::Fails(Violation {
                arg,
                bound: None,
                truth,
                kind: ViolationKind::Undefined,
            }))
        }
        Err(Error::Domain { .. }) => return Ok(Outcome::Skipped),
        Err(e) => return Err(e),
    };
    let t = truth as f64;
    if (bound - t).abs() <= MARGINAL_TOLERANCE * bound.abs().max(1.0) {
        return Ok(Outcome::Fails(Violation {
            arg,
            bound: Some(bound),
            truth,
            kind: ViolationKind::Marginal,
        }));
    }
    let holds = match family.direction() {
        Direction::Upper => bound > t,
        Direction::Lower => bound < t,
    };
    Ok(if holds {
        Outcome::Holds
    } else {
        Outcome::Fails(Violation {
            arg,
            bound: Some(bound),
            truth,
            kind: ViolationKind::Strict,
        })
    })
}

fn sweep(
    spec: &BoundSpec,
    table: &PrimeTable,
    lo: u64,
    hi: u64,
) -> Result<(Vec<Violation>, Vec<u64>)> {
    let mut violations = Vec::new();
    let mut skipped = Vec::new();
    for arg in lo..=hi {
        match classify(spec, table, arg)? {
            Outcome::Holds => {}
            Outcome::Skipped => skipped.push(arg),
            Outcome::Fails(v) => violations.push(v),
        }
    }
    Ok((violations, skipped))
}

/// Check `spec` at every integer of `[lo, hi]` against the sieve.
pub fn verify_range(
    spec: &BoundSpec,
    table: &PrimeTable,
    lo: u64,
    hi: u64,
) -> Result<ValidityReport> {
    let shards = rayon::current_num_threads() * SHARDS_PER_THREAD;
    verify_range_sharded(spec, table, lo, hi, shards)
}

/// [`verify_range`] with an explicit number of contiguous shards.
///
/// Shards are checked in parallel and merged in order, so the report does
/// not depend on `shards`.
pub fn verify_range_sharded(
    spec: &BoundSpec,
    table: &PrimeTable,
    lo: u64,
    hi: u64,
    shards: usize,
) -> Result<ValidityReport> {
    spec.validate()?;
    check_range(spec, table, lo, hi)?;

    let len = hi - lo + 1;
    let shards = (shards.max(1) as u64).min(len);
    let width = len.div_ceil(shards);
    let pieces: Vec<(u64, u64)> = (0..shards)
        .map(|k| (lo + k * width, (lo + (k + 1) * width - 1).min(hi)))
        .filter(|(a, b)| a <= b)
        .collect();

    let parts = pieces
        .par_iter()
        .map(|&(a, b)| sweep(spec, table, a, b))
        .collect::<Result<Vec<_>>>()?;

    let mut violations = Vec::new();
    let mut skipped = Vec::new();
    for (v, s) in parts {
        violations.extend(v);
        skipped.extend(s);
    }

    let empirical_threshold = match violations.last() {
        None => Some(lo),
        Some(v) if v.arg == hi => None,
        Some(v) => Some(v.arg + 1),
    };

    Ok(ValidityReport {
        spec: *spec,
        lo,
        hi,
        violations,
        skipped,
        empirical_threshold,
    })
}

/// Smallest `t` from which `spec` holds on every integer up to `hi`, scanning
/// from the start of the argument range (`x = 0` or `n = 1`).
pub fn find_threshold(spec: &BoundSpec, table: &PrimeTable, hi: u64) -> Result<Option<u64>> {
    let lo = match spec.family.subject() {
        Subject::PrimeCount => 0,
        Subject::NthPrime => 1,
    };
    Ok(verify_range(spec, table, lo, hi)?.empirical_threshold)
}

/// Where `b` overtakes `a`: the sign change of `b(x) - a(x)` on `[lo, hi]`.
///
/// Both specs must be `π` lower bounds. The interval is scanned on a
/// geometric grid; exactly one sign change is required, which is then
/// bisected to an absolute tolerance of `1e-6`.
pub fn find_crossover(a: &BoundSpec, b: &BoundSpec, lo: f64, hi: f64) -> Result<f64> {
    for spec in [a, b] {
        spec.validate()?;
        let lower_pi = matches!(
            spec.family,
            BoundFamily::PiLowerPower | BoundFamily::PiLowerLinear | BoundFamily::UInverse
        );
        if !lower_pi {
            return Err(Error::domain(
                "find_crossover",
                format!("{} is not a lower bound on pi(x)", spec.family),
            ));
        }
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::domain(
            "find_crossover",
            format!("invalid interval [{lo}, {hi}]"),
        ));
    }

    let diff = |x: f64| -> Result<f64> { Ok(b.evaluate_real(x)? - a.evaluate_real(x)?) };

    let grid: Vec<f64> = (0..=CROSSOVER_SAMPLES)
        .map(|k| {
            let t = k as f64 / CROSSOVER_SAMPLES as f64;
            if k == CROSSOVER_SAMPLES {
                hi
            } else if lo > 0.0 {
                lo * (hi / lo).powf(t)
            } else {
                lo + (hi - lo) * t
            }
        })
        .collect();

    let mut brackets = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for &x in &grid {
        let g = diff(x)?;
        if g == 0.0 {
            continue;
        }
        if let Some((px, pg)) = last {
            if (pg < 0.0) != (g < 0.0) {
                brackets.push((px, x, pg));
            }
        }
        last = Some((x, g));
    }

    let (mut left, mut right, g_left) = match brackets.as_slice() {
        [] => return Err(Error::Bracket { lo, hi }),
        [one] => *one,
        many => {
            return Err(Error::Ambiguous {
                lo,
                hi,
                changes: many.len(),
            })
        }
    };
    while right - left > CROSSOVER_TOLERANCE {
        let mid = 0.5 * (left + right);
        let g = diff(mid)?;
        if g == 0.0 {
            return Ok(mid);
        }
        if (g < 0.0) == (g_left < 0.0) {
            left = mid;
        } else {
            right = mid;
        }
    }
    Ok(0.5 * (left + right))
}
