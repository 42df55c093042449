//! Convergence tables for the W-based asymptotic estimates of `π(x)` and `pₙ`.

use std::collections::BTreeMap;
use std::f64::consts::E;

use crate::error::{Error, Result};
use crate::lambert_w::{w0, wm1};
use crate::prime_engine::PrimeTable;

/// `x/W₀(x)`, the estimate of `π(x)`.
pub const PI_ESTIMATOR: &str = "x_over_w";
/// `-n·W₋₁(-1/n)`.
pub const BASIC_ESTIMATOR: &str = "w_basic";
/// `-n·W₋₁(-e/n)`.
pub const REFINED_ESTIMATOR: &str = "w_refined";
/// Cesàro–Cipolla truncated after one, two and three terms.
pub const CESARO_ESTIMATORS: [&str; 3] = ["cc1", "cc2", "cc3"];

/// One row of a convergence table.
///
/// For every estimator, `ratio = truth / estimate` and
/// `rel_error = |estimate - truth| / truth`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub index: u64,
    pub truth: u64,
    pub estimates: BTreeMap<&'static str, f64>,
    pub ratios: BTreeMap<&'static str, f64>,
    pub rel_error: BTreeMap<&'static str, f64>,
}

impl ConvergenceRow {
    pub fn new(index: u64, truth: u64) -> Self {
        ConvergenceRow {
            index,
            truth,
            estimates: BTreeMap::new(),
            ratios: BTreeMap::new(),
            rel_error: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, id: &'static str, estimate: f64) {
        let t = self.truth as f64;
        let rel = if self.truth == 0 {
            f64::INFINITY
        } else {
            (estimate - t).abs() / t
        };
        self.estimates.insert(id, estimate);
        self.ratios.insert(id, t / estimate);
        self.rel_error.insert(id, rel);
    }
}

/// Which W-based estimate of `pₙ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PnVariant {
    /// `-n·W₋₁(-1/n)`, needs `n ≥ 3`.
    Basic,
    /// `-n·W₋₁(-e/n)`, needs `n ≥ 8`.
    Refined,
}

impl PnVariant {
    pub fn min_n(self) -> u64 {
        match self {
            PnVariant::Basic => 3,
            PnVariant::Refined => 8,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            PnVariant::Basic => BASIC_ESTIMATOR,
            PnVariant::Refined => REFINED_ESTIMATOR,
        }
    }
}

pub fn pn_estimate(n: u64, variant: PnVariant) -> Result<f64> {
    if n < variant.min_n() {
        return Err(Error::domain(
            "pn_estimate",
            format!("{variant:?} estimate needs n >= {}, got {n}", variant.min_n()),
        ));
    }
    let scale = match variant {
        PnVariant::Basic => 1.0,
        PnVariant::Refined => E,
    };
    let n = n as f64;
    Ok(-n * wm1(-scale / n)?.value)
}

/// `n·ln n`, `n(ln n + ln ln n)` or `n(ln n + ln ln n - 1)`.
pub fn cesaro_cipolla(n: u64, terms: u32) -> Result<f64> {
    if !(1..=3).contains(&terms) {
        return Err(Error::domain(
            "cesaro_cipolla",
            format!("terms must be 1, 2 or 3, got {terms}"),
        ));
    }
    if n < 2 {
        return Err(Error::domain("cesaro_cipolla", format!("n must be >= 2, got {n}")));
    }
    let nf = n as f64;
    let ln = nf.ln();
    let inner = match terms {
        1 => ln,
        2 => ln + ln.ln(),
        _ => ln + ln.ln() - 1.0,
    };
    Ok(nf * inner)
}

fn check_points(points: &[u64], bound: u64, what: &str) -> Result<()> {
    match points.iter().find(|&&p| p > bound) {
        Some(p) => Err(Error::Range(format!("{what} {p} beyond table coverage {bound}"))),
        None => Ok(()),
    }
}

fn sorted(points: &[u64]) -> Vec<u64> {
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    pts
}

/// `π(x)` against `x/W(x)` at each point; `ratio = π(x)·W(x)/x`.
pub fn pi_ratio_table(table: &PrimeTable, points: &[u64]) -> Result<Vec<ConvergenceRow>> {
    check_points(points, table.limit(), "x")?;
    sorted(points)
        .into_iter()
        .map(|x| {
            let mut row = ConvergenceRow::new(x, table.pi(x));
            row.insert(PI_ESTIMATOR, (w0(x as f64)?.value).exp());
            Ok(row)
        })
        .collect()
}

/// `pₙ` against one W-based estimate at each point.
pub fn pn_estimate_table(
    table: &PrimeTable,
    points: &[u64],
    variant: PnVariant,
) -> Result<Vec<ConvergenceRow>> {
    check_points(points, table.prime_count(), "n")?;
    sorted(points)
        .into_iter()
        .map(|n| {
            let mut row = ConvergenceRow::new(n, table.nth_prime(n)?);
            row.insert(variant.id(), pn_estimate(n, variant)?);
            Ok(row)
        })
        .collect()
}

/// `pₙ` against both W estimates and the one-, two- and three-term
/// Cesàro–Cipolla truncations.
pub fn expansion_error_report(table: &PrimeTable, points: &[u64]) -> Result<Vec<ConvergenceRow>> {
    check_points(points, table.prime_count(), "n")?;
    sorted(points)
        .into_iter()
        .map(|n| {
            let mut row = ConvergenceRow::new(n, table.nth_prime(n)?);
            row.insert(BASIC_ESTIMATOR, pn_estimate(n, PnVariant::Basic)?);
            row.insert(REFINED_ESTIMATOR, pn_estimate(n, PnVariant::Refined)?);
            for (terms, id) in (1..=3).zip(CESARO_ESTIMATORS) {
                row.insert(id, cesaro_cipolla(n, terms)?);
            }
            Ok(row)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle_wm1(x: f64) -> f64 {
        let (mut lo, mut hi) = (-60.0f64, -1.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            // w·e^w decreases along the lower branch
            if mid * mid.exp() - x > 0.0 {
                lo = mid
            } else {
                hi = mid
            }
        }
        lo
    }

    #[test]
    fn estimates_at_one_hundred() {
        assert!((oracle_wm1(-0.01) + 6.473).abs() < 1e-3);
        let basic = pn_estimate(100, PnVariant::Basic).unwrap();
        assert!((basic + 100.0 * oracle_wm1(-0.01)).abs() < 1e-10);
        assert!((basic - 647.3).abs() < 0.05);
        assert!(((basic - 541.0) / 541.0 - 0.196).abs() < 1e-3);

        assert!((oracle_wm1(-E / 100.0) + 5.267).abs() < 1e-3);
        let refined = pn_estimate(100, PnVariant::Refined).unwrap();
        assert!((refined - 526.7).abs() < 0.05);
        assert!(((541.0 - refined) / 541.0 - 0.026).abs() < 1e-3);

        assert!(pn_estimate(7, PnVariant::Refined).is_err());
        assert!(pn_estimate(8, PnVariant::Refined).is_ok());
        assert!(pn_estimate(2, PnVariant::Basic).is_err());
    }

    #[test]
    fn cesaro_examples() {
        assert!((cesaro_cipolla(100, 3).unwrap() - 513.2).abs() < 0.05);
        let d = cesaro_cipolla(15, 2).unwrap() - cesaro_cipolla(15, 1).unwrap();
        assert!((d - 15.0 * 15f64.ln().ln()).abs() < 1e-12);
        assert!((d / 15.0 - 0.9962).abs() < 1e-4);
        for n in [2u64, 10, 1000, 123_456] {
            let diff = cesaro_cipolla(n, 2).unwrap() - cesaro_cipolla(n, 3).unwrap();
            assert!((diff - n as f64).abs() <= 1e-9 * n as f64);
        }
        assert!(cesaro_cipolla(1, 1).is_err());
        assert!(cesaro_cipolla(10, 4).is_err());
        assert!(cesaro_cipolla(10, 0).is_err());
    }

    #[test]
    fn pi_table_rows() {
        let t = PrimeTable::build(100_000).unwrap();
        let rows = pi_ratio_table(&t, &[100_000, 100, 1000]).unwrap();
        assert_eq!(rows.iter().map(|r| r.index).collect::<Vec<_>>(), vec![100, 1000, 100_000]);
        let r = &rows[0];
        assert_eq!(r.truth, 25);
        assert!((r.ratios[PI_ESTIMATOR] - 0.8464).abs() < 1e-4);
        assert!(rows.iter().all(|r| r.ratios[PI_ESTIMATOR] < 1.0));
        assert!(pi_ratio_table(&t, &[100_001]).is_err());
    }

    #[test]
    fn row_consistency() {
        let t = PrimeTable::build(100_000).unwrap();
        for row in expansion_error_report(&t, &[10, 100, 1000, 9000]).unwrap() {
            for (id, est) in &row.estimates {
                let truth = row.truth as f64;
                assert!((row.ratios[id] * est - truth).abs() <= 1e-12 * truth);
                assert!(((est - truth).abs() / truth - row.rel_error[id]).abs() <= 1e-12);
            }
            assert_eq!(row.estimates.len(), 5);
        }
        assert!(expansion_error_report(&t, &[5]).is_err());
    }
}
