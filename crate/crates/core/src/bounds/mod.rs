//! Lambert-W bounds on `π(x)` and `pₙ`.
//!
//! Each bound is a plain real-valued function. [`BoundSpec`] packages one
//! family with its parameters so that the sweeps in [`verify`] can treat
//! every bound uniformly.

mod inverse;
pub mod verify;

use std::f64::consts::E;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lambert_w::{w0, wm1};

pub use inverse::{u_forward, u_of};
pub use verify::{
    find_crossover, find_threshold, verify_range, verify_range_sharded, ValidityReport, Violation,
    ViolationKind,
};

/// Which bound a [`BoundSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundFamily {
    /// `π(x) < e^{W₀(x)} = x/W₀(x)`.
    PiUpperW,
    /// `π(x) > (x/(1+ε)) / W₀((x/(1+ε))·(εe)^{-1/(1+ε)}) - 1`.
    PiLowerPower,
    /// `π(x) > (x/(1+c)) / W₀(x/(1+c)) - 1`, with `c = e^{-2+ε}`.
    PiLowerLinear,
    /// `pₙ < -n·W₋₁(-1/(n+shift))`.
    PnUpper,
    /// `pₙ > -(n-1)·W₋₁(-e^{3/2}/(n-1))`.
    PnLower,
    /// `pₙ < -n·W₋₁(-e^{1-ε}/n)`.
    PnBandUpper,
    /// `pₙ > -(n-1)·W₋₁(-e^{1+ε}/(n-1))`.
    PnBandLower,
    /// `π(x) > U(x) - 1`, where `U` inverts `z ↦ z·ln(z·ln z)`.
    UInverse,
}

/// The quantity a bound constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subject {
    /// `π(x)`, argument is `x`.
    PrimeCount,
    /// `pₙ`, argument is `n`.
    NthPrime,
}

/// Side of the truth the bound sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Upper,
    Lower,
}

impl BoundFamily {
    pub const ALL: [BoundFamily; 8] = [
        BoundFamily::PiUpperW,
        BoundFamily::PiLowerPower,
        BoundFamily::PiLowerLinear,
        BoundFamily::PnUpper,
        BoundFamily::PnLower,
        BoundFamily::PnBandUpper,
        BoundFamily::PnBandLower,
        BoundFamily::UInverse,
    ];

    /// Stable identifier used on the command line and in reports.
    pub fn id(self) -> &'static str {
        match self {
            BoundFamily::PiUpperW => "pi-upper-w",
            BoundFamily::PiLowerPower => "pi-lower-power",
            BoundFamily::PiLowerLinear => "pi-lower-linear",
            BoundFamily::PnUpper => "pn-upper",
            BoundFamily::PnLower => "pn-lower",
            BoundFamily::PnBandUpper => "pn-band-upper",
            BoundFamily::PnBandLower => "pn-band-lower",
            BoundFamily::UInverse => "u-inverse",
        }
    }

    pub fn subject(self) -> Subject {
        match self {
            BoundFamily::PiUpperW
            | BoundFamily::PiLowerPower
            | BoundFamily::PiLowerLinear
            | BoundFamily::UInverse => Subject::PrimeCount,
            _ => Subject::NthPrime,
        }
    }

    pub fn direction(self) -> Direction {
        match self {
            BoundFamily::PiUpperW | BoundFamily::PnUpper | BoundFamily::PnBandUpper => {
                Direction::Upper
            }
            _ => Direction::Lower,
        }
    }

    /// Whether an out-of-domain point counts against the bound.
    ///
    /// For `pn-upper` the W₋₁ domain starts before the claimed validity
    /// start, so the undefined points `n + shift ≤ e` are failures of the
    /// claim. Everywhere else the stated range excludes them and they are
    /// skipped.
    pub fn undefined_is_violation(self) -> bool {
        matches!(self, BoundFamily::PnUpper)
    }
}

impl fmt::Display for BoundFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for BoundFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundFamily::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::domain("bound", format!("unknown bound id {s:?}")))
    }
}

/// One bound family with its parameters and the validity start it is
/// claimed to have, where one is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundSpec {
    pub family: BoundFamily,
    /// `ε`, used by `PiLowerPower` and the band families.
    pub epsilon: f64,
    /// `c`, used by `PiLowerLinear`.
    pub linear_coeff: f64,
    /// Added to `n` inside W₋₁ by `PnUpper`.
    pub shift: f64,
    pub claimed_from: Option<u64>,
}

impl BoundSpec {
    fn with(family: BoundFamily) -> Self {
        BoundSpec {
            family,
            epsilon: 1.0,
            linear_coeff: 1.0,
            shift: 0.0,
            claimed_from: None,
        }
    }

    pub fn pi_upper_w() -> Self {
        BoundSpec {
            claimed_from: Some(0),
            ..Self::with(BoundFamily::PiUpperW)
        }
    }

    /// The `ε`-family of lower bounds; `ε = e⁻¹` and `ε = e⁻³` carry their
    /// own (wider) validity ranges, every other `ε` the generic `x ≥ 11`.
    pub fn pi_lower_power(epsilon: f64) -> Self {
        let claimed_from = if epsilon == (-1.0f64).exp() {
            5
        } else if epsilon == (-3.0f64).exp() {
            0
        } else {
            11
        };
        BoundSpec {
            epsilon,
            claimed_from: Some(claimed_from),
            ..Self::with(BoundFamily::PiLowerPower)
        }
    }

    pub fn pi_lower_linear(coeff: f64) -> Self {
        let claimed_from = if coeff == E {
            Some(3)
        } else if coeff == (-1.5f64).exp() {
            Some(60)
        } else {
            None
        };
        BoundSpec {
            linear_coeff: coeff,
            claimed_from,
            ..Self::with(BoundFamily::PiLowerLinear)
        }
    }

    /// `PiLowerLinear` parameterised by `ε` through `c = e^{-2+ε}`.
    pub fn pi_lower_linear_eps(epsilon: f64) -> Self {
        Self::pi_lower_linear((epsilon - 2.0).exp())
    }

    pub fn pn_upper(shift: f64) -> Self {
        let claimed_from = if shift == 0.0 {
            Some(4)
        } else if shift == E {
            Some(1)
        } else {
            None
        };
        BoundSpec {
            shift,
            claimed_from,
            ..Self::with(BoundFamily::PnUpper)
        }
    }

    pub fn pn_lower() -> Self {
        BoundSpec {
            claimed_from: Some(14),
            ..Self::with(BoundFamily::PnLower)
        }
    }

    pub fn pn_band_upper(epsilon: f64) -> Self {
        BoundSpec {
            epsilon,
            ..Self::with(BoundFamily::PnBandUpper)
        }
    }

    pub fn pn_band_lower(epsilon: f64) -> Self {
        BoundSpec {
            epsilon,
            ..Self::with(BoundFamily::PnBandLower)
        }
    }

    pub fn u_inverse() -> Self {
        BoundSpec {
            claimed_from: Some(11),
            ..Self::with(BoundFamily::UInverse)
        }
    }

    /// Check the parameters the family actually uses.
    pub fn validate(&self) -> Result<()> {
        match self.family {
            BoundFamily::PiLowerPower | BoundFamily::PnBandUpper | BoundFamily::PnBandLower => {
                check_positive("epsilon", self.epsilon)
            }
            BoundFamily::PiLowerLinear => check_positive("linear_coeff", self.linear_coeff),
            BoundFamily::PnUpper => check_shift(self.shift),
            _ => Ok(()),
        }
    }

    /// Evaluate the bound at an integer argument (`x` or `n`).
    pub fn evaluate(&self, arg: u64) -> Result<f64> {
        let x = arg as f64;
        match self.family {
            BoundFamily::PiUpperW => pi_upper(x),
            BoundFamily::PiLowerPower => pi_lower_power(x, self.epsilon),
            BoundFamily::PiLowerLinear => pi_lower_linear(x, self.linear_coeff),
            BoundFamily::PnUpper => pn_upper(arg, self.shift),
            BoundFamily::PnLower => pn_lower(arg),
            BoundFamily::PnBandUpper => band_upper(arg, self.epsilon),
            BoundFamily::PnBandLower => band_lower(arg, self.epsilon),
            BoundFamily::UInverse => Ok(u_of(x)? - 1.0),
        }
    }

    /// Evaluate a `π` bound at a real argument.
    pub fn evaluate_real(&self, x: f64) -> Result<f64> {
        match self.family {
            BoundFamily::PiUpperW => pi_upper(x),
            BoundFamily::PiLowerPower => pi_lower_power(x, self.epsilon),
            BoundFamily::PiLowerLinear => pi_lower_linear(x, self.linear_coeff),
            BoundFamily::UInverse => Ok(u_of(x)? - 1.0),
            other => Err(Error::domain(
                "evaluate_real",
                format!("{other} is indexed by integers"),
            )),
        }
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("bound", format!("{name} must be positive, got {v}")))
    }
}

fn check_shift(v: f64) -> Result<()> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("bound", format!("shift must be >= 0, got {v}")))
    }
}

fn check_nonnegative(op: &'static str, x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(op, format!("x must be >= 0, got {x}")))
    }
}

/// `-W₋₁(arg)`, with domain failures reported against `op`.
fn neg_wm1(op: &'static str, arg: f64) -> Result<f64> {
    match wm1(arg) {
        Ok(w) => Ok(-w.value),
        Err(Error::Domain { detail, .. }) => Err(Error::Domain { op, detail }),
        Err(e) => Err(e),
    }
}

/// Upper bound on `π(x)`: `e^{W₀(x)}`, which equals `x/W₀(x)` for `x > 0`
/// and stays finite (equal to 1) at `x = 0`.
pub fn pi_upper(x: f64) -> Result<f64> {
    check_nonnegative("pi_upper", x)?;
    Ok(w0(x)?.value.exp())
}

/// Lower bound on `π(x)` from the power majorant `ln n ≤ n^ε/(εe)`.
///
/// At `x = 0` this is the limit `(εe)^{1/(1+ε)} - 1`.
pub fn pi_lower_power(x: f64, eps: f64) -> Result<f64> {
    check_nonnegative("pi_lower_power", x)?;
    check_positive("epsilon", eps)?;
    let scale = (eps * E).powf(-1.0 / (1.0 + eps));
    let z = x / (1.0 + eps);
    let w = w0(z * scale)?.value;
    if w == 0.0 {
        return Ok(scale.recip() - 1.0);
    }
    Ok(z / w - 1.0)
}

/// Lower bound on `π(x)` from `pₙ < (1 + c)·n·ln n`.
pub fn pi_lower_linear(x: f64, coeff: f64) -> Result<f64> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::domain("pi_lower_linear", format!("x must be > 0, got {x}")));
    }
    check_positive("linear_coeff", coeff)?;
    let z = x / (1.0 + coeff);
    let w = w0(z)?.value;
    if w == 0.0 {
        return Ok(0.0);
    }
    Ok(z / w - 1.0)
}

/// Upper bound on `pₙ`: `-n·W₋₁(-1/(n + shift))`.
pub fn pn_upper(n: u64, shift: f64) -> Result<f64> {
    check_shift(shift)?;
    if n == 0 {
        return Err(Error::domain("pn_upper", "n must be >= 1"));
    }
    let n = n as f64;
    Ok(n * neg_wm1("pn_upper", -1.0 / (n + shift))?)
}

/// Lower bound on `pₙ`: `-(n-1)·W₋₁(-e^{3/2}/(n-1))`, defined for `n ≥ 14`.
pub fn pn_lower(n: u64) -> Result<f64> {
    shifted_lower("pn_lower", n, 1.5)
}

fn shifted_lower(op: &'static str, n: u64, exponent: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::domain(op, format!("n must be >= 2, got {n}")));
    }
    let m = (n - 1) as f64;
    Ok(m * neg_wm1(op, -exponent.exp() / m)?)
}

fn band_upper(n: u64, eps: f64) -> Result<f64> {
    check_positive("epsilon", eps)?;
    if n == 0 {
        return Err(Error::domain("pn_band", "n must be >= 1"));
    }
    let n = n as f64;
    Ok(n * neg_wm1("pn_band", -(1.0 - eps).exp() / n)?)
}

fn band_lower(n: u64, eps: f64) -> Result<f64> {
    check_positive("epsilon", eps)?;
    shifted_lower("pn_band", n, 1.0 + eps)
}

/// Both sides of the `ε`-band around `pₙ`; a side outside its W₋₁ domain is `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub upper: Option<f64>,
    pub lower: Option<f64>,
}

impl Band {
    pub fn contains(&self, value: f64) -> Option<bool> {
        match (self.lower, self.upper) {
            (Some(lo), Some(hi)) => Some(lo < value && value < hi),
            _ => None,
        }
    }
}

/// `-(n-1)·W₋₁(-e^{1+ε}/(n-1)) < pₙ < -n·W₋₁(-e^{1-ε}/n)`.
pub fn pn_band(n: u64, eps: f64) -> Result<Band> {
    check_positive("epsilon", eps)?;
    let keep_domain = |r: Result<f64>| match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Domain { .. }) => Ok(None),
        Err(e) => Err(e),
    };
    let band = Band {
        upper: keep_domain(band_upper(n, eps))?,
        lower: keep_domain(band_lower(n, eps))?,
    };
    if band.upper.is_none() && band.lower.is_none() {
        return Err(Error::domain(
            "pn_band",
            format!("n = {n} is outside the domain of both sides for eps = {eps}"),
        ));
    }
    Ok(band)
}

/// `x^ε/(εe)`, which majorises `ln x` for every `ε > 0`, touching it at `x = e^{1/ε}`.
pub fn log_power_majorant(x: f64, eps: f64) -> f64 {
    x.powf(eps) / (eps * E)
}

/// Tangent line of `ln ln x` in the variable `ln x`, taken at `x₀`; lies above
/// `ln ln x` for `x, x₀ > 1` because the logarithm is concave.
pub fn loglog_tangent(x: f64, x0: f64) -> f64 {
    let l0 = x0.ln();
    l0.ln() + (x.ln() - l0) / l0
}
