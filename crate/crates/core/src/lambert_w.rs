//! The two real branches of the Lambert W function.
//!
//! `W(x)` is the inverse of `w ↦ w·e^w`. On the reals it has two branches
//! meeting at the branch point `x = -1/e`, where both equal `-1`:
//!
//! * the principal branch `W₀`, defined on `[-1/e, ∞)` with `W₀ ≥ -1`;
//! * the lower branch `W₋₁`, defined on `[-1/e, 0)` with `W₋₁ ≤ -1`.
//!
//! Both are evaluated with Halley's method on `f(w) = w·e^w - x`, started from
//! a branch-point series near `-1/e` and from the leading asymptotic terms
//! elsewhere. Results carry their own residual so callers can certify them.

use std::f64::consts::E;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// `-1/e`, the common left end of both real branches.
pub const BRANCH_POINT: f64 = -0.367_879_441_171_442_33;

/// Arguments this far below `-1/e` are rounding noise and are clamped onto it.
pub const CLAMP_TOLERANCE: f64 = 1e-15;

/// Within this distance of `-1/e` the value `-1` is returned without iterating.
pub const BRANCH_POINT_SNAP: f64 = 1e-12;

/// Certified bound on `|w·e^w - x| / max(1, |x|)` for every returned value.
pub const RESIDUAL_TOLERANCE: f64 = 1e-12;

const MAX_ITERATIONS: u32 = 50;
const STEP_TOLERANCE: f64 = 4.0 * f64::EPSILON;
const EARLY_RESIDUAL: f64 = 1e-14;

// Switch from the branch-point series to the log-based starting values.
const SERIES_CUTOFF: f64 = -0.25;

/// Real branch selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `W₀`, defined for `x ≥ -1/e`, values `≥ -1`.
    Principal,
    /// `W₋₁`, defined for `-1/e ≤ x < 0`, values `≤ -1`.
    MinusOne,
}

impl Branch {
    /// Branch index as conventionally written (`0` or `-1`).
    pub fn index(self) -> i32 {
        match self {
            Branch::Principal => 0,
            Branch::MinusOne => -1,
        }
    }

    /// Whether `x` lies in the real domain of this branch, clamp tolerance included.
    pub fn contains(self, x: f64) -> bool {
        if !x.is_finite() || x < BRANCH_POINT - CLAMP_TOLERANCE {
            return false;
        }
        match self {
            Branch::Principal => true,
            Branch::MinusOne => x < 0.0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(Branch::Principal),
            "-1" => Ok(Branch::MinusOne),
            other => Err(Error::domain(
                "branch",
                format!("unknown branch {other:?}, expected 0 or -1"),
            )),
        }
    }
}

/// A value of W together with its certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WResult {
    pub value: f64,
    /// `value·e^value - x`, evaluated in double precision.
    pub residual: f64,
    /// Number of Halley updates performed.
    pub iterations: u32,
}

/// Principal branch `W₀(x)`.
pub fn w0(x: f64) -> Result<WResult> {
    lambert_w(Branch::Principal, x)
}

/// Lower branch `W₋₁(x)`.
pub fn wm1(x: f64) -> Result<WResult> {
    lambert_w(Branch::MinusOne, x)
}

/// Evaluate the selected real branch at `x`.
pub fn lambert_w(branch: Branch, x: f64) -> Result<WResult> {
    let op = match branch {
        Branch::Principal => "w0",
        Branch::MinusOne => "wm1",
    };
    if !branch.contains(x) {
        return Err(Error::domain(op, domain_message(branch, x)));
    }
    let x = x.max(BRANCH_POINT);

    if x - BRANCH_POINT < BRANCH_POINT_SNAP {
        return Ok(certified(-1.0, x, 0));
    }
    if x == 0.0 {
        return Ok(certified(0.0, x, 0));
    }

    let start = initial_guess(branch, x);
    halley(op, branch, x, start)
}

fn domain_message(branch: Branch, x: f64) -> String {
    match branch {
        Branch::Principal => format!("argument {x} outside [-1/e, inf)"),
        Branch::MinusOne => format!("argument {x} outside [-1/e, 0)"),
    }
}

fn certified(value: f64, x: f64, iterations: u32) -> WResult {
    WResult {
        value,
        residual: value * value.exp() - x,
        iterations,
    }
}

/// `p = sqrt(2(e·x + 1))`, the natural variable of the branch-point series.
fn branch_point_distance(x: f64) -> f64 {
    (2.0 * E.mul_add(x, 1.0)).max(0.0).sqrt()
}

fn initial_guess(branch: Branch, x: f64) -> f64 {
    match branch {
        Branch::Principal => {
            if x < SERIES_CUTOFF {
                let p = branch_point_distance(x);
                -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)))
            } else if x < E {
                x.ln_1p()
            } else {
                let l1 = x.ln();
                l1 - l1.ln()
            }
        }
        Branch::MinusOne => {
            if x < SERIES_CUTOFF {
                let p = branch_point_distance(x);
                -1.0 - p * (1.0 + p * (1.0 / 3.0 + p * (11.0 / 72.0)))
            } else {
                let l1 = (-x).ln();
                l1 - (-l1).ln()
            }
        }
    }
}

fn halley(op: &'static str, branch: Branch, x: f64, mut w: f64) -> Result<WResult> {
    // Relative to |x|, not max(1, |x|): small arguments need small residuals
    // for the value itself to be accurate.
    let scale = x.abs();
    for iteration in 0..MAX_ITERATIONS {
        let ew = w.exp();
        let f = w * ew - x;
        if f.abs() <= EARLY_RESIDUAL * scale {
            return finish(op, x, w, iteration);
        }
        let wp1 = w + 1.0;
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        let mut next = w - step;
        // A step across -1 lands on the other branch; bisect towards -1 instead.
        let crossed = match branch {
            Branch::Principal => next < -1.0,
            Branch::MinusOne => next > -1.0,
        };
        if crossed || !next.is_finite() {
            next = 0.5 * (w - 1.0);
        }
        if (next - w).abs() <= STEP_TOLERANCE * next.abs() {
            return finish(op, x, next, iteration + 1);
        }
        w = next;
    }
    Err(Error::NonConvergence {
        op,
        arg: x,
        iterations: MAX_ITERATIONS,
    })
}

fn finish(op: &'static str, x: f64, w: f64, iterations: u32) -> Result<WResult> {
    let result = certified(w, x, iterations);
    if result.residual.abs() <= RESIDUAL_TOLERANCE * x.abs().max(1.0) {
        Ok(result)
    } else {
        Err(Error::NonConvergence {
            op,
            arg: x,
            iterations,
        })
    }
}

/// Two-term asymptotic approximation of the selected branch.
///
/// `ln x - ln ln x` for the principal branch (`x > 1`), and
/// `ln(-x) - ln(-ln(-x))` for the lower branch (`-1/e ≤ x < 0`).
pub fn asymptotic_estimate(branch: Branch, x: f64) -> Result<f64> {
    match branch {
        Branch::Principal => {
            if !(x > 1.0 && x.is_finite()) {
                return Err(Error::domain(
                    "asymptotic_estimate",
                    format!("principal expansion needs x > 1, got {x}"),
                ));
            }
            let l1 = x.ln();
            Ok(l1 - l1.ln())
        }
        Branch::MinusOne => {
            if !Branch::MinusOne.contains(x) {
                return Err(Error::domain(
                    "asymptotic_estimate",
                    format!("lower-branch expansion needs -1/e <= x < 0, got {x}"),
                ));
            }
            let l1 = (-x.max(BRANCH_POINT)).ln();
            Ok(l1 - (-l1).ln())
        }
    }
}

/// The equation `ln(a + b·x) + c·x = ln d`, solved in closed form through W.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLinearProblem {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub branch: Branch,
}

impl LogLinearProblem {
    pub fn new(a: f64, b: f64, c: f64, d: f64, branch: Branch) -> Self {
        LogLinearProblem { a, b, c, d, branch }
    }

    /// The argument handed to W: `(c·d/b)·exp(a·c/b)`.
    pub fn w_argument(&self) -> f64 {
        (self.c * self.d / self.b) * (self.a * self.c / self.b).exp()
    }

    /// `ln(a + b·x) + c·x - ln d`; zero at a solution.
    pub fn residual(&self, x: f64) -> f64 {
        (self.a + self.b * x).ln() + self.c * x - self.d.ln()
    }

    pub fn solve(&self) -> Result<f64> {
        solve_log_linear(self)
    }
}

/// Solve `ln(a + b·x) + c·x = ln d` as `x = W((cd/b)·e^{ac/b})/c - a/b`.
pub fn solve_log_linear(problem: &LogLinearProblem) -> Result<f64> {
    let LogLinearProblem { a, b, c, d, branch } = *problem;
    const OP: &str = "solve_log_linear";
    if ![a, b, c, d].iter().all(|v| v.is_finite()) {
        return Err(Error::domain(OP, "coefficients must be finite"));
    }
    if b == 0.0 || c == 0.0 {
        return Err(Error::domain(OP, "b and c must be nonzero"));
    }
    if d <= 0.0 {
        return Err(Error::domain(OP, format!("d must be positive, got {d}")));
    }
    let arg = problem.w_argument();
    if !branch.contains(arg) {
        return Err(Error::domain(
            OP,
            format!("W argument {arg} outside the domain of branch {branch}"),
        ));
    }
    let w = lambert_w(branch, arg)?.value;
    let x = w / c - a / b;
    if !(a + b * x > 0.0) {
        return Err(Error::domain(
            OP,
            format!("solution {x} leaves a + b*x nonpositive"),
        ));
    }
    Ok(x)
}
