use std::f64::consts::E;

use crate::error::{Error, Result};

const MAX_ITERATIONS: u32 = 400;

/// `z·ln(z·ln z)`, increasing on `z > 1` from `-∞` to `∞`.
pub fn u_forward(z: f64) -> f64 {
    z * (z * z.ln()).ln()
}

fn u_forward_derivative(z: f64) -> f64 {
    let l = z.ln();
    (z * l).ln() + 1.0 + 1.0 / l
}

/// `U(x)`: the `z > 1` with `z·ln(z·ln z) = x`.
///
/// The map has no closed-form inverse, so the root is bracketed, bisected and
/// then polished with Newton steps that stay inside the bracket.
/// For `x` below about `-13` the root sits so close to 1 that neighbouring
/// doubles straddle the residual tolerance, and a domain error is returned.
pub fn u_of(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain("u_of", format!("x must be finite, got {x}")));
    }
    let g = |z: f64| u_forward(z) - x;

    let mut lo = 1.0 + 1e-6;
    let mut hi = E.max(x);
    let mut iterations = 0;
    while g(lo) > 0.0 {
        // Halve the distance to 1 until the root is bracketed.
        let next = 1.0 + 0.5 * (lo - 1.0);
        if next <= 1.0 || next == lo {
            return Err(Error::domain(
                "u_of",
                format!("U({x}) is not representable apart from 1"),
            ));
        }
        hi = lo;
        lo = next;
    }
    while g(hi) < 0.0 {
        lo = hi;
        hi *= 2.0;
        iterations += 1;
        if iterations > MAX_ITERATIONS {
            return Err(Error::NonConvergence {
                op: "u_of",
                arg: x,
                iterations,
            });
        }
    }

    // Bisect to a relative width where Newton is safe.
    while hi - lo > 1e-6 * lo {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut z = 0.5 * (lo + hi);
    let tolerance = 1e-13 * x.abs().max(1.0);
    for _ in 0..MAX_ITERATIONS {
        let r = g(z);
        if r.abs() <= tolerance {
            return Ok(z);
        }
        if r < 0.0 {
            lo = z;
        } else {
            hi = z;
        }
        let mut next = z - r / u_forward_derivative(z);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if next == z {
            break;
        }
        z = next;
    }
    // Rounding floor reached: accept if within the certified tolerance.
    if g(z).abs() <= 1e-10 * x.abs().max(1.0) {
        Ok(z)
    } else if z - 1.0 < 1e-4 {
        Err(Error::domain(
            "u_of",
            format!("U({x}) is too close to 1 to resolve in double precision"),
        ))
    } else {
        Err(Error::NonConvergence {
            op: "u_of",
            arg: x,
            iterations: MAX_ITERATIONS,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_at_e() {
        assert!((u_forward(E) - E).abs() < 1e-15);
        assert!((u_of(E).unwrap() - E).abs() < 1e-12);
    }

    #[test]
    fn at_eleven() {
        // independent bisection on (1, 20)
        let (mut lo, mut hi) = (1.0f64 + 1e-9, 20.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid * (mid * mid.ln()).ln() < 11.0 {
                lo = mid
            } else {
                hi = mid
            }
        }
        assert!((lo - 5.15).abs() < 0.01);
        let u = u_of(11.0).unwrap();
        assert!((u - lo).abs() < 1e-10);
        assert!(5.0 > u - 1.0);
    }

    #[test]
    fn negative_arguments() {
        for x in [-1.0, -5.0, -10.0, -12.0] {
            let u = u_of(x).unwrap();
            assert!(u > 1.0);
            assert!((u_forward(u) - x).abs() <= 1e-10 * x.abs());
        }
        assert!(matches!(u_of(-30.0), Err(Error::Domain { .. })));
        assert!(matches!(u_of(-1000.0), Err(Error::Domain { .. })));
        assert!(u_of(f64::NAN).is_err());
    }

    #[test]
    fn large_arguments() {
        for x in [1e3, 1e8, 1e15] {
            let u = u_of(x).unwrap();
            assert!((u_forward(u) - x).abs() <= 1e-10 * x);
        }
    }
}
