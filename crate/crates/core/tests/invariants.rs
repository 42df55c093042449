use std::f64::consts::E;
use std::sync::OnceLock;

use proptest::prelude::*;
use wprime::asymptotics::{BASIC_ESTIMATOR, REFINED_ESTIMATOR};
use wprime::bounds::{log_power_majorant, loglog_tangent, u_forward};
use wprime::{
    cesaro_cipolla, expansion_error_report, pi_lower_linear, pi_lower_power, pi_ratio_table,
    pi_upper, pn_estimate, pn_upper, u_of, PnVariant, PrimeTable,
};

fn table() -> &'static PrimeTable {
    static TABLE: OnceLock<PrimeTable> = OnceLock::new();
    TABLE.get_or_init(|| PrimeTable::build(2_000_000).unwrap())
}

#[test]
fn pi_and_nth_prime_round_trip() {
    let t = table();
    for n in 1..=t.prime_count() {
        let p = t.nth_prime(n).unwrap();
        assert_eq!(t.pi(p), n);
    }
    for x in (2..=t.limit()).step_by(7) {
        let n = t.pi_of(x as f64).unwrap();
        let p = t.nth_prime(n).unwrap();
        assert!(p <= x);
        if n < t.prime_count() {
            assert!(x < t.nth_prime(n + 1).unwrap());
        }
    }
}

#[test]
fn classical_inputs_hold_on_the_table() {
    let t = table();
    for (i, p) in t.primes().enumerate() {
        let n = (i + 1) as f64;
        let p = p as f64;
        assert!(p > n * n.ln(), "p_n > n ln n at n = {n}");
        if n >= 6.0 {
            assert!(p < n * (n * n.ln()).ln(), "p_n < n ln(n ln n) at n = {n}");
        }
    }
    for x in 5..=t.limit() {
        let pi = t.pi(x) as f64;
        let xf = x as f64;
        if x >= 17 {
            assert!(pi > xf / xf.ln(), "pi(x) > x/ln x at {x}");
        }
        assert!(pi < xf / (xf.ln() - 1.5), "pi(x) < x/(ln x - 3/2) at {x}");
    }
}

#[test]
fn strict_sandwich_from_sixty() {
    let t = table();
    let e1 = (-1.0f64).exp();
    let e3 = (-3.0f64).exp();
    let c = (-1.5f64).exp();
    for x in 60..=1_000_000u64 {
        let pi = t.pi(x) as f64;
        let xf = x as f64;
        assert!(pi_lower_power(xf, e1).unwrap() < pi, "{x}");
        assert!(pi_lower_power(xf, e3).unwrap() < pi, "{x}");
        assert!(pi_lower_linear(xf, c).unwrap() < pi, "{x}");
        assert!(pi < pi_upper(xf).unwrap(), "{x}");
    }
}

#[test]
fn shifted_upper_dominates() {
    for n in 4..200_000u64 {
        assert!(pn_upper(n, E).unwrap() > pn_upper(n, 0.0).unwrap());
    }
}

#[test]
fn u_inverse_lower_bound() {
    let t = table();
    for x in 11..=200_000u64 {
        assert!((t.pi(x) as f64) > u_of(x as f64).unwrap() - 1.0, "{x}");
    }
}

#[test]
fn pi_ratio_increases_toward_one() {
    let points = [1_000, 10_000, 100_000, 1_000_000];
    let rows = pi_ratio_table(table(), &points).unwrap();
    let ratios: Vec<f64> = rows.iter().map(|r| r.ratios["x_over_w"]).collect();
    assert!(ratios.windows(2).all(|p| p[0] < p[1]), "{ratios:?}");
    assert!(ratios.iter().all(|&r| r < 1.0));
}

#[test]
fn pn_estimates_converge() {
    let ladder = [100, 1_000, 10_000, 100_000];
    let rows = expansion_error_report(table(), &ladder).unwrap();
    let basic: Vec<f64> = rows.iter().map(|r| r.ratios[BASIC_ESTIMATOR]).collect();
    assert!(basic.windows(2).all(|p| p[0] < p[1]), "{basic:?}");
    assert!(basic.iter().all(|&r| r < 1.0));
    for r in &rows {
        let p = r.truth as f64;
        assert!((p - r.estimates[REFINED_ESTIMATOR]).abs() < (p - r.estimates[BASIC_ESTIMATOR]).abs());
    }
    let n100k = rows.last().unwrap();
    assert!(n100k.rel_error[REFINED_ESTIMATOR] < n100k.rel_error[BASIC_ESTIMATOR]);
}

#[test]
fn w_estimates_track_cesaro_terms() {
    let ladder = [100u64, 1_000, 10_000, 100_000];
    let two: Vec<f64> = ladder
        .iter()
        .map(|&n| {
            (pn_estimate(n, PnVariant::Basic).unwrap() - cesaro_cipolla(n, 2).unwrap()).abs()
                / n as f64
        })
        .collect();
    let three: Vec<f64> = ladder
        .iter()
        .map(|&n| {
            (pn_estimate(n, PnVariant::Refined).unwrap() - cesaro_cipolla(n, 3).unwrap()).abs()
                / n as f64
        })
        .collect();
    assert!(two.windows(2).all(|p| p[1] < p[0]), "{two:?}");
    // The three-term gap behaves like ln(1 - 1/ln n) and only turns
    // downward after n = 10^3; at 10^2 it is still below its peak.
    assert!(three[1..].windows(2).all(|p| p[1] < p[0]), "{three:?}");
    assert!(three[0] < three[1], "{three:?}");
}

proptest! {
    #[test]
    fn log_below_power_majorant(log_x in -20.0f64..50.0, eps in 0.01f64..5.0) {
        let x = log_x.exp();
        let lhs = x.ln();
        let rhs = log_power_majorant(x, eps);
        prop_assert!(lhs <= rhs * (1.0 + 1e-12) + 1e-12);
    }

    #[test]
    fn power_majorant_touches_at_e_to_inverse_eps(eps in 0.05f64..5.0) {
        let x = (1.0 / eps).exp();
        let rhs = log_power_majorant(x, eps);
        prop_assert!((x.ln() - rhs).abs() <= 1e-9 * rhs.abs());
    }

    #[test]
    fn loglog_below_tangent(x in 1.001f64..1e12, x0 in 1.001f64..1e12) {
        prop_assume!((x / x0 - 1.0).abs() > 1e-6);
        prop_assert!(x.ln().ln() < loglog_tangent(x, x0));
    }

    #[test]
    fn u_round_trip(z0 in 1.1f64..1e6) {
        let x = u_forward(z0);
        let u = u_of(x).unwrap();
        prop_assert!((u_forward(u) - x).abs() <= 1e-10 * x.abs().max(1.0));
        prop_assert!((u - z0).abs() <= 1e-8 * z0);
    }
}
