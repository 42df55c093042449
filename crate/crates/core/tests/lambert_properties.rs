use proptest::prelude::*;
use wprime::lambert_w::{BRANCH_POINT, RESIDUAL_TOLERANCE};
use wprime::{asymptotic_estimate, w0, wm1, Branch, LogLinearProblem};

fn within_residual(x: f64, residual: f64) -> bool {
    residual.abs() <= RESIDUAL_TOLERANCE * x.abs().max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn principal_defining_identity(log_offset in -12.0f64..12.0) {
        let x = BRANCH_POINT + 10f64.powf(log_offset);
        let w = w0(x).unwrap();
        prop_assert!(w.value >= -1.0);
        prop_assert!(within_residual(x, w.value * w.value.exp() - x));
    }

    #[test]
    fn lower_defining_identity(t in 0.0f64..1.0, near_zero in any::<bool>()) {
        // Half the samples crowd the branch point, half crowd zero.
        let x = if near_zero {
            -(10f64.powf(-12.0 + t * 11.5))
        } else {
            BRANCH_POINT + 10f64.powf(-12.0 + t * 11.5)
        };
        prop_assume!((BRANCH_POINT..0.0).contains(&x));
        let w = wm1(x).unwrap();
        prop_assert!(w.value <= -1.0);
        prop_assert!(within_residual(x, w.value * w.value.exp() - x));
    }

    #[test]
    fn exponential_form(log_x in -300.0f64..300.0) {
        let x = 10f64.powf(log_x);
        let w = w0(x).unwrap().value;
        prop_assert!((x / w - w.exp()).abs() <= 1e-10 * w.exp());
    }

    #[test]
    fn log_linear_back_substitution(
        a in -5.0f64..5.0,
        b_mag in 0.1f64..5.0,
        b_neg in any::<bool>(),
        c_mag in 0.1f64..5.0,
        c_neg in any::<bool>(),
        y in 0.1f64..10.0,
    ) {
        // Choose the solution first, so every sampled problem has a root
        // with a + b·x = y bounded away from zero.
        let b = if b_neg { -b_mag } else { b_mag };
        let c = if c_neg { -c_mag } else { c_mag };
        let root = (y - a) / b;
        let d = y * (c * root).exp();
        let branch = if c * y / b >= -1.0 { Branch::Principal } else { Branch::MinusOne };
        let p = LogLinearProblem::new(a, b, c, d, branch);
        prop_assume!(d.is_finite() && d > 0.0 && d.ln().is_finite());
        prop_assume!(branch.contains(p.w_argument()));
        let x = p.solve().unwrap();
        prop_assert!(p.residual(x).abs() <= 1e-10, "residual {}", p.residual(x));
    }
}

#[test]
fn principal_is_strictly_increasing() {
    let xs: Vec<f64> = (0..10_000)
        .map(|k| BRANCH_POINT + 10f64.powf(-11.0 + 22.0 * k as f64 / 9_999.0))
        .collect();
    let ws: Vec<f64> = xs.iter().map(|&x| w0(x).unwrap().value).collect();
    for pair in ws.windows(2) {
        assert!(pair[0] < pair[1], "{pair:?}");
    }
}

#[test]
fn lower_is_strictly_decreasing() {
    // Uniform in the lower-branch value keeps neighbouring samples
    // resolvable in double precision.
    let xs: Vec<f64> = (0..10_000)
        .map(|k| {
            let w = -1.0 - 1e-4 - 40.0 * k as f64 / 9_999.0;
            w * w.exp()
        })
        .collect();
    let ws: Vec<f64> = xs.iter().map(|&x| wm1(x).unwrap().value).collect();
    for (pair, xpair) in ws.windows(2).zip(xs.windows(2)) {
        assert!(xpair[0] < xpair[1]);
        assert!(pair[0] > pair[1], "{pair:?} at {xpair:?}");
    }
}

#[test]
fn branches_meet_at_minus_one() {
    assert!((w0(BRANCH_POINT).unwrap().value + 1.0).abs() <= 1e-12);
    assert!((wm1(BRANCH_POINT).unwrap().value + 1.0).abs() <= 1e-12);
    assert!(w0(BRANCH_POINT + 1e-6).unwrap().value > -1.0);
    assert!(wm1(BRANCH_POINT + 1e-6).unwrap().value < -1.0);
}

#[test]
fn asymptotic_error_shrinks() {
    let principal: Vec<f64> = (3..=12)
        .map(|k| {
            let x = 10f64.powi(k);
            (asymptotic_estimate(Branch::Principal, x).unwrap() - w0(x).unwrap().value).abs()
        })
        .collect();
    let lower: Vec<f64> = (3..=12)
        .map(|k| {
            let x = -(10f64.powi(-k));
            (asymptotic_estimate(Branch::MinusOne, x).unwrap() - wm1(x).unwrap().value).abs()
        })
        .collect();
    for errs in [principal, lower] {
        for pair in errs.windows(2) {
            assert!(pair[1] < pair[0], "{errs:?}");
        }
    }
}

#[test]
fn iteration_counts_stay_small() {
    let mut worst = 0;
    for k in 0..=2000 {
        let x = BRANCH_POINT + 10f64.powf(-12.0 + 24.0 * k as f64 / 2000.0);
        worst = worst.max(w0(x).unwrap().iterations);
        if x < 0.0 {
            worst = worst.max(wm1(x).unwrap().iterations);
        }
        let y = -(10f64.powf(-12.0 + 11.5 * k as f64 / 2000.0));
        worst = worst.max(wm1(y).unwrap().iterations);
    }
    assert!(worst <= 6, "worst iteration count {worst}");
}
