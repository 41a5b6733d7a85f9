use std::f64::consts::PI;

use proptest::prelude::*;
use swkb_core::numerics::{find_root, integrate_smooth, integrate_sqrt_bracket, Bracket};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// `∫_a^b sqrt((x-a)(b-x)) dx = π (b-a)² / 8`.
    #[test]
    fn semicircle_is_exact(a in -50.0..50.0f64, width in 1e-3..40.0f64) {
        let b = a + width;
        let r = integrate_sqrt_bracket(|x| (x - a) * (b - x), a, b, 1e-10).unwrap();
        let exact = PI * width * width / 8.0;
        prop_assert!(((r.value - exact) / exact).abs() <= 1e-12, "{} vs {exact}", r.value);
    }

    #[test]
    fn scaling_covariance(a in -5.0..5.0f64, width in 0.1..10.0f64, c in 0.01..100.0f64, k in 0.0..3.0f64) {
        let b = a + width;
        // a non-quadratic Q with simple zeros at a and b
        let q = move |x: f64| (x - a) * (b - x) * (1.0 + k * ((x - a) / width).powi(2));
        let base = integrate_sqrt_bracket(q, a, b, 1e-12).unwrap().value;
        let scaled = integrate_sqrt_bracket(|x| c * c * q(x), a, b, 1e-12).unwrap().value;
        prop_assert!(((scaled - c * base) / (c * base)).abs() <= 1e-12);
    }

    #[test]
    fn root_stays_inside_bracket(r1 in -10.0..10.0f64, r2 in -10.0..10.0f64, r3 in -10.0..10.0f64,
                                 lo in -12.0..0.0f64, hi in 0.0..12.0f64) {
        let f = |x: f64| (x - r1) * (x - r2) * (x - r3);
        prop_assume!(f(lo) * f(hi) < 0.0);
        let bracket = Bracket::new(f, lo, hi).unwrap();
        let root = find_root(f, &bracket, 1e-12).unwrap();
        prop_assert!((lo..=hi).contains(&root));
        let nearest = [r1, r2, r3].iter().map(|r| (root - r).abs()).fold(f64::INFINITY, f64::min);
        prop_assert!(nearest < 1e-9);
    }

    #[test]
    fn smooth_rule_integrates_polynomials(c0 in -3.0..3.0f64, c3 in -3.0..3.0f64, c8 in -1.0..1.0f64,
                                          a in -2.0..0.0f64, b in 0.0..2.0f64) {
        let f = |x: f64| c0 + c3 * x.powi(3) + c8 * x.powi(8);
        let anti = |x: f64| c0 * x + c3 * x.powi(4) / 4.0 + c8 * x.powi(9) / 9.0;
        let r = integrate_smooth(f, a, b, 1e-12).unwrap();
        let exact = anti(b) - anti(a);
        prop_assert!((r.value - exact).abs() <= 1e-11 * (1.0 + exact.abs()));
    }
}

#[test]
fn bracket_rejects_same_sign() {
    assert!(Bracket::new(|x: f64| x * x + 1.0, -1.0, 1.0).is_err());
}
