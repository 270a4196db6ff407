use besselcert::catalog::expr_k_normalized_gap;
use besselcert::special::{bessel_i, bessel_i_scaled, bessel_k, gamma, product_ik};
use besselcert::EvalConfig;
use proptest::prelude::*;

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn i(nu: f64, x: f64) -> f64 {
    bessel_i(nu, x, &cfg()).unwrap().value
}

fn k(nu: f64, x: f64) -> f64 {
    bessel_k(nu, x, &cfg()).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bessel_functions_are_positive(nu in -0.99f64..15.0, x in 1e-6f64..300.0) {
        prop_assert!(i(nu, x) > 0.0);
        prop_assert!(k(nu, x) > 0.0);
        prop_assert!(k(-nu, x) > 0.0);
    }

    #[test]
    fn i_decreases_with_order(nu in 0.0f64..8.0, gap in 0.05f64..4.0, x in 1e-3f64..50.0) {
        prop_assert!(i(nu + gap, x) < i(nu, x));
    }

    #[test]
    fn i_below_previous_order(nu in 0.5f64..8.0, x in 1e-3f64..50.0) {
        prop_assert!(i(nu, x) < i(nu - 1.0, x));
    }

    #[test]
    fn k_increases_with_order(nu in 0.0f64..8.0, gap in 0.05f64..4.0, x in 1e-3f64..50.0) {
        prop_assert!(k(nu + gap, x) > k(nu, x));
    }

    #[test]
    fn k_at_least_previous_order(nu in 0.5f64..8.0, x in 1e-3f64..50.0) {
        let (hi, lo) = (k(nu, x), k(nu - 1.0, x));
        prop_assert!(hi >= lo * (1.0 - 1e-13), "{hi} < {lo}");
    }

    #[test]
    fn normalized_i_below_cosh(nu in -0.4999f64..10.0, x in 1e-4f64..50.0) {
        let lhs = gamma(nu + 1.0) * (2.0 / x).powf(nu) * i(nu, x);
        prop_assert!(lhs <= x.cosh() * (1.0 + 1e-13), "{lhs} vs {}", x.cosh());
    }

    #[test]
    fn scaled_and_unscaled_agree(nu in -0.99f64..10.0, x in 1e-4f64..700.0) {
        let c = cfg();
        let plain = bessel_i(nu, x, &c).unwrap();
        let scaled = bessel_i_scaled(nu, x, &c).unwrap();
        let rebuilt = scaled.value * x.exp();
        let allowed = plain.abs_err_est + scaled.abs_err_est * x.exp() + 4.0 * f64::EPSILON * plain.value;
        prop_assert!((plain.value - rebuilt).abs() <= allowed, "{} vs {rebuilt}", plain.value);
    }

    #[test]
    fn product_ik_decreases(nu in -0.5f64..10.0, x in 1e-4f64..60.0, step in 0.01f64..1.0) {
        let c = cfg();
        let a = product_ik(nu, x, &c).unwrap().value;
        let b = product_ik(nu, x * (1.0 + step), &c).unwrap().value;
        prop_assert!(b < a, "{a} then {b}");
    }

    #[test]
    fn normalized_k_gap_sandwich(mu in 1.05f64..12.0, lx in -4.0f64..1.69) {
        let x = 10f64.powf(lx);
        let g = expr_k_normalized_gap(mu, x, &cfg()).unwrap();
        prop_assert!(g > 0.0, "gap {g}");
        prop_assert!(g <= 1.0 / (4.0 * (mu - 1.0)) * (1.0 + 1e-12), "gap {g}");
    }
}
