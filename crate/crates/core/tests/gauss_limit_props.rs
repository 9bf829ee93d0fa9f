use flagsob::gauss_limit::{
    exp_limit_deviation, heisenberg_constant, lemma_closed_form, limit_constants, ln_lemma_closed_form,
};
use flagsob::quadrature::{integrate_de, DeDomain};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn limit_constants_are_positive_and_consistent(n in 3u32..400, k in 1u32..6) {
        prop_assume!(k < n && n + k >= 5);
        let c = limit_constants(n, k).unwrap();
        for v in [c.c_prime(), c.d(), c.d_prime(), c.d_tilde(), c.d_tilde_prime()] {
            prop_assert!(v.is_finite() && v > 0.0);
        }
        prop_assert!((c.ln_d_prime - c.ln_d_prime_direct()).abs() < 1e-9 * (1.0 + c.ln_d_prime.abs()));
        // c′ₙ normalizes (1 + |x|²/n)^{−n} on ℝⁿ
        let mass = ln_lemma_closed_form(n, n as f64, n as f64, 0.0).unwrap();
        prop_assert!((c.ln_c_prime + mass).abs() < 1e-9 * (1.0 + mass.abs()));
    }

    #[test]
    fn lemma_matches_line_integral(big_n in 1.0f64..20.0, n in 0.5f64..30.0, x2 in 0.0f64..20.0) {
        let exact = lemma_closed_form(1, big_n, n, x2).unwrap();
        let num = integrate_de(|y| Ok((1.0 + (x2 + y * y) / n).powf(-big_n)), DeDomain::Line, 1e-12).unwrap();
        prop_assert!((num.value - exact).abs() < 1e-9 * exact, "{} vs {}", num.value, exact);
    }

    #[test]
    fn lemma_decreases_in_x(m in 1u32..6, extra in 0.6f64..10.0, n in 0.5f64..30.0, x2 in 0.0f64..20.0, dx in 0.01f64..5.0) {
        let big_n = 0.5 * m as f64 + extra;
        prop_assert!(lemma_closed_form(m, big_n, n, x2 + dx).unwrap() < lemma_closed_form(m, big_n, n, x2).unwrap());
    }

    #[test]
    fn exp_limit_approached_from_above(a in 0.01f64..20.0, n in 1.0f64..1e6) {
        let d1 = exp_limit_deviation(a, n);
        let d2 = exp_limit_deviation(a, 2.0 * n);
        prop_assert!(d1 >= -1e-15 && d2 <= d1 + 1e-15);
    }
}

#[test]
fn heisenberg_constants_positive() {
    for n in 1..40 {
        let c = heisenberg_constant(n).unwrap();
        assert!(c.is_finite() && c > 0.0, "{n}: {c}");
    }
}
