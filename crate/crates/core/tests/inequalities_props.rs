use flagsob::inequalities::{
    dirichlet_form_spectral, entropy_density, gamma_k, intertwiner_multiplier_apply, rearrangement_check,
    verify_theorem21, BandLimitedFunction,
};
use flagsob::quadrature::{sample_sphere, seeded_rng, QuadratureSpec};
use flagsob::spectra::CaseId;
use proptest::prelude::*;

fn case_strategy() -> impl Strategy<Value = CaseId> {
    prop_oneof![
        (2u32..5).prop_map(CaseId::real),
        (1u32..3).prop_map(CaseId::complex),
        Just(CaseId::quaternionic(1)),
        Just(CaseId::octonionic()),
    ]
}

fn pairs() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1usize..12).prop_flat_map(|n| (prop::collection::vec(0.0f64..10.0, n), prop::collection::vec(0.0f64..10.0, n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rearrangement_dominates_and_ignores_order(
        ((a, b), perm) in pairs().prop_flat_map(|(a, b)| {
            let n = a.len();
            (Just((a, b)), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let (q, qs) = rearrangement_check(&a, &b).unwrap();
        prop_assert!(qs >= q - 1e-12 * qs.max(1.0));
        let shuffled: Vec<f64> = perm.iter().map(|&i| a[i]).collect();
        let (q2, qs2) = rearrangement_check(&shuffled, &b).unwrap();
        prop_assert!((qs - qs2).abs() <= 1e-12 * qs.max(1.0));
        prop_assert!(qs2 >= q2 - 1e-12 * qs.max(1.0));
    }

    #[test]
    fn gamma_is_a_decreasing_contraction(n in 1u32..12, p in 1.01f64..1.99, k in 0u32..40) {
        let g0 = gamma_k(n, p, k).unwrap();
        let g1 = gamma_k(n, p, k + 1).unwrap();
        prop_assert!(g1 > 0.0 && g1 < g0 && g0 <= 1.0);
        prop_assert_eq!(gamma_k(n, p, 0).unwrap(), 1.0);
    }

    #[test]
    fn multiplier_fixes_constants(n in 1u32..6, p in 1.05f64..1.95, c in -5.0f64..5.0, seed in any::<u64>()) {
        let case = CaseId::real(n);
        let f = BandLimitedFunction::constant(case, c).unwrap();
        let g = intertwiner_multiplier_apply(&f, p).unwrap();
        let mut x = vec![0.0; case.ambient_dim()];
        sample_sphere(&mut seeded_rng(seed), &mut x);
        prop_assert!((g.eval(&x).re - c).abs() < 1e-12 * (1.0 + c.abs()));
        let f = BandLimitedFunction::random(case, 3, seed).unwrap();
        let g = intertwiner_multiplier_apply(&f, p).unwrap();
        for (a, b) in f.components().iter().zip(g.components()) {
            let expected = gamma_k(n, p, a.label.degree()).unwrap() * a.weight;
            prop_assert!((b.weight - expected).abs() < 1e-12 * (1.0 + a.weight.abs()));
        }
        prop_assert!(g.norm2() <= f.norm2() * (1.0 + 1e-12));
    }

    #[test]
    fn entropy_density_bounded_below(a in 0.0f64..50.0) {
        prop_assert!(entropy_density(a) >= -0.5 / std::f64::consts::E - 1e-15);
    }

    #[test]
    fn constants_saturate_theorem(case in case_strategy(), c in 0.1f64..10.0, seed in any::<u64>()) {
        let f = BandLimitedFunction::constant(case, c).unwrap();
        prop_assert_eq!(dirichlet_form_spectral(&f).unwrap(), 0.0);
        let r = verify_theorem21(&f, &QuadratureSpec::monte_carlo(200, seed)).unwrap();
        prop_assert!(r.margin.abs() < 1e-12 * c * c.max(1.0) * 10.0);
        prop_assert_eq!(r.rhs, 0.0);
    }

    #[test]
    fn dirichlet_form_is_nonnegative(
        case in prop_oneof![(2u32..5).prop_map(CaseId::real), (1u32..3).prop_map(CaseId::complex)],
        seed in any::<u64>(),
    ) {
        let f = BandLimitedFunction::random(case, 2, seed).unwrap();
        prop_assert!(dirichlet_form_spectral(&f).unwrap() >= 0.0);
    }
}
