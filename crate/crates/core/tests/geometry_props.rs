use flagsob::geometry::{
    cayley, cayley_coords, cayley_inverse, heisenberg_mul, horizontal_frame_seeded, stereographic,
    stereographic_inverse, HeisenbergPoint, SpherePoint,
};
use flagsob::spectra::CaseId;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn point(n: usize) -> impl Strategy<Value = HeisenbergPoint> {
    (prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), n), -5.0f64..5.0)
        .prop_map(|(z, t)| HeisenbergPoint::new(z.into_iter().map(|(a, b)| Complex64::new(a, b)).collect(), t))
}

fn case_strategy() -> impl Strategy<Value = CaseId> {
    prop_oneof![
        (1u32..6).prop_map(CaseId::real),
        (1u32..4).prop_map(CaseId::complex),
        (1u32..3).prop_map(CaseId::quaternionic),
        Just(CaseId::octonionic()),
    ]
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn close(a: &HeisenbergPoint, b: &HeisenbergPoint, tol: f64) -> bool {
    a.coords().iter().zip(b.coords()).all(|(x, y)| (x - y).abs() <= tol * (1.0 + y.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn stereographic_round_trip(x in prop::collection::vec(-50.0f64..50.0, 1..8)) {
        let xi = stereographic_inverse(&x);
        prop_assert!((dot(xi.coords(), xi.coords()) - 1.0).abs() < 1e-12);
        let back = stereographic(&xi).unwrap();
        for (a, b) in back.iter().zip(&x) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs() * b.abs()));
        }
    }

    #[test]
    fn cayley_lands_on_sphere_and_inverts(
        h in (1usize..4).prop_flat_map(point),
        scale in -2.0f64..2.0,
    ) {
        let s = 10f64.powf(scale);
        let h = HeisenbergPoint::new(h.z.iter().map(|w| w * s).collect(), h.t * s * s);
        let raw = cayley_coords(&h);
        prop_assert!((dot(&raw, &raw) - 1.0).abs() < 1e-12);
        let back = cayley_inverse(&cayley(&h)).unwrap();
        prop_assert!(close(&back, &h, 1e-8));
    }

    #[test]
    fn group_axioms(
        (a, b, c) in (1usize..4).prop_flat_map(|n| (point(n), point(n), point(n)))
    ) {
        let e = HeisenbergPoint::identity(a.n());
        prop_assert!(close(&heisenberg_mul(&a, &e).unwrap(), &a, 0.0));
        prop_assert!(close(&heisenberg_mul(&e, &a).unwrap(), &a, 0.0));
        prop_assert!(close(&heisenberg_mul(&a, &a.inverse()).unwrap(), &e, 1e-14));
        let l = heisenberg_mul(&heisenberg_mul(&a, &b).unwrap(), &c).unwrap();
        let r = heisenberg_mul(&a, &heisenberg_mul(&b, &c).unwrap()).unwrap();
        prop_assert!(close(&l, &r, 1e-12));
    }

    #[test]
    fn horizontal_frame_is_seed_invariant(case in case_strategy(), seed in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xi = SpherePoint::random(case.ambient_dim(), &mut rng);
        let g: Vec<f64> = (0..case.ambient_dim()).map(|i| ((i as f64 + 1.0) * (seed % 97) as f64).sin()).collect();
        let f1 = horizontal_frame_seeded(&case, &xi, s1).unwrap();
        let f2 = horizontal_frame_seeded(&case, &xi, s2).unwrap();
        prop_assert_eq!(f1.len(), case.horizontal_dim());
        prop_assert_eq!(f2.len(), case.horizontal_dim());
        for h in &f1.basis {
            prop_assert!((dot(h, h) - 1.0).abs() < 1e-10);
            prop_assert!(dot(h, xi.coords()).abs() < 1e-10);
            for v in &f1.vertical {
                prop_assert!(dot(h, v).abs() < 1e-10);
            }
        }
        let p1 = f1.project(&g);
        let p2 = f2.project(&g);
        prop_assert!((dot(&p1, &p1) - dot(&p2, &p2)).abs() < 1e-10 * (1.0 + dot(&g, &g)));
        for (a, b) in p1.iter().zip(&p2) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }
}
