use flagsob::exactpoly::{
    bidegree_split, coordinate_names, harmonic_projection, reassemble, rat, CPoly, ComplexRational, MultiPoly,
    Rational,
};
use num_complex::Complex;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly_strategy(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly<Rational>> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -20i64..=20, 1i64..=9), 0..=max_terms)
        .prop_map(move |terms| {
            let names = coordinate_names(nvars);
            MultiPoly::from_terms(&names, terms.into_iter().map(|(e, a, b)| (e, rat(a, b)))).unwrap()
        })
}

/// Homogeneous of degree `d`: exponent vectors from `d` random variable picks.
fn homogeneous_strategy(nvars: usize, d: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly<Rational>> {
    prop::collection::vec((prop::collection::vec(0..nvars, d as usize), -20i64..=20, 1i64..=9), 1..=max_terms)
        .prop_map(move |terms| {
            let names = coordinate_names(nvars);
            let terms = terms.into_iter().map(|(picks, a, b)| {
                let mut e = vec![0u32; nvars];
                for i in picks {
                    e[i] += 1;
                }
                (e, rat(a, b))
            });
            MultiPoly::from_terms(&names, terms).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_hold_exactly(
        a in poly_strategy(3, 3, 6),
        b in poly_strategy(3, 3, 6),
        c in poly_strategy(3, 3, 6),
    ) {
        let l = a.try_add(&b).unwrap().try_add(&c).unwrap();
        let r = a.try_add(&b.try_add(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        let l = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let r = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        let l = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let r = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn leibniz_rule(a in poly_strategy(3, 3, 5), b in poly_strategy(3, 3, 5), i in 0usize..3) {
        let lhs = a.try_mul(&b).unwrap().differentiate_index(i);
        let rhs = a
            .differentiate_index(i)
            .try_mul(&b)
            .unwrap()
            .try_add(&a.try_mul(&b.differentiate_index(i)).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn harmonic_decomposition_small(
        (nvars, p) in (2usize..7, 0u32..7)
            .prop_flat_map(|(nv, d)| homogeneous_strategy(nv, d, 5).prop_map(move |p| (nv, p)))
    ) {
        check_decomposition(&p, nvars)?;
    }

    #[test]
    fn harmonic_decomposition_wide(p in homogeneous_strategy(16, 8, 3)) {
        check_decomposition(&p, 16)?;
    }

    #[test]
    fn bidegree_split_reproduces_and_rotates(p in poly_strategy(4, 3, 6)) {
        let c = p.to_complex();
        let pairs = [(0, 1), (2, 3)];
        let parts = bidegree_split(&c, &pairs).unwrap();
        let mut sum = CPoly::zero(c.vars());
        for ((pd, qd), piece) in &parts {
            sum = sum.try_add(piece).unwrap();
            // the Euler field gives the total degree, the rotation field i(p − q)
            let mut euler = CPoly::zero(c.vars());
            let mut rot = CPoly::zero(c.vars());
            for &(x, y) in &pairs {
                let vx = var(c.vars(), x);
                let vy = var(c.vars(), y);
                let dx = piece.differentiate_index(x);
                let dy = piece.differentiate_index(y);
                euler = euler.try_add(&vx.try_mul(&dx).unwrap()).unwrap().try_add(&vy.try_mul(&dy).unwrap()).unwrap();
                rot = rot.try_add(&vx.try_mul(&dy).unwrap()).unwrap().try_sub(&vy.try_mul(&dx).unwrap()).unwrap();
            }
            let total = Complex::new(rat((pd + qd) as i64, 1), Rational::zero());
            prop_assert_eq!(euler, piece.scale(&total));
            let turn = Complex::new(Rational::zero(), rat(*pd as i64 - *qd as i64, 1));
            prop_assert_eq!(rot, piece.scale(&turn));
        }
        prop_assert_eq!(sum, c);
    }
}

fn var(vars: &[String], i: usize) -> CPoly {
    let mut e = vec![0; vars.len()];
    e[i] = 1;
    MultiPoly::monomial(vars, e, ComplexRational::one()).unwrap()
}

fn check_decomposition(p: &MultiPoly<Rational>, nvars: usize) -> Result<(), TestCaseError> {
    let names = coordinate_names(nvars);
    let parts = harmonic_projection(p, &names).unwrap();
    for h in &parts {
        prop_assert!(h.harmonic.euclidean_laplacian(&names).unwrap().is_zero());
    }
    let idx: Vec<usize> = (0..nvars).collect();
    prop_assert_eq!(&reassemble(&parts, p, &idx).unwrap(), p);
    Ok(())
}
