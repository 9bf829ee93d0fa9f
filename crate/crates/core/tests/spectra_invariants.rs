use flagsob::exactpoly::{rat, rat_int, rational_to_f64};
use flagsob::spectra::*;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

const MAX_DEGREE: u32 = 100;

fn all_cases() -> Vec<CaseId> {
    let mut v = Vec::new();
    for n in 1..=4 {
        v.push(CaseId::real(n));
        v.push(CaseId::complex(n));
        v.push(CaseId::quaternionic(n));
    }
    v.push(CaseId::real(7));
    v.push(CaseId::octonionic());
    v
}

fn in_equality_set(kt: &KTypeLabel) -> bool {
    match *kt {
        KTypeLabel::Real { k } => k <= 1,
        KTypeLabel::Complex { p, q } => p * q == 0,
        KTypeLabel::Quaternionic { p, q } => p == q,
        KTypeLabel::Octonionic { big_n, j } => big_n == j,
    }
}

#[test]
fn bound_margin_nonnegative_with_exact_equality_set() {
    for case in all_cases() {
        for kt in enumerate_ktypes(&case, MAX_DEGREE) {
            let m = theorem_bound_margin(&case, &kt).unwrap();
            assert!(!m.is_negative(), "{case} {kt}: margin {m}");
            assert_eq!(m.is_zero(), in_equality_set(&kt), "{case} {kt}: margin {m}");
        }
    }
}

#[test]
fn special_parameter_identities_hold_exactly() {
    for case in all_cases() {
        for kt in enumerate_ktypes(&case, MAX_DEGREE) {
            match special_nu_identity(&case, &kt).unwrap() {
                SpecialNuOutcome::Identity(id) => {
                    assert_eq!(id.lhs, id.rhs, "{case} {kt}");
                    assert_eq!(id.shifted, id.deltab, "{case} {kt}");
                    if let Some(lg) = id.lhs_log_gamma {
                        let e = rational_to_f64(&id.lhs);
                        assert!((lg - e).abs() <= 1e-10 * e.abs(), "{kt}: {lg} vs {e}");
                    }
                }
                SpecialNuOutcome::Degenerate { reason } => {
                    assert_eq!((case.family, case.n), (Family::Real, 2), "{reason}");
                    // the k = 0 product is empty, every other degree meets the pole at nu = 0
                    assert_eq!(reason.contains("pole"), kt != KTypeLabel::Real { k: 0 }, "{reason}");
                }
            }
        }
    }
}

// Independent oracle: telescope the products in closed form instead of multiplying factors.
#[test]
fn telescoped_closed_forms() {
    for n in 1..=5i64 {
        for p in 0..30i64 {
            for q in 0..30i64 {
                let kt = KTypeLabel::Complex { p: p as u32, q: q as u32 };
                let v = intertwiner_eigenvalue(&CaseId::complex(n as u32), &kt, &SpectralParam::nu(rat_int(n)))
                    .unwrap()
                    .exact
                    .unwrap();
                assert_eq!(v, rat(2 * p + n, n) * rat(2 * q + n, n));
            }
        }
    }
    for k in 0..40i64 {
        for j in 0..40i64 {
            let v = octonionic_eigenvalue_exact(k as u32, j as u32, 1).unwrap();
            assert_eq!(v * rat_int(40), rat_int(4 * (j + k + 5) * (k + 2)));
        }
    }
}

#[test]
fn deltab_nonnegative_and_monotone_in_degree() {
    for case in all_cases() {
        let labels = enumerate_ktypes(&case, MAX_DEGREE);
        for kt in &labels {
            let l = deltab_eigenvalue(&case, kt).unwrap();
            assert!(l >= 0);
            // same secondary label, next admissible degree
            let next = match *kt {
                KTypeLabel::Real { k } => KTypeLabel::Real { k: k + 1 },
                KTypeLabel::Complex { p, q } => KTypeLabel::Complex { p: p + 1, q },
                KTypeLabel::Quaternionic { p, q } => KTypeLabel::Quaternionic { p: p + 2, q },
                KTypeLabel::Octonionic { big_n, j } => KTypeLabel::Octonionic { big_n: big_n + 2, j },
            };
            assert!(deltab_eigenvalue(&case, &next).unwrap() >= l, "{case} {kt}");
        }
    }
}

#[test]
fn complex_eigenvalue_depends_on_j_squared() {
    for n in 1..=4u32 {
        for p in 0..20 {
            for q in 0..20 {
                let a = deltab_eigenvalue(&CaseId::complex(n), &KTypeLabel::Complex { p, q }).unwrap();
                let b = deltab_eigenvalue(&CaseId::complex(n), &KTypeLabel::Complex { p: q, q: p }).unwrap();
                assert_eq!(a, b);
            }
        }
    }
}

proptest! {
    #[test]
    fn constant_label_is_normalized(num in -200i64..200, den in 1i64..30, n in 1u32..8) {
        let nu = SpectralParam::nu(rat(num, den));
        let cases = [CaseId::real(n), CaseId::complex(n), CaseId::quaternionic(n)];
        for case in cases {
            let kt = enumerate_ktypes(&case, 0)[0];
            let v = intertwiner_eigenvalue(&case, &kt, &nu).unwrap();
            prop_assert_eq!(v.exact, Some(rat_int(1)));
        }
        let o = CaseId::octonionic();
        let kt = KTypeLabel::Octonionic { big_n: 0, j: 0 };
        for param in [SpectralParam::nu(rat(num, den)), SpectralParam::r(rat(num, den))] {
            match intertwiner_eigenvalue(&o, &kt, &param) {
                Ok(v) => prop_assert!((v.approx - 1.0).abs() < 1e-12),
                Err(flagsob::Error::Pole { .. }) => {}
                Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
            }
        }
    }

    #[test]
    fn exact_and_float_parameters_agree(num in -50i64..50, den in 1i64..7, n in 1u32..5, p in 0u32..12, q in 0u32..12) {
        let case = CaseId::complex(n);
        let kt = KTypeLabel::Complex { p, q };
        let exact = intertwiner_eigenvalue(&case, &kt, &SpectralParam::nu(rat(num, den)));
        let float = intertwiner_eigenvalue(&case, &kt, &SpectralParam::Nu(Scalar::Approx(num as f64 / den as f64)));
        match (exact, float) {
            (Ok(e), Ok(f)) => {
                let x = rational_to_f64(e.exact.as_ref().unwrap());
                prop_assert!((x - f.approx).abs() <= 1e-9 * x.abs().max(1e-300));
            }
            (Err(_), Err(_)) => {}
            (e, f) => return Err(TestCaseError::fail(format!("{e:?} vs {f:?}"))),
        }
    }

    #[test]
    fn log_gamma_satisfies_recursion(x in 0.01f64..200.0) {
        let a = log_gamma(x + 1.0).unwrap();
        let b = log_gamma(x).unwrap() + x.ln();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }
}
