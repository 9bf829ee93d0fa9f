use std::collections::{BTreeMap, HashMap};

use num_complex::{Complex, Complex64};
use num_traits::{FromPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactpoly::{
    bidegree_split, Coefficient, complex_coordinate, coordinate_names, harmonic_part, harmonic_part_on_sphere, CPoly, MultiPoly,
    NumPoly, Rational,
};
use crate::quadrature::{derive_seed, seeded_rng};
use crate::spectra::{enumerate_ktypes, CaseId, Family, KTypeLabel};

/// How a component is labelled: by K-type, or only by spherical-harmonic degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentLabel {
    KType(KTypeLabel),
    Degree(u32),
}

impl ComponentLabel {
    pub fn degree(&self) -> u32 {
        match self {
            ComponentLabel::KType(k) => k.degree(),
            ComponentLabel::Degree(d) => *d,
        }
    }

    pub fn ktype(&self) -> Option<KTypeLabel> {
        match self {
            ComponentLabel::KType(k) => Some(*k),
            ComponentLabel::Degree(_) => None,
        }
    }
}

/// `weight · harmonic`, where `harmonic` is exact and `weight` a float multiplier.
#[derive(Debug, Clone)]
pub struct Component {
    pub label: ComponentLabel,
    pub harmonic: CPoly,
    pub weight: f64,
    harmonic_norm2: f64,
}

impl Component {
    /// `∫_S |weight · harmonic|²` for the normalized measure.
    pub fn norm2(&self) -> f64 {
        self.weight * self.weight * self.harmonic_norm2
    }

    pub fn harmonic_norm2(&self) -> f64 {
        self.harmonic_norm2
    }
}

/// A finite sum of spherical harmonics on the sphere of a case.
///
/// Components with distinct labels are L²-orthogonal, so norms and spectral quantities are
/// computed componentwise; pointwise values come from one compiled polynomial.
#[derive(Debug, Clone)]
pub struct BandLimitedFunction {
    case: CaseId,
    components: Vec<Component>,
    compiled: NumPoly,
}

/// `∫_{S^{D−1}} |p|²` from sphere moments, in floating point.
pub(crate) fn sphere_norm2(p: &CPoly) -> f64 {
    let dims = p.nvars();
    let terms: Vec<(Vec<u32>, Complex64)> = p
        .terms()
        .map(|(e, c)| (e.clone(), c.to_c64()))
        .collect();
    // only pairs with equal exponent parity survive
    let mut classes: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
    for (i, (e, _)) in terms.iter().enumerate() {
        classes.entry(e.iter().map(|v| v % 2).collect()).or_default().push(i);
    }
    let mut total = 0.0;
    let mut exps = vec![0u32; dims];
    for members in classes.values() {
        for &a in members {
            for &b in members {
                for (k, slot) in exps.iter_mut().enumerate() {
                    *slot = terms[a].0[k] + terms[b].0[k];
                }
                total += (terms[a].1 * terms[b].1.conj()).re * moment_f64(&exps);
            }
        }
    }
    total
}

fn moment_f64(exps: &[u32]) -> f64 {
    let dims = exps.len() as f64;
    let mut num = 1.0;
    for &e in exps {
        let mut j = e as i64 - 1;
        while j > 0 {
            num *= j as f64;
            j -= 2;
        }
    }
    let half: u32 = exps.iter().sum::<u32>() / 2;
    let mut den = 1.0;
    for l in 0..half {
        den *= dims + 2.0 * l as f64;
    }
    num / den
}

fn exact_weight(w: f64) -> Result<Rational> {
    Rational::from_f64(w).ok_or_else(|| Error::domain(format!("weight {w} is not finite")))
}

fn complex_pairs(case: &CaseId) -> Vec<(usize, usize)> {
    (0..case.ambient_dim() / 2).map(|j| (2 * j, 2 * j + 1)).collect()
}

impl BandLimitedFunction {
    /// Checked constructor: each polynomial must be homogeneous of the label's degree and
    /// harmonic in the ambient coordinates; complex-case K-types must have the labelled bidegree.
    pub fn new(case: CaseId, parts: Vec<(ComponentLabel, CPoly)>) -> Result<Self> {
        let names = coordinate_names(case.ambient_dim());
        let idx: Vec<usize> = (0..names.len()).collect();
        for (label, p) in &parts {
            if p.vars() != names.as_slice() {
                return Err(Error::structural(format!(
                    "components must use the {} coordinates x0..",
                    names.len()
                )));
            }
            if let ComponentLabel::KType(kt) = label {
                kt.validate()?;
                if kt.family() != case.family {
                    return Err(Error::domain(format!("label {kt:?} does not belong to {case}")));
                }
            }
            if !p.is_zero() {
                match p.homogeneous_degree_in(&idx) {
                    Some(d) if d == label.degree() => {}
                    _ => return Err(Error::domain(format!("component is not homogeneous of degree {}", label.degree()))),
                }
            }
            if !p.euclidean_laplacian(&names)?.is_zero() {
                return Err(Error::domain("component is not harmonic"));
            }
            if let ComponentLabel::KType(KTypeLabel::Complex { p: a, q: b }) = label {
                let split = bidegree_split(p, &complex_pairs(&case))?;
                if split.keys().any(|&k| k != (*a, *b)) {
                    return Err(Error::domain(format!("component does not have bidegree ({a},{b})")));
                }
            }
        }
        Self::assemble(case, parts.into_iter().map(|(l, p)| (l, p, 1.0)).collect())
    }

    /// Builds from weighted parts without the harmonicity checks of [`BandLimitedFunction::new`].
    ///
    /// Each polynomial must agree on the sphere with a harmonic of its label's degree (for
    /// example a sparse sphere-restricted form); distinct labels must be L²-orthogonal.
    pub fn from_parts_unchecked(case: CaseId, parts: Vec<(ComponentLabel, CPoly, f64)>) -> Result<Self> {
        Self::assemble(case, parts)
    }

    fn assemble(case: CaseId, parts: Vec<(ComponentLabel, CPoly, f64)>) -> Result<Self> {
        let names = coordinate_names(case.ambient_dim());
        let mut labels = std::collections::BTreeSet::new();
        let mut total = CPoly::zero(&names);
        let mut components = Vec::with_capacity(parts.len());
        for (label, harmonic, weight) in parts {
            if !labels.insert(label) {
                return Err(Error::domain(format!("label {label:?} appears twice")));
            }
            let w = Complex::new(exact_weight(weight)?, Rational::zero());
            total = total.try_add(&harmonic.scale(&w))?;
            let harmonic_norm2 = sphere_norm2(&harmonic);
            components.push(Component {
                label,
                harmonic,
                weight,
                harmonic_norm2,
            });
        }
        Ok(BandLimitedFunction {
            case,
            components,
            compiled: NumPoly::new(&total),
        })
    }

    /// The constant function `c`.
    pub fn constant(case: CaseId, c: f64) -> Result<Self> {
        let names = coordinate_names(case.ambient_dim());
        let one = CPoly::one(&names);
        let label = match case.family {
            Family::Real => ComponentLabel::KType(KTypeLabel::Real { k: 0 }),
            Family::Complex => ComponentLabel::KType(KTypeLabel::Complex { p: 0, q: 0 }),
            Family::Quaternionic => ComponentLabel::KType(KTypeLabel::Quaternionic { p: 0, q: 0 }),
            Family::Octonionic => ComponentLabel::KType(KTypeLabel::Octonionic { big_n: 0, j: 0 }),
        };
        Self::assemble(case, vec![(label, one, c)])
    }

    /// Random function with one uniform `[−1, 1]` coefficient per K-type of degree at most
    /// `max_degree`, each multiplying a random unit-norm element of that K-type.
    ///
    /// Quaternionic and octonionic cases get one random harmonic per degree, labelled by degree,
    /// stored in the sparse form that agrees with the harmonic on the sphere.
    pub fn random(case: CaseId, max_degree: u32, seed: u64) -> Result<Self> {
        let mut rng = seeded_rng(seed);
        let names = coordinate_names(case.ambient_dim());
        let mut parts = Vec::new();
        match case.family {
            Family::Real | Family::Complex => {
                for (i, kt) in enumerate_ktypes(&case, max_degree).into_iter().enumerate() {
                    let mut sub = seeded_rng(derive_seed(seed, i as u64));
                    let y = random_ktype_element(&case, &kt, &names, &mut sub)?;
                    let n2 = sphere_norm2(&y);
                    let c: f64 = rng.random_range(-1.0..=1.0);
                    parts.push((ComponentLabel::KType(kt), y, c / n2.sqrt()));
                }
            }
            Family::Quaternionic | Family::Octonionic => {
                for d in 0..=max_degree {
                    let mut sub = seeded_rng(derive_seed(seed, d as u64));
                    let y = random_sparse_harmonic(d, &names, &mut sub)?;
                    let n2 = sphere_norm2(&y);
                    let c: f64 = rng.random_range(-1.0..=1.0);
                    parts.push((ComponentLabel::Degree(d), y, c / n2.sqrt()));
                }
            }
        }
        Self::assemble(case, parts)
    }

    pub fn case(&self) -> &CaseId {
        &self.case
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// `‖f‖₂²` for the normalized sphere measure.
    pub fn norm2(&self) -> f64 {
        self.components.iter().map(Component::norm2).sum()
    }

    /// `‖f‖₂²` split by spherical-harmonic degree.
    pub fn degree_masses(&self) -> BTreeMap<u32, f64> {
        let mut out = BTreeMap::new();
        for c in &self.components {
            *out.entry(c.label.degree()).or_insert(0.0) += c.norm2();
        }
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.components.iter().map(|c| c.label.degree()).max().unwrap_or(0)
    }

    pub fn is_real(&self) -> bool {
        self.compiled.is_real()
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        self.compiled.eval(x)
    }

    /// Value and ambient gradients of the real and imaginary parts.
    pub fn eval_with_gradient(&self, x: &[f64], grad_re: &mut [f64], grad_im: &mut [f64]) -> Complex64 {
        self.compiled.eval_with_gradient(x, grad_re, grad_im)
    }

    /// Multiplies each component's weight by `factor(component)`.
    pub fn map_weights(&self, mut factor: impl FnMut(&Component) -> Result<f64>) -> Result<Self> {
        let mut parts = Vec::with_capacity(self.components.len());
        for c in &self.components {
            parts.push((c.label, c.harmonic.clone(), c.weight * factor(c)?));
        }
        Self::assemble(self.case, parts)
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        self.map_weights(|_| Ok(s))
    }

    /// `f / ‖f‖₂`; errors on the zero function.
    pub fn normalized(&self) -> Result<Self> {
        let n2 = self.norm2();
        if !(n2 > 0.0) {
            return Err(Error::domain("cannot normalize the zero function"));
        }
        self.scaled(1.0 / n2.sqrt())
    }
}

fn rand_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::new((rng.random_range(-1000i64..=1000)).into(), 1000.into())
}

/// A random element of the K-type `kt`: harmonic projection of a random combination of the
/// monomials of the right (bi)degree.
fn random_ktype_element<R: Rng + ?Sized>(case: &CaseId, kt: &KTypeLabel, names: &[String], rng: &mut R) -> Result<CPoly> {
    let d = names.len();
    for _ in 0..16 {
        let raw = match *kt {
            KTypeLabel::Real { k } => {
                let mut p = CPoly::zero(names);
                for e in monomials(d, k) {
                    let c = Complex::new(rand_rational(rng), Rational::zero());
                    p = p.try_add(&MultiPoly::monomial(names, e, c)?)?;
                }
                p
            }
            KTypeLabel::Complex { p: a, q: b } => {
                let m = d / 2;
                let z: Vec<CPoly> = (0..m).map(|j| complex_coordinate(names, (2 * j, 2 * j + 1), false)).collect();
                let zb: Vec<CPoly> = (0..m).map(|j| complex_coordinate(names, (2 * j, 2 * j + 1), true)).collect();
                let mut p = CPoly::zero(names);
                for ea in monomials(m, a) {
                    let za = power_product(&z, &ea, names)?;
                    for eb in monomials(m, b) {
                        let c = Complex::new(rand_rational(rng), rand_rational(rng));
                        p = p.try_add(&za.try_mul(&power_product(&zb, &eb, names)?)?.scale(&c))?;
                    }
                }
                p
            }
            _ => return Err(Error::Unsupported(format!("no K-type sampler for {case}"))),
        };
        let y = harmonic_part(&raw, names)?;
        if !y.is_zero() {
            return Ok(y);
        }
    }
    Err(Error::domain("random K-type element kept vanishing"))
}

fn power_product(base: &[CPoly], exps: &[u32], names: &[String]) -> Result<CPoly> {
    let mut out = CPoly::one(names);
    for (b, &e) in base.iter().zip(exps) {
        if e > 0 {
            out = out.try_mul(&b.pow(e))?;
        }
    }
    Ok(out)
}

/// Exponent vectors of total degree `k` in `d` variables.
pub(crate) fn monomials(d: usize, k: u32) -> Vec<Vec<u32>> {
    if d == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=k).rev() {
        for mut rest in monomials(d - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn random_sparse_harmonic<R: Rng + ?Sized>(k: u32, names: &[String], rng: &mut R) -> Result<CPoly> {
    if k == 0 {
        return Ok(CPoly::one(names));
    }
    let d = names.len();
    for _ in 0..16 {
        let mut p = CPoly::zero(names);
        for _ in 0..3 {
            let mut e = vec![0u32; d];
            for _ in 0..k {
                e[rng.random_range(0..d)] += 1;
            }
            let c = Complex::new(rand_rational(rng), Rational::zero());
            p = p.try_add(&MultiPoly::monomial(names, e, c)?)?;
        }
        if p.is_zero() {
            continue;
        }
        let y = harmonic_part_on_sphere(&p, names)?;
        if !y.is_zero() {
            return Ok(y);
        }
    }
    Err(Error::domain("random harmonic kept vanishing"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{rational_to_f64, sphere_mean};
    use crate::quadrature::{integrate_sphere, QuadratureKind, QuadratureSpec};

    fn cases() -> Vec<CaseId> {
        vec![
            CaseId::real(2),
            CaseId::real(3),
            CaseId::complex(1),
            CaseId::complex(2),
            CaseId::quaternionic(1),
            CaseId::octonionic(),
        ]
    }

    #[test]
    fn float_norms_match_exact_moments() {
        for case in cases() {
            let f = BandLimitedFunction::random(case, 3, 11).unwrap();
            for c in f.components() {
                let exact = sphere_mean(&c.harmonic.try_mul(&c.harmonic.conj()).unwrap());
                let want = rational_to_f64(&exact.re);
                assert!((c.harmonic_norm2() - want).abs() < 1e-12 * want.max(1.0), "{case}: {c:?}");
                assert_eq!(exact.im, Rational::zero());
            }
        }
    }

    #[test]
    fn random_components_are_harmonic_with_right_bidegree() {
        for case in [CaseId::real(2), CaseId::complex(1), CaseId::complex(2)] {
            let f = BandLimitedFunction::random(case, 4, 3).unwrap();
            let parts: Vec<_> = f.components().iter().map(|c| (c.label, c.harmonic.clone())).collect();
            // the checked constructor accepts exactly these parts
            BandLimitedFunction::new(case, parts).unwrap();
        }
    }

    #[test]
    fn degrees_are_orthogonal_under_quadrature() {
        for case in [CaseId::real(2), CaseId::complex(1), CaseId::quaternionic(1)] {
            let f = BandLimitedFunction::random(case, 3, 5).unwrap();
            let d = case.sphere_dim();
            let spec = QuadratureSpec::new(QuadratureKind::SphereProductRule, 5, 0).unwrap();
            let comps = f.components();
            for a in comps {
                for b in comps {
                    if a.label.degree() == b.label.degree() {
                        continue;
                    }
                    let pa = NumPoly::new(&a.harmonic);
                    let pb = NumPoly::new(&b.harmonic);
                    let v = integrate_sphere(d, &|x: &[f64]| (pa.eval(x) * pb.eval(x).conj()).re, &spec).unwrap();
                    assert!(v.value.abs() < 1e-8, "{case} {:?} {:?}: {}", a.label, b.label, v.value);
                }
            }
        }
    }

    #[test]
    fn norm_matches_quadrature() {
        for case in cases() {
            let f = BandLimitedFunction::random(case, 3, 2).unwrap();
            let m = if case.sphere_dim() > 7 { 0 } else { 6 };
            if m == 0 {
                let r = integrate_sphere(case.sphere_dim(), &|x: &[f64]| f.eval(x).norm_sqr(), &QuadratureSpec::monte_carlo(40_000, 1))
                    .unwrap();
                assert!((r.value - f.norm2()).abs() < 4.0 * r.std_error, "{case}: {r:?} vs {}", f.norm2());
            } else {
                let spec = QuadratureSpec::new(QuadratureKind::SphereProductRule, m, 0).unwrap();
                let r = integrate_sphere(case.sphere_dim(), &|x: &[f64]| f.eval(x).norm_sqr(), &spec).unwrap();
                assert!((r.value - f.norm2()).abs() < 1e-10, "{case}: {} vs {}", r.value, f.norm2());
            }
        }
    }

    #[test]
    fn checked_constructor_rejects_bad_parts() {
        let case = CaseId::real(2);
        let names = coordinate_names(3);
        let x0 = CPoly::var(&names, "x0").unwrap();
        let x0sq = x0.pow(2);
        let lbl = |k| ComponentLabel::KType(KTypeLabel::Real { k });
        assert!(BandLimitedFunction::new(case, vec![(lbl(1), x0.clone())]).is_ok());
        assert!(BandLimitedFunction::new(case, vec![(lbl(2), x0sq)]).is_err());
        assert!(BandLimitedFunction::new(case, vec![(lbl(2), x0.clone())]).is_err());
        assert!(BandLimitedFunction::new(case, vec![(lbl(1), x0.clone()), (lbl(1), x0.clone())]).is_err());
        let c = CaseId::complex(1);
        let n4 = coordinate_names(4);
        let re = CPoly::var(&n4, "x0").unwrap();
        let z = complex_coordinate(&n4, (0, 1), false);
        let l10 = ComponentLabel::KType(KTypeLabel::Complex { p: 1, q: 0 });
        assert!(BandLimitedFunction::new(c, vec![(l10, z)]).is_ok());
        assert!(BandLimitedFunction::new(c, vec![(l10, re)]).is_err());
    }

    #[test]
    fn weights_and_normalization() {
        let f = BandLimitedFunction::random(CaseId::complex(1), 2, 9).unwrap();
        let g = f.normalized().unwrap();
        assert!((g.norm2() - 1.0).abs() < 1e-12);
        let h = f.scaled(2.0).unwrap();
        assert!((h.norm2() - 4.0 * f.norm2()).abs() < 1e-12 * f.norm2());
        let x = [0.6, 0.0, 0.0, 0.8];
        assert!((h.eval(&x) - f.eval(&x) * 2.0).norm() < 1e-12);
        assert!(BandLimitedFunction::constant(CaseId::real(2), 0.0).unwrap().normalized().is_err());
        let c = BandLimitedFunction::constant(CaseId::octonionic(), 3.0).unwrap();
        assert_eq!(c.norm2(), 9.0);
        assert_eq!(monomials(3, 2).len(), 6);
    }
}
