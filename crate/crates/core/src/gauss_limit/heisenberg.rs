use num_complex::Complex64;

use super::constants::heisenberg_constant;
use crate::error::{Error, Result};
use crate::exactpoly::{MultiPoly, NumPoly, Rational};
use crate::geometry::{cayley, heisenberg_fields, heisenberg_vars, reflect_t, HeisenbergPoint};
use crate::inequalities::{entropy_density, InequalityReport, ReportMetadata};
use crate::quadrature::{heisenberg_q, integrate_joint, Measure, QuadratureKind, QuadratureSpec};

/// Relative step of the finite differences used for closures.
pub const HEISENBERG_FD_STEP: f64 = 1e-3;

/// A real function on ℂⁿ × ℝ in coordinates `x₁..xₙ, y₁..yₙ, t`.
pub trait HeisenbergFunction {
    fn n(&self) -> usize;

    fn value(&self, coords: &[f64]) -> f64;

    /// `Σ_j (X_j f)² + (Y_j f)²`; fourth-order central differences unless overridden.
    fn horizontal_gradient_norm2(&self, coords: &[f64]) -> f64 {
        let n = self.n();
        let mut c = coords.to_vec();
        let mut partial = |i: usize| {
            let h = HEISENBERG_FD_STEP * coords[i].abs().max(1.0);
            let mut at = |s: f64| {
                c[i] = coords[i] + s * h;
                self.value(&c)
            };
            let d = (8.0 * (at(1.0) - at(-1.0)) - (at(2.0) - at(-2.0))) / (12.0 * h);
            c[i] = coords[i];
            d
        };
        let ft = partial(2 * n);
        let mut s = 0.0;
        for j in 0..n {
            let xf = partial(j) + 2.0 * coords[n + j] * ft;
            let yf = partial(n + j) - 2.0 * coords[j] * ft;
            s += xf * xf + yf * yf;
        }
        s
    }

    /// Degree with `t` counted twice, when `f` is a polynomial.
    fn weighted_degree(&self) -> Option<u32> {
        None
    }

    /// Whether `f²` and `|∇_b f|² Q_n` are bounded, so that Monte Carlo has finite variance.
    fn bounded_energy(&self) -> bool {
        false
    }
}

/// A real polynomial in `heisenberg_vars(n)`, with its horizontal derivatives computed exactly.
#[derive(Debug, Clone)]
pub struct HeisenbergPoly {
    n: usize,
    poly: NumPoly,
    fields: Vec<NumPoly>,
    weighted_degree: u32,
}

impl HeisenbergPoly {
    pub fn new(n: usize, p: &MultiPoly<Rational>) -> Result<Self> {
        let vars = heisenberg_vars(n);
        if p.vars() != vars.as_slice() {
            return Err(Error::structural(format!("polynomial must use the variables {vars:?}")));
        }
        let fields = heisenberg_fields(n)?;
        let mut compiled = Vec::with_capacity(2 * n);
        for v in fields.x.iter().chain(&fields.y) {
            compiled.push(NumPoly::new(&v.apply(p)?));
        }
        let weighted_degree = p
            .terms()
            .map(|(e, _)| e[..2 * n].iter().sum::<u32>() + 2 * e[2 * n])
            .max()
            .unwrap_or(0);
        Ok(HeisenbergPoly {
            n,
            poly: NumPoly::new(p),
            fields: compiled,
            weighted_degree,
        })
    }
}

impl HeisenbergFunction for HeisenbergPoly {
    fn n(&self) -> usize {
        self.n
    }

    fn value(&self, coords: &[f64]) -> f64 {
        self.poly.eval(coords).re
    }

    fn horizontal_gradient_norm2(&self, coords: &[f64]) -> f64 {
        self.fields.iter().map(|p| p.eval(coords).re.powi(2)).sum()
    }

    fn weighted_degree(&self) -> Option<u32> {
        Some(self.weighted_degree)
    }
}

/// A closure on ℂⁿ × ℝ with finite-difference horizontal derivatives.
pub struct HeisenbergClosure<F: Fn(&[f64]) -> f64> {
    pub n: usize,
    pub f: F,
}

impl<F: Fn(&[f64]) -> f64> HeisenbergFunction for HeisenbergClosure<F> {
    fn n(&self) -> usize {
        self.n
    }

    fn value(&self, coords: &[f64]) -> f64 {
        (self.f)(coords)
    }
}

/// Pulls a function on S^{2n+1} back to ℂⁿ × ℝ: `(z, t) ↦ (z/√(2n), −t/(2n))` followed by the
/// Cayley transform. The scaling turns `Q_n^{−n−1}` into the transported sphere measure.
pub fn sphere_pullback<G>(n: usize, g: G) -> SpherePullback<G>
where
    G: Fn(&[f64]) -> f64,
{
    SpherePullback { n, g }
}

/// A smooth function on the sphere seen on ℂⁿ × ℝ; see [`sphere_pullback`].
pub struct SpherePullback<G: Fn(&[f64]) -> f64> {
    n: usize,
    g: G,
}

impl<G: Fn(&[f64]) -> f64> HeisenbergFunction for SpherePullback<G> {
    fn n(&self) -> usize {
        self.n
    }

    fn value(&self, c: &[f64]) -> f64 {
        let n = self.n;
        let nf = n as f64;
        let sz = (2.0 * nf).sqrt();
        let z = (0..n).map(|j| Complex64::new(c[j] / sz, c[n + j] / sz)).collect();
        let h = reflect_t(&HeisenbergPoint::new(z, c[2 * n] / (2.0 * nf)));
        (self.g)(cayley(&h).coords())
    }

    // |∇_b f|² carries the squared conformal factor, a multiple of 1/Q
    fn bounded_energy(&self) -> bool {
        true
    }
}

/// Log-Sobolev on the Heisenberg group: `c′ₙ∫|f|² log|f| dμₙ ≤ (c′ₙ/4)∫|∇_b f|² Q_n^{−n} dz dt`
/// with `c′ₙ∫|f|² dμₙ = 1`.
///
/// The entropy integral uses `spec`. The norm and the gradient term, integrated against `μₙ` as
/// `|∇_b f|² Q_n`, use the adaptive radial rule (angular size from `spec` when it is adaptive,
/// 4 otherwise): the Monte Carlo variance of the gradient term is infinite for most polynomials.
/// Functions with [`HeisenbergFunction::bounded_energy`] take all three terms from a Monte Carlo
/// `spec` on shared nodes.
/// Polynomials must have weighted degree below `n`; closures are taken on trust.
pub fn heisenberg_logsob_check(n: usize, f: &dyn HeisenbergFunction, spec: &QuadratureSpec) -> Result<InequalityReport> {
    if n == 0 {
        return Err(Error::domain("Heisenberg dimension n must be at least 1"));
    }
    if f.n() != n {
        return Err(Error::structural(format!("f lives on H^{}, expected H^{n}", f.n())));
    }
    if let Some(d) = f.weighted_degree() {
        // |∇_b f|² Q^{−n} ~ ρ^{2d−2−4n} against ρ^{2n+1} dρ; entropy needs d < n+1
        if d >= n as u32 && d > 0 {
            return Err(Error::domain(format!(
                "weighted degree {d} makes the gradient term non-integrable for n = {n}"
            )));
        }
    }
    let c = heisenberg_constant(n as u32)?;
    let measure = Measure::HeisenbergMu { n };
    let md = ReportMetadata::new("heisenberg-logsob", None, Some(*spec))
        .with("n", n as f64)
        .with("constant", c);
    if spec.kind == QuadratureKind::MonteCarlo && f.bounded_energy() {
        let j = integrate_joint(
            measure,
            &|x: &[f64]| {
                let v = f.value(x);
                Ok([entropy_density(v.abs()), v * v, f.horizontal_gradient_norm2(x) * heisenberg_q(n, x)])
            },
            spec,
        )?;
        let [a, b, g] = j.value.map(|v| c * v);
        if !(b > 0.0) {
            return Err(Error::domain("f vanishes in L²(μ)"));
        }
        let lhs = a / b - 0.5 * b.ln();
        let rhs = 0.25 * g / b;
        let se = c * j.std_error_of([-1.0 / b, (a - 0.25 * g) / (b * b) + 0.5 / b, 0.25 / b]);
        return InequalityReport::new(lhs, rhs, se, md);
    }
    let ent = integrate_joint(measure, &|x: &[f64]| Ok([entropy_density(f.value(x).abs())]), spec)?;
    let smooth_spec = match spec.kind {
        QuadratureKind::AdaptiveRadial => *spec,
        _ => QuadratureSpec::new(QuadratureKind::AdaptiveRadial, 4, spec.seed)?,
    };
    let smooth = integrate_joint(
        measure,
        &|x: &[f64]| Ok([f.value(x).powi(2), f.horizontal_gradient_norm2(x) * heisenberg_q(n, x)]),
        &smooth_spec,
    )?;
    let (a, b) = (c * ent.value[0], c * smooth.value[0]);
    if !(b > 0.0) {
        return Err(Error::domain("f vanishes in L²(μ)"));
    }
    let lhs = a / b - 0.5 * b.ln();
    let rhs = 0.25 * c * smooth.value[1] / b;
    let se = c * ent.std_error(0) / b;
    InequalityReport::new(lhs, rhs, se, md)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{rat, rational_to_f64, CPoly};
    use crate::inequalities::{dirichlet_form_spectral, verify_theorem21, BandLimitedFunction, ComponentLabel};
    use crate::spectra::CaseId;

    fn poly(n: usize, terms: Vec<(Vec<u32>, Rational)>) -> MultiPoly<Rational> {
        MultiPoly::from_terms(&heisenberg_vars(n), terms).unwrap()
    }

    #[test]
    fn constant_is_equality() {
        for n in 1..=2 {
            let one = HeisenbergPoly::new(n, &poly(n, vec![(vec![0; 2 * n + 1], rat(3, 1))])).unwrap();
            for spec in [
                QuadratureSpec::monte_carlo(2000, 1),
                QuadratureSpec::new(QuadratureKind::AdaptiveRadial, 4, 0).unwrap(),
            ] {
                let r = heisenberg_logsob_check(n, &one, &spec).unwrap();
                assert!(r.rhs == 0.0 && r.lhs.abs() < 1e-6, "{r:?}");
            }
        }
    }

    #[test]
    fn linear_perturbation_n2() {
        let p = poly(2, vec![(vec![0; 5], rat(1, 1)), (vec![1, 0, 0, 0, 0], rat(1, 10))]);
        let f = HeisenbergPoly::new(2, &p).unwrap();
        let r = heisenberg_logsob_check(2, &f, &QuadratureSpec::monte_carlo(100_000, 7)).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(r.rhs > 0.0 && r.std_error > 0.0);
        // exact gradients agree with finite differences
        let fd = HeisenbergClosure { n: 2, f: |c: &[f64]| f.value(c) };
        let x = [0.3, -0.2, 0.5, 0.1, 0.7];
        assert!((fd.horizontal_gradient_norm2(&x) - f.horizontal_gradient_norm2(&x)).abs() < 1e-8);
    }

    #[test]
    fn degree_cap() {
        let p = poly(2, vec![(vec![0, 0, 0, 0, 1], rat(1, 1))]);
        assert!(heisenberg_logsob_check(2, &HeisenbergPoly::new(2, &p).unwrap(), &QuadratureSpec::monte_carlo(10, 0)).is_err());
        let p = poly(1, vec![(vec![1, 0, 0], rat(1, 1))]);
        assert!(heisenberg_logsob_check(1, &HeisenbergPoly::new(1, &p).unwrap(), &QuadratureSpec::monte_carlo(10, 0)).is_err());
        assert!(HeisenbergPoly::new(2, &poly(1, vec![])).is_err());
    }

    /// `Re g`, relabelled so each K-type carries its part of `(g + ḡ)/2`.
    fn real_part(g: &BandLimitedFunction) -> BandLimitedFunction {
        use crate::spectra::KTypeLabel;
        use num_complex::Complex;
        use num_traits::Zero;
        let mut parts: std::collections::BTreeMap<ComponentLabel, CPoly> = Default::default();
        for c in g.components() {
            let KTypeLabel::Complex { p, q } = c.label.ktype().unwrap() else { unreachable!() };
            let half = Complex::new(Rational::from_float(c.weight / 2.0).unwrap(), Rational::zero());
            let a = c.harmonic.scale(&half);
            let b = a.conj();
            for (label, y) in [(KTypeLabel::Complex { p, q }, a), (KTypeLabel::Complex { p: q, q: p }, b)] {
                let e = parts.entry(ComponentLabel::KType(label)).or_insert_with(|| CPoly::zero(y.vars()));
                *e = e.try_add(&y).unwrap();
            }
        }
        let parts = parts.into_iter().map(|(l, y)| (l, y, 1.0)).collect();
        BandLimitedFunction::from_parts_unchecked(*g.case(), parts).unwrap()
    }

    #[test]
    fn matches_sphere_inequality_n1() {
        let case = CaseId::complex(1);
        let product = QuadratureSpec::new(QuadratureKind::SphereProductRule, 24, 0).unwrap();
        for seed in 0..1 {
            let g = real_part(&BandLimitedFunction::random(case, 2, seed).unwrap());
            assert!(g.is_real());
            let s = verify_theorem21(&g, &product).unwrap();
            let n2 = g.norm2();
            let f = sphere_pullback(1, |x: &[f64]| g.eval(x).re);
            // hides the bounded energy, forcing the deterministic norm and gradient terms
            let closure = HeisenbergClosure { n: 1, f: |c: &[f64]| f.value(c) };
            let h = heisenberg_logsob_check(1, &closure, &QuadratureSpec::monte_carlo(50_000, seed)).unwrap();
            let exact_rhs = rational_to_f64(&case.sharp_constant()) * dirichlet_form_spectral(&g).unwrap() / n2;
            assert!((h.rhs - exact_rhs).abs() < 1e-6 * exact_rhs, "seed {seed}: {} vs {exact_rhs}", h.rhs);
            assert!((s.rhs / n2 - exact_rhs).abs() < 1e-9 * exact_rhs);
            let lhs_s = s.lhs / n2;
            assert!((h.lhs - lhs_s).abs() < 4.0 * h.std_error + 1e-4, "seed {seed}: {} vs {lhs_s}", h.lhs);
            let m = heisenberg_logsob_check(1, &f, &QuadratureSpec::monte_carlo(200_000, seed + 1)).unwrap();
            let want = s.margin / n2;
            assert!((m.margin - want).abs() < 4.0 * m.std_error, "{} vs {want} ({})", m.margin, m.std_error);
        }
    }
}
