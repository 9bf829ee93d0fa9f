use rand::Rng;

use super::function::monomials;
use super::report::{InequalityReport, ReportMetadata};
use super::sphere::entropy_density;
use crate::error::{Error, Result};
use crate::exactpoly::{coordinate_names, MultiPoly, NumPoly, Rational};
use crate::quadrature::{integrate_joint, seeded_rng, Measure, QuadratureSpec};

/// Central-difference step for functions without an analytic gradient.
pub const FD_STEP: f64 = 1e-5;

/// A real function on ℝᵏ, for Gaussian-space checks.
pub trait GaussFunction {
    fn dim(&self) -> usize;

    fn value(&self, x: &[f64]) -> f64;

    /// Central differences unless overridden.
    fn gradient(&self, x: &[f64], out: &mut [f64]) {
        let mut y = x.to_vec();
        for i in 0..x.len() {
            y[i] = x[i] + FD_STEP;
            let up = self.value(&y);
            y[i] = x[i] - FD_STEP;
            let down = self.value(&y);
            y[i] = x[i];
            out[i] = (up - down) / (2.0 * FD_STEP);
        }
    }
}

/// A closure with numerical gradient.
pub struct ClosureFunction<F: Fn(&[f64]) -> f64> {
    pub k: usize,
    pub f: F,
}

impl<F: Fn(&[f64]) -> f64> GaussFunction for ClosureFunction<F> {
    fn dim(&self) -> usize {
        self.k
    }

    fn value(&self, x: &[f64]) -> f64 {
        (self.f)(x)
    }
}

/// A real polynomial with its exact gradient.
#[derive(Debug, Clone)]
pub struct PolyFunction {
    poly: NumPoly,
}

impl PolyFunction {
    pub fn new(p: &MultiPoly<Rational>) -> Self {
        PolyFunction { poly: NumPoly::new(p) }
    }
}

impl GaussFunction for PolyFunction {
    fn dim(&self) -> usize {
        self.poly.nvars()
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.poly.eval(x).re
    }

    fn gradient(&self, x: &[f64], out: &mut [f64]) {
        let mut im = vec![0.0; out.len()];
        self.poly.eval_with_gradient(x, out, &mut im);
    }
}

/// Random polynomial on ℝᵏ of degree at most `degree`, one uniform `[−1, 1]` coefficient per monomial.
pub fn random_gauss_polynomial(k: usize, degree: u32, seed: u64) -> Result<PolyFunction> {
    let names = coordinate_names(k);
    let mut rng = seeded_rng(seed);
    let mut terms = Vec::new();
    for d in 0..=degree {
        for e in monomials(k, d) {
            let c = Rational::new(rng.random_range(-1000i64..=1000).into(), 1000.into());
            terms.push((e, c));
        }
    }
    Ok(PolyFunction::new(&MultiPoly::from_terms(&names, terms)?))
}

/// Gross: `∫|f|² log|f| dν ≤ ∫|∇f|² dν` for the Gauss measure, after normalizing `∫|f|² dν = 1`.
pub fn gross_check(f: &dyn GaussFunction, spec: &QuadratureSpec) -> Result<InequalityReport> {
    let k = f.dim();
    let j = integrate_joint(
        Measure::Gauss { k },
        &|x: &[f64]| {
            let v = f.value(x);
            let mut g = vec![0.0; k];
            f.gradient(x, &mut g);
            Ok([entropy_density(v.abs()), v * v, g.iter().map(|a| a * a).sum()])
        },
        spec,
    )?;
    let [a, b, d] = j.value;
    if !(b > 0.0) {
        return Err(Error::domain("f vanishes in L²"));
    }
    // normalized: lhs = A/B − ½ log B, rhs = D/B
    let lhs = a / b - 0.5 * b.ln();
    let rhs = d / b;
    let grad = [-1.0 / b, (a - d) / (b * b) + 0.5 / b, 1.0 / b];
    let md = ReportMetadata::new("gross", None, Some(*spec)).with("k", k as f64);
    InequalityReport::new(lhs, rhs, j.std_error_of(grad), md)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadratureKind;

    fn gh(m: usize) -> QuadratureSpec {
        QuadratureSpec::new(QuadratureKind::GaussHermite, m, 0).unwrap()
    }

    #[test]
    fn constant_is_equality() {
        let r = gross_check(&ClosureFunction { k: 2, f: |_: &[f64]| 1.0 }, &gh(8)).unwrap();
        assert!(r.lhs.abs() < 1e-15 && r.rhs == 0.0);
    }

    #[test]
    fn small_linear_perturbation() {
        let f = ClosureFunction { k: 1, f: |x: &[f64]| 1.0 + 0.1 * x[0] };
        let r = gross_check(&f, &gh(60)).unwrap();
        assert!(r.margin >= -1e-8, "{r:?}");
        // exponentials are the extremals: e^{a x} gives equality
        let e = ClosureFunction { k: 1, f: |x: &[f64]| (0.3 * x[0]).exp() };
        let r = gross_check(&e, &gh(60)).unwrap();
        assert!(r.margin.abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn analytic_and_numerical_gradients_agree() {
        let p = random_gauss_polynomial(2, 2, 5).unwrap();
        let c = ClosureFunction { k: 2, f: |x: &[f64]| p.value(x) };
        let a = gross_check(&p, &gh(20)).unwrap();
        let b = gross_check(&c, &gh(20)).unwrap();
        assert!((a.rhs - b.rhs).abs() < 1e-7 * a.rhs.max(1.0));
    }

    #[test]
    fn random_polynomials() {
        for seed in 0..30 {
            let k = 1 + (seed % 3) as usize;
            let p = random_gauss_polynomial(k, 2, seed).unwrap();
            let r = gross_check(&p, &gh(24)).unwrap();
            assert!(r.margin >= -1e-6, "{seed}: {r:?}");
        }
    }
}
