//! Several integrals over one set of nodes, with their joint covariance.

use std::cell::RefCell;

use super::integrate::{
    gauss_hermite_tensor, gauss_sampler, heisenberg_mu_mass, heisenberg_sampler, integrate_gauss,
    integrate_heisenberg_weight, integrate_weighted_rn, sample_sphere, seeded_rng, student_sampler, QuadratureKind,
    QuadratureSpec,
};
use super::rules::sphere_product_rule;
use crate::error::{Error, Result};

/// Where the integrals live.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measure {
    /// Normalized measure on S^d ⊂ ℝ^{d+1}.
    Sphere { d: usize },
    /// Standard Gauss measure on ℝᵏ.
    Gauss { k: usize },
    /// `(1+|x|²/n)^{exponent} dx` on ℝᵏ, not normalized.
    WeightedRn { k: usize, n: f64, exponent: f64 },
    /// `Q_n^{−n−1} dz dt` on the Heisenberg group, not normalized.
    HeisenbergMu { n: usize },
}

impl Measure {
    /// Length of the coordinate vector handed to integrands.
    pub fn point_dim(&self) -> usize {
        match *self {
            Measure::Sphere { d } => d + 1,
            Measure::Gauss { k } | Measure::WeightedRn { k, .. } => k,
            Measure::HeisenbergMu { n } => 2 * n + 1,
        }
    }
}

/// Means (times the total mass) of `M` integrands and their sample covariance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointEstimate<const M: usize> {
    pub value: [f64; M],
    /// Covariance of single-node values; zero for deterministic rules.
    pub cov: [[f64; M]; M],
    pub count: usize,
    pub stochastic: bool,
}

impl<const M: usize> JointEstimate<M> {
    /// Standard error of `Σ g_i value_i`, or of a smooth function with gradient `g`.
    pub fn std_error_of(&self, g: [f64; M]) -> f64 {
        if !self.stochastic {
            return 0.0;
        }
        let mut v = 0.0;
        for i in 0..M {
            for j in 0..M {
                v += g[i] * self.cov[i][j] * g[j];
            }
        }
        (v.max(0.0) / self.count as f64).sqrt()
    }

    pub fn std_error(&self, i: usize) -> f64 {
        let mut g = [0.0; M];
        g[i] = 1.0;
        self.std_error_of(g)
    }
}

struct Welford<const M: usize> {
    n: usize,
    sum: [f64; M],
    mean: [f64; M],
    co: [[f64; M]; M],
}

impl<const M: usize> Welford<M> {
    fn new() -> Self {
        Welford {
            n: 0,
            sum: [0.0; M],
            mean: [0.0; M],
            co: [[0.0; M]; M],
        }
    }

    fn push(&mut self, x: &[f64; M]) {
        self.n += 1;
        let nf = self.n as f64;
        let mut d = [0.0; M];
        for i in 0..M {
            self.sum[i] += x[i];
            d[i] = x[i] - self.mean[i];
            self.mean[i] += d[i] / nf;
        }
        for i in 0..M {
            for j in 0..M {
                self.co[i][j] += d[i] * (x[j] - self.mean[j]);
            }
        }
    }

    fn finish(self, mass: f64) -> JointEstimate<M> {
        let mut value = [0.0; M];
        let mut cov = [[0.0; M]; M];
        let denom = (self.n.max(2) - 1) as f64;
        for i in 0..M {
            value[i] = mass * self.sum[i] / self.n as f64;
            for j in 0..M {
                cov[i][j] = mass * mass * self.co[i][j] / denom;
            }
        }
        JointEstimate {
            value,
            cov,
            count: self.n,
            stochastic: true,
        }
    }
}

fn check<const M: usize>(v: [f64; M], x: &[f64]) -> Result<[f64; M]> {
    if v.iter().all(|a| a.is_finite()) {
        Ok(v)
    } else {
        Err(Error::NonFinite { point: x.to_vec() })
    }
}

fn monte_carlo<const M: usize, F, S>(f: &F, mut sampler: S, dim: usize, mass: f64, spec: &QuadratureSpec) -> Result<JointEstimate<M>>
where
    F: Fn(&[f64]) -> Result<[f64; M]>,
    S: FnMut(&mut rand_chacha::ChaCha8Rng, &mut [f64]),
{
    let mut rng = seeded_rng(spec.seed);
    let mut x = vec![0.0; dim];
    let mut acc = Welford::new();
    for _ in 0..spec.size {
        sampler(&mut rng, &mut x);
        acc.push(&check(f(&x)?, &x)?);
    }
    Ok(acc.finish(mass))
}

fn weighted<const M: usize, F>(f: &F, points: &[Vec<f64>], weights: &[f64]) -> Result<JointEstimate<M>>
where
    F: Fn(&[f64]) -> Result<[f64; M]>,
{
    let mut value = [0.0; M];
    let total: f64 = weights.iter().sum();
    for (p, w) in points.iter().zip(weights) {
        let v = check(f(p)?, p)?;
        for i in 0..M {
            value[i] += w * v[i];
        }
    }
    value.iter_mut().for_each(|v| *v /= total);
    Ok(deterministic(value, points.len()))
}

fn deterministic<const M: usize>(value: [f64; M], count: usize) -> JointEstimate<M> {
    JointEstimate {
        value,
        cov: [[0.0; M]; M],
        count,
        stochastic: false,
    }
}

/// One scalar adaptive run per component; errors raised inside the integrand are passed through.
fn per_component<const M: usize, F, G>(f: &F, mut scalar: G) -> Result<JointEstimate<M>>
where
    F: Fn(&[f64]) -> Result<[f64; M]>,
    G: FnMut(&dyn Fn(&[f64]) -> f64) -> Result<super::IntegralResult>,
{
    let err: RefCell<Option<Error>> = RefCell::new(None);
    let mut value = [0.0; M];
    let mut count = 0;
    for (i, slot) in value.iter_mut().enumerate() {
        let g = |x: &[f64]| match f(x) {
            Ok(v) => v[i],
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        };
        let r = scalar(&g);
        if let Some(e) = err.borrow_mut().take() {
            return Err(e);
        }
        let r = r?;
        *slot = r.value;
        count += r.nodes_used;
    }
    Ok(deterministic(value, count))
}

/// Integrates the `M` components of `f` against `measure` on a shared set of nodes.
///
/// Monte Carlo uses exactly the samples of the scalar routines with the same spec.
pub fn integrate_joint<const M: usize, F>(measure: Measure, f: &F, spec: &QuadratureSpec) -> Result<JointEstimate<M>>
where
    F: Fn(&[f64]) -> Result<[f64; M]>,
{
    spec.validate()?;
    let dim = measure.point_dim();
    match (measure, spec.kind) {
        (Measure::Sphere { d }, _) if d == 0 => Err(Error::domain("sphere dimension must be at least 1")),
        (Measure::Sphere { .. }, QuadratureKind::MonteCarlo) => {
            monte_carlo(f, |rng, x| sample_sphere(rng, x), dim, 1.0, spec)
        }
        (Measure::Sphere { d }, QuadratureKind::SphereProductRule) => {
            let rule = sphere_product_rule(d, spec.size)?;
            weighted(f, &rule.points, &rule.weights)
        }
        (Measure::Gauss { k }, _) if k == 0 => Err(Error::domain("dimension must be at least 1")),
        (Measure::Gauss { .. }, QuadratureKind::MonteCarlo) => monte_carlo(f, gauss_sampler, dim, 1.0, spec),
        (Measure::Gauss { k }, QuadratureKind::GaussHermite) => {
            let (p, w) = gauss_hermite_tensor(k, spec.size)?;
            weighted(f, &p, &w)
        }
        (Measure::Gauss { k }, QuadratureKind::AdaptiveRadial) => per_component(f, |g| integrate_gauss(k, g, spec)),
        (Measure::WeightedRn { k, n, exponent }, QuadratureKind::MonteCarlo) => {
            // validation lives in the scalar routine
            integrate_weighted_rn(k, n, exponent, &|_: &[f64]| 1.0, &QuadratureSpec::monte_carlo(1, 0))?;
            let (sampler, mass) = student_sampler(k, n, exponent)?;
            monte_carlo(f, sampler, dim, mass, spec)
        }
        (Measure::WeightedRn { k, n, exponent }, QuadratureKind::AdaptiveRadial) => {
            per_component(f, |g| integrate_weighted_rn(k, n, exponent, g, spec))
        }
        (Measure::HeisenbergMu { n }, QuadratureKind::MonteCarlo) => {
            if n == 0 {
                return Err(Error::domain("Heisenberg dimension n must be at least 1"));
            }
            monte_carlo(f, heisenberg_sampler(n), dim, heisenberg_mu_mass(n), spec)
        }
        (Measure::HeisenbergMu { n }, QuadratureKind::AdaptiveRadial) => {
            per_component(f, |g| integrate_heisenberg_weight(n, -(n as f64) - 1.0, g, spec))
        }
        (m, kind) => Err(Error::Unsupported(format!("{kind:?} for {m:?}"))),
    }
}

/// Total mass of a measure (1 for the probability measures).
pub fn measure_mass(measure: Measure) -> Result<f64> {
    match measure {
        Measure::Sphere { .. } | Measure::Gauss { .. } => Ok(1.0),
        Measure::WeightedRn { k, n, exponent } => Ok(student_sampler(k, n, exponent)?.1),
        Measure::HeisenbergMu { n } => Ok(heisenberg_mu_mass(n)),
    }
}
