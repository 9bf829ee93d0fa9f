use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::rules::{gauss_hermite, integrate_de, sphere_product_rule, DeDomain};
use crate::error::{Error, Result};
use crate::geometry::{cayley_inverse, SpherePoint};
use crate::spectra::{ln_gamma_pos, log_gamma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureKind {
    MonteCarlo,
    SphereProductRule,
    GaussHermite,
    AdaptiveRadial,
}

/// Reproducible description of an integration rule.
///
/// `size` is the sample count for Monte Carlo and the node count per axis otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub kind: QuadratureKind,
    pub size: usize,
    pub seed: u64,
}

impl QuadratureSpec {
    pub fn new(kind: QuadratureKind, size: usize, seed: u64) -> Result<Self> {
        let s = QuadratureSpec { kind, size, seed };
        s.validate()?;
        Ok(s)
    }

    pub fn monte_carlo(size: usize, seed: u64) -> Self {
        QuadratureSpec {
            kind: QuadratureKind::MonteCarlo,
            size: size.max(1),
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.size == 0 {
            return Err(Error::domain("quadrature size must be at least 1"));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: QuadratureSpec = serde_json::from_str(s)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain struct")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: f64,
    /// Zero for deterministic rules.
    pub std_error: f64,
    pub nodes_used: usize,
}

/// splitmix64 step, used to derive independent sub-seeds.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Running mean and variance (Welford).
#[derive(Debug, Clone, Copy, Default)]
pub struct MeanAccumulator {
    n: usize,
    mean: f64,
    m2: f64,
}

impl MeanAccumulator {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn count(&self) -> usize {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            f64::INFINITY
        } else {
            self.m2 / (self.n - 1) as f64
        }
    }

    pub fn std_error(&self) -> f64 {
        (self.variance() / self.n as f64).sqrt()
    }

    pub fn result(&self, scale: f64) -> IntegralResult {
        IntegralResult {
            value: scale * self.mean,
            std_error: scale.abs() * self.std_error(),
            nodes_used: self.n,
        }
    }
}

fn finite(v: f64, x: &[f64]) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { point: x.to_vec() })
    }
}

fn mc_sum<F>(f: &F, mut points: impl FnMut(&mut ChaCha8Rng, &mut [f64]), dim: usize, spec: &QuadratureSpec) -> Result<MeanAccumulator>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let mut rng = seeded_rng(spec.seed);
    let mut acc = MeanAccumulator::default();
    let mut x = vec![0.0; dim];
    // plain sum for the value so that f = 1 returns exactly 1
    let mut sum = 0.0;
    for _ in 0..spec.size {
        points(&mut rng, &mut x);
        let v = finite(f(&x), &x)?;
        sum += v;
        acc.push(v);
    }
    acc.mean = sum / spec.size as f64;
    Ok(acc)
}

/// Fills `x` with a uniform point of the unit sphere in ℝ^{x.len()}.
pub fn sample_sphere<R: Rng + ?Sized>(rng: &mut R, x: &mut [f64]) {
    loop {
        let mut r2 = 0.0;
        for v in x.iter_mut() {
            *v = rng.sample(StandardNormal);
            r2 += *v * *v;
        }
        if r2 > 0.0 {
            let r = r2.sqrt();
            x.iter_mut().for_each(|v| *v /= r);
            return;
        }
    }
}

fn weighted_sum<F>(f: &F, points: &[Vec<f64>], weights: &[f64]) -> Result<IntegralResult>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let mut num = 0.0;
    let mut den = 0.0;
    for (p, w) in points.iter().zip(weights) {
        num += w * finite(f(p), p)?;
        den += w;
    }
    Ok(IntegralResult {
        value: num / den,
        std_error: 0.0,
        nodes_used: points.len(),
    })
}

/// `∫_{S^d} f dξ` for the rotation-invariant probability measure; `f` sees points of ℝ^{d+1}.
pub fn integrate_sphere<F>(d: usize, f: &F, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    spec.validate()?;
    if d == 0 {
        return Err(Error::domain("sphere dimension must be at least 1"));
    }
    match spec.kind {
        QuadratureKind::MonteCarlo => Ok(mc_sum(f, |rng, x| sample_sphere(rng, x), d + 1, spec)?.result(1.0)),
        QuadratureKind::SphereProductRule => {
            let rule = sphere_product_rule(d, spec.size)?;
            weighted_sum(f, &rule.points, &rule.weights)
        }
        other => Err(Error::Unsupported(format!("{other:?} is not a sphere rule"))),
    }
}

/// `∫_{ℝ^k} f dν` for the standard Gauss measure.
pub fn integrate_gauss<F>(k: usize, f: &F, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    spec.validate()?;
    if k == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    match spec.kind {
        QuadratureKind::MonteCarlo => Ok(mc_sum(f, gauss_sampler, k, spec)?.result(1.0)),
        QuadratureKind::GaussHermite => {
            let (points, weights) = gauss_hermite_tensor(k, spec.size)?;
            weighted_sum(f, &points, &weights)
        }
        QuadratureKind::AdaptiveRadial => {
            let norm = (2.0 * PI).powf(-(k as f64) / 2.0);
            radial_product(k, &|r| norm * (-0.5 * r * r).exp(), f, spec.size)
        }
        QuadratureKind::SphereProductRule => Err(Error::Unsupported("sphere rule on Gaussian space".into())),
    }
}

const RADIAL_TOL: f64 = 1e-12;
/// Outer tolerance of nested rules, above the noise of the inner values.
const OUTER_TOL: f64 = 1e-10;

/// `∫_{ℝ^k} f(x) w(|x|) dx` by a double-exponential radial rule times an angular product rule.
pub fn radial_product<W, F>(k: usize, w: &W, f: &F, angular_size: usize) -> Result<IntegralResult>
where
    W: Fn(f64) -> f64 + ?Sized,
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let (dirs, dir_w): (Vec<Vec<f64>>, Vec<f64>) = if k == 1 {
        (vec![vec![1.0], vec![-1.0]], vec![0.5, 0.5])
    } else {
        let r = sphere_product_rule(k - 1, angular_size)?;
        (r.points, r.weights)
    };
    // |S^{k−1}|
    let area = 2.0 * PI.powf(k as f64 / 2.0) / log_gamma(k as f64 / 2.0)?.exp();
    let mut x = vec![0.0; k];
    let mut nodes = 0;
    let res = integrate_de(
        |r| {
            let wr = match w(r) {
                0.0 => 0.0,
                wv => wv * r.powi(k as i32 - 1),
            };
            if wr == 0.0 {
                return Ok(0.0);
            }
            let mut s = 0.0;
            for (d, dw) in dirs.iter().zip(&dir_w) {
                x.iter_mut().zip(d).for_each(|(xi, di)| *xi = r * di);
                s += dw * finite(f(&x), &x)?;
            }
            nodes += dirs.len();
            Ok(area * wr * s)
        },
        DeDomain::HalfLine,
        RADIAL_TOL,
    )?;
    Ok(IntegralResult {
        value: res.value,
        std_error: 0.0,
        nodes_used: nodes,
    })
}

/// `∫_{ℝ^k} f(x) (1+|x|²/n)^{exponent} dx`; needs `exponent < −k/2`.
pub fn integrate_weighted_rn<F>(k: usize, n: f64, exponent: f64, f: &F, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    spec.validate()?;
    if k == 0 || !(n > 0.0) {
        return Err(Error::domain("need k >= 1 and n > 0"));
    }
    if !(2.0 * exponent < -(k as f64)) {
        return Err(Error::domain(format!(
            "(1+|x|^2/n)^{exponent} is not integrable on R^{k}"
        )));
    }
    match spec.kind {
        QuadratureKind::AdaptiveRadial => radial_product(k, &|r| (1.0 + r * r / n).powf(exponent), f, spec.size),
        QuadratureKind::MonteCarlo => {
            let (sampler, mass) = student_sampler(k, n, exponent)?;
            Ok(mc_sum(f, sampler, k, spec)?.result(mass))
        }
        other => Err(Error::Unsupported(format!("{other:?} for weighted R^k integrals"))),
    }
}

/// `Q_n(z,t) = (1+|z|²/(2n))² + t²/(4n²)`, coordinates ordered `x, y, t`.
pub fn heisenberg_q(n: usize, coords: &[f64]) -> f64 {
    let nf = n as f64;
    let z2: f64 = coords[..2 * n].iter().map(|v| v * v).sum();
    let t = coords[2 * n];
    (1.0 + z2 / (2.0 * nf)).powi(2) + t * t / (4.0 * nf * nf)
}

/// `∫ f Q_n^{−n−1} dz dt`; `f` sees coordinates `x₁..xₙ, y₁..yₙ, t`.
pub fn integrate_heisenberg_mu<F>(n: usize, f: &F, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    integrate_heisenberg_weight(n, -(n as f64) - 1.0, f, spec)
}

/// Total mass of `Q_n^{−n−1} dz dt`, through the Cayley transform of the sphere measure.
pub(crate) fn heisenberg_mu_mass(n: usize) -> f64 {
    let nf = n as f64;
    // (2n)^{n+1} π^{n+1/2} Γ(n+1/2) / Γ(2n+1)
    ((nf + 1.0) * (2.0 * nf).ln() + (nf + 0.5) * PI.ln() + ln_gamma_pos(nf + 0.5) - ln_gamma_pos(2.0 * nf + 1.0)).exp()
}

/// `∫ f Q_n^{exponent} dz dt`.
///
/// Monte Carlo is offered only for `exponent = −n−1`, where the Cayley transform of uniform
/// sphere samples is an exact sampler; other exponents use the adaptive radial rule.
pub fn integrate_heisenberg_weight<F>(n: usize, exponent: f64, f: &F, spec: &QuadratureSpec) -> Result<IntegralResult>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    spec.validate()?;
    if n == 0 {
        return Err(Error::domain("Heisenberg dimension n must be at least 1"));
    }
    let nf = n as f64;
    // Q ~ |z|^4 + t^2: integrable iff 4·exponent < −(2n+2)
    if !(4.0 * exponent < -(2.0 * nf + 2.0)) {
        return Err(Error::domain(format!("Q_n^{exponent} is not integrable")));
    }
    match spec.kind {
        QuadratureKind::MonteCarlo => {
            if exponent != -nf - 1.0 {
                return Err(Error::Unsupported(
                    "Monte Carlo on the Heisenberg group needs exponent -n-1".into(),
                ));
            }
            Ok(mc_sum(f, heisenberg_sampler(n), 2 * n + 1, spec)?.result(heisenberg_mu_mass(n)))
        }
        QuadratureKind::AdaptiveRadial => heisenberg_radial(n, exponent, f, spec.size),
        other => Err(Error::Unsupported(format!("{other:?} on the Heisenberg group"))),
    }
}

/// Draws from the normalized weight `(1+|x|²/n)^{exponent}` on ℝᵏ (a multivariate Student t
/// with `−2·exponent − k` degrees of freedom); also returns the weight's total mass.
pub(crate) fn student_sampler(
    k: usize,
    n: f64,
    exponent: f64,
) -> Result<(impl FnMut(&mut ChaCha8Rng, &mut [f64]), f64)> {
    let nu = -2.0 * exponent - k as f64;
    let chi = ChiSquared::new(nu).map_err(|e| Error::domain(e.to_string()))?;
    let kf = k as f64;
    let mass = (kf / 2.0) * (n * PI).ln() + ln_gamma_pos(-exponent - kf / 2.0) - ln_gamma_pos(-exponent);
    let sampler = move |rng: &mut ChaCha8Rng, x: &mut [f64]| {
        let s = (n / chi.sample(rng)).sqrt();
        x.iter_mut().for_each(|v| *v = s * rng.sample::<f64, _>(StandardNormal));
    };
    Ok((sampler, mass.exp()))
}

/// Draws from the normalized `Q_n^{−n−1}`: Cayley transform of a uniform point of S^{2n+1},
/// rescaled by `(√(2n), 2n)`.
pub(crate) fn heisenberg_sampler(n: usize) -> impl FnMut(&mut ChaCha8Rng, &mut [f64]) {
    let nf = n as f64;
    let sz = (2.0 * nf).sqrt();
    let mut sphere = vec![0.0; 2 * n + 2];
    move |rng: &mut ChaCha8Rng, x: &mut [f64]| loop {
        sample_sphere(rng, &mut sphere);
        let p = SpherePoint::normalized(sphere.clone()).expect("unit vector");
        if let Ok(h) = cayley_inverse(&p) {
            for j in 0..n {
                x[j] = sz * h.z[j].re;
                x[n + j] = sz * h.z[j].im;
            }
            x[2 * n] = 2.0 * nf * h.t;
            return;
        }
    }
}

pub(crate) fn gauss_sampler(rng: &mut ChaCha8Rng, x: &mut [f64]) {
    x.iter_mut().for_each(|v| *v = rng.sample(StandardNormal));
}

/// Tensor Gauss–Hermite nodes and weights on ℝᵏ, k ≤ 4.
pub(crate) fn gauss_hermite_tensor(k: usize, m: usize) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    if k > 4 {
        return Err(Error::Unsupported("tensor Gauss-Hermite is limited to k <= 4".into()));
    }
    let r = gauss_hermite(m)?;
    let total = m.pow(k as u32);
    let mut points = Vec::with_capacity(total);
    let mut weights = Vec::with_capacity(total);
    for idx in 0..total {
        let mut rem = idx;
        let mut p = Vec::with_capacity(k);
        let mut w = 1.0;
        for _ in 0..k {
            p.push(r.nodes[rem % m]);
            w *= r.weights[rem % m];
            rem /= m;
        }
        points.push(p);
        weights.push(w);
    }
    Ok((points, weights))
}

fn heisenberg_radial<F>(n: usize, exponent: f64, f: &F, angular_size: usize) -> Result<IntegralResult>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let nf = n as f64;
    let k = 2 * n;
    let r = sphere_product_rule(k - 1, angular_size)?;
    let rule = (r.points, r.weights);
    let area = 2.0 * PI.powf(nf) / log_gamma(nf)?.exp();
    let mut x = vec![0.0; k + 1];
    let mut nodes = 0;
    let res = integrate_de(
        |t| {
            // even-odd split in t: integrate over t >= 0 the sum f(·,t) + f(·,−t)
            // the r-profile sits near r² ~ 2n√(1 + t²/4n²); integrate in r/rc
            let rc = (2.0 * nf * (1.0 + t * t / (4.0 * nf * nf)).sqrt()).sqrt();
            let inner = integrate_de(
                |sr| {
                    let r = rc * sr;
                    let q = (1.0 + r * r / (2.0 * nf)).powi(2) + t * t / (4.0 * nf * nf);
                    // in logs: r^{k−1} overflows before Q^{exponent} underflows
                    let w = if r > 0.0 { (exponent * q.ln() + (k as f64 - 1.0) * r.ln()).exp() } else { 0.0 };
                    if w == 0.0 {
                        return Ok(0.0);
                    }
                    let mut s = 0.0;
                    for (d, dw) in rule.0.iter().zip(&rule.1) {
                        for i in 0..k {
                            x[i] = r * d[i];
                        }
                        for sign in [1.0, -1.0] {
                            x[k] = sign * t;
                            s += dw * finite(f(&x), &x)?;
                        }
                    }
                    nodes += 2 * rule.0.len();
                    Ok(area * rc * w * s)
                },
                DeDomain::HalfLine,
                RADIAL_TOL,
            )?;
            Ok(inner.value)
        },
        DeDomain::HalfLine,
        OUTER_TOL,
    )?;
    Ok(IntegralResult {
        value: res.value,
        std_error: 0.0,
        nodes_used: nodes,
    })
}
