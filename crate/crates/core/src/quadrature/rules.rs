use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Nodes and weights of a one-dimensional rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule1d {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Golub–Welsch: nodes and weights from the three-term recurrence of the orthogonal polynomials.
///
/// `diag` has length m, `offdiag` length m−1 holding `b_k` (not squared); `mu0` is the total mass.
pub fn golub_welsch(diag: &[f64], offdiag: &[f64], mu0: f64) -> Result<Rule1d> {
    let m = diag.len();
    if m == 0 || offdiag.len() + 1 != m {
        return Err(Error::structural("Jacobi matrix needs m diagonal and m-1 off-diagonal entries"));
    }
    let mut j = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        j[(i, i)] = diag[i];
    }
    for (i, &b) in offdiag.iter().enumerate() {
        j[(i, i + 1)] = b;
        j[(i + 1, i)] = b;
    }
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> = (0..m)
        .map(|i| (eig.eigenvalues[i], mu0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(Rule1d {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    })
}

/// Gauss rule for the standard normal density `(2π)^{-1/2} e^{-x²/2}`; weights sum to 1.
pub fn gauss_hermite(m: usize) -> Result<Rule1d> {
    let off: Vec<f64> = (1..m).map(|k| (k as f64).sqrt()).collect();
    golub_welsch(&vec![0.0; m], &off, 1.0)
}

/// Gauss rule on [−1, 1] for the weight `(1−s²)^a`, a > −1/2, normalized to total mass 1.
pub fn gauss_gegenbauer(m: usize, a: f64) -> Result<Rule1d> {
    if a <= -0.5 {
        return Err(Error::domain("Gegenbauer exponent must exceed -1/2"));
    }
    let off: Vec<f64> = (1..m)
        .map(|k| {
            let k = k as f64;
            (k * (k + 2.0 * a) / ((2.0 * k + 2.0 * a + 1.0) * (2.0 * k + 2.0 * a - 1.0))).sqrt()
        })
        .collect();
    golub_welsch(&vec![0.0; m], &off, 1.0)
}

/// Which half-line or interval a double-exponential rule covers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeDomain {
    /// `[a, b]` by tanh-sinh.
    Finite(f64, f64),
    /// `[0, ∞)` by exp-sinh.
    HalfLine,
    /// `(−∞, ∞)` by sinh-sinh.
    Line,
}

/// Node and weight (without the factor `h`) at parameter `t`; `None` past the float range.
fn de_node(domain: DeDomain, t: f64) -> Option<(f64, f64)> {
    let u = FRAC_PI_2 * t.sinh();
    let du = FRAC_PI_2 * t.cosh();
    let (x, w) = match domain {
        DeDomain::Finite(a, b) => {
            let half = 0.5 * (b - a);
            // distance to the nearer endpoint, without cancellation
            let gap = 2.0 / ((2.0 * u.abs()).exp() + 1.0);
            let x = if u >= 0.0 { b - half * gap } else { a + half * gap };
            (x, half * du / u.cosh().powi(2))
        }
        DeDomain::HalfLine => {
            let x = u.exp();
            (x, du * x)
        }
        DeDomain::Line => (u.sinh(), du * u.cosh()),
    };
    (x.is_finite() && w.is_finite() && w > 0.0).then_some((x, w))
}

/// Double-exponential rule with step `h` truncated at `|t| ≤ t_max`.
pub fn de_rule(domain: DeDomain, h: f64, t_max: f64) -> Rule1d {
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let k_max = (t_max / h).ceil() as i64;
    for k in -k_max..=k_max {
        if let Some((x, w)) = de_node(domain, k as f64 * h) {
            nodes.push(x);
            weights.push(h * w);
        }
    }
    Rule1d { nodes, weights }
}

/// Result of an adaptive one-dimensional integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Adaptive1d {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// Halves the double-exponential step until two successive levels agree to `rel_tol`.
pub fn integrate_de<F>(f: F, domain: DeDomain, rel_tol: f64) -> Result<Adaptive1d>
where
    F: FnMut(f64) -> Result<f64>,
{
    integrate_de_with(f, domain, rel_tol, 4.5, 10)
}

pub fn integrate_de_with<F>(mut f: F, domain: DeDomain, rel_tol: f64, t_max: f64, max_level: u32) -> Result<Adaptive1d>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut h = 0.5;
    let mut evaluations = 0;
    // Σ w f over the nodes of all levels so far; level ℓ adds the odd multiples of h
    let mut raw = 0.0;
    let mut prev: Option<f64> = None;
    let mut level = 0;
    loop {
        let k_max = (t_max / h).ceil() as i64;
        let stride = if level == 0 { 1 } else { 2 };
        let mut k = if level == 0 { -k_max } else { -k_max + (k_max + 1).rem_euclid(2) };
        while k <= k_max {
            if let Some((x, w)) = de_node(domain, k as f64 * h) {
                let v = f(x)?;
                evaluations += 1;
                if !v.is_finite() {
                    return Err(Error::NonFinite { point: vec![x] });
                }
                raw += w * v;
            }
            k += stride;
        }
        let sum = h * raw;
        if let Some(p) = prev {
            let err: f64 = (sum - p).abs();
            if err <= rel_tol * sum.abs() || level >= max_level || err == 0.0 {
                return Ok(Adaptive1d {
                    value: sum,
                    error_estimate: err,
                    evaluations,
                });
            }
        }
        prev = Some(sum);
        h *= 0.5;
        level += 1;
    }
}

/// Nodes on S^{d} ⊂ ℝ^{d+1} and weights summing to 1.
///
/// Built recursively: the last coordinate s carries the weight `(1−s²)^{(d−2)/2}` and the
/// rest is `√(1−s²)` times a point of S^{d−1}; S¹ uses `2m` equally spaced angles.
/// Exact for polynomials of degree below `2m`.
#[derive(Debug, Clone)]
pub struct SphereProductRule {
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

pub const MAX_PRODUCT_NODES: usize = 20_000_000;

pub fn sphere_product_rule(d: usize, m: usize) -> Result<SphereProductRule> {
    if d == 0 || m == 0 {
        return Err(Error::domain("sphere product rule needs d >= 1 and m >= 1"));
    }
    let total = (2 * m) as f64 * (m as f64).powi(d as i32 - 1);
    if total > MAX_PRODUCT_NODES as f64 {
        return Err(Error::Unsupported(format!(
            "product rule on S^{d} with {m} nodes per axis needs {total:.3e} nodes"
        )));
    }
    let mut points: Vec<Vec<f64>> = (0..2 * m)
        .map(|i| {
            let th = PI * i as f64 / m as f64;
            vec![th.cos(), th.sin()]
        })
        .collect();
    let mut weights = vec![1.0 / (2 * m) as f64; 2 * m];
    for level in 2..=d {
        let g = gauss_gegenbauer(m, (level as f64 - 2.0) / 2.0)?;
        let mut np = Vec::with_capacity(points.len() * m);
        let mut nw = Vec::with_capacity(points.len() * m);
        for (s, ws) in g.nodes.iter().zip(&g.weights) {
            let c = (1.0 - s * s).max(0.0).sqrt();
            for (p, wp) in points.iter().zip(&weights) {
                let mut q: Vec<f64> = p.iter().map(|v| v * c).collect();
                q.push(*s);
                np.push(q);
                nw.push(ws * wp);
            }
        }
        points = np;
        weights = nw;
    }
    Ok(SphereProductRule { points, weights })
}
