use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

const UNIT_TOL: f64 = 1e-12;

/// A point on the unit sphere in ℝ^{d+1}.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

impl SpherePoint {
    /// Accepts `coords` only if it is a unit vector to 1e-12.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let r2: f64 = coords.iter().map(|c| c * c).sum();
        if coords.is_empty() || (r2 - 1.0).abs() > UNIT_TOL || !r2.is_finite() {
            return Err(Error::domain(format!("not a unit vector: |xi|^2 = {r2}")));
        }
        Ok(SpherePoint { coords })
    }

    /// Scales a nonzero vector onto the sphere.
    pub fn normalized(mut coords: Vec<f64>) -> Result<Self> {
        let r = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain("cannot normalize a zero or non-finite vector"));
        }
        coords.iter_mut().for_each(|c| *c /= r);
        Ok(SpherePoint { coords })
    }

    /// Uniform sample on the sphere in ℝ^`ambient_dim`.
    pub fn random<R: Rng + ?Sized>(ambient_dim: usize, rng: &mut R) -> Self {
        loop {
            let v: Vec<f64> = (0..ambient_dim).map(|_| rng.sample(StandardNormal)).collect();
            if let Ok(p) = Self::normalized(v) {
                return p;
            }
        }
    }

    pub fn renormalize(&mut self) {
        let r = self.coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        self.coords.iter_mut().for_each(|c| *c /= r);
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    /// Dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len()
    }
}

/// ξ = 2x/(1+|x|²), ξ_{n+1} = (1−|x|²)/(1+|x|²).
pub fn stereographic_inverse(x: &[f64]) -> SpherePoint {
    let r2: f64 = x.iter().map(|v| v * v).sum();
    let d = 1.0 + r2;
    let mut coords: Vec<f64> = x.iter().map(|v| 2.0 * v / d).collect();
    coords.push((1.0 - r2) / d);
    SpherePoint { coords }
}

/// x = ξ/(1+ξ_{n+1}); undefined at the south pole.
pub fn stereographic(xi: &SpherePoint) -> Result<Vec<f64>> {
    let (last, head) = xi.coords.split_last().expect("nonempty");
    let d = 1.0 + last;
    if d <= 0.0 {
        return Err(Error::domain("stereographic projection is undefined at the south pole"));
    }
    Ok(head.iter().map(|v| v / d).collect())
}

/// 1 + ξ_{n+1} = 2/(1+|x|²).
pub fn conformal_factor(x: &[f64]) -> f64 {
    2.0 / (1.0 + x.iter().map(|v| v * v).sum::<f64>())
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm2(a: &[f64]) -> f64 {
    dot(a, a)
}
