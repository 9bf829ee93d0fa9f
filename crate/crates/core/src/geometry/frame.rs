use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::algebra::{octonion_inv, octonion_mul, octonion_norm2, quaternion_mul, unit_octonion, Octonion};
use super::sphere::{dot, norm2, SpherePoint};
use crate::error::{Error, Result};
use crate::exactpoly::{MultiPoly, NumPoly, Rational};
use crate::spectra::{CaseId, Family};

fn check_point(case: &CaseId, xi: &[f64]) -> Result<()> {
    if xi.len() != case.ambient_dim() {
        return Err(Error::structural(format!(
            "{case} lives in R^{}, got a point in R^{}",
            case.ambient_dim(),
            xi.len()
        )));
    }
    let r2 = norm2(xi);
    if (r2 - 1.0).abs() > 1e-10 {
        return Err(Error::domain(format!("not a unit vector: |xi|^2 = {r2}")));
    }
    Ok(())
}

fn octonion_from(s: &[f64]) -> Octonion {
    std::array::from_fn(|i| s[i])
}

/// Orthonormal basis of the Hopf fibre through ξ: ξ together with its vertical directions.
///
/// Coordinates pair up as `(Re, Im)` for ℂ, blocks of 4 for ℍ and blocks of 8 for 𝕆.
pub fn fibre_basis(case: &CaseId, xi: &[f64]) -> Result<Vec<Vec<f64>>> {
    check_point(case, xi)?;
    Ok(match case.family {
        Family::Real => vec![xi.to_vec()],
        Family::Complex => {
            let ixi: Vec<f64> = xi.chunks(2).flat_map(|c| [-c[1], c[0]]).collect();
            vec![xi.to_vec(), ixi]
        }
        Family::Quaternionic => {
            let mut out = vec![xi.to_vec()];
            for u in 1..4 {
                let mut unit = [0.0; 4];
                unit[u] = 1.0;
                let v: Vec<f64> = xi
                    .chunks(4)
                    .flat_map(|c| quaternion_mul(&[c[0], c[1], c[2], c[3]], &unit))
                    .collect();
                out.push(v);
            }
            out
        }
        Family::Octonionic => {
            let a = octonion_from(&xi[..8]);
            let b = octonion_from(&xi[8..]);
            // the fibre is {(m y, y)} with m = a b⁻¹, or {(x, m′ x)} with m′ = b a⁻¹
            let b_dominant = octonion_norm2(&b) >= octonion_norm2(&a);
            let m = if b_dominant {
                octonion_mul(&a, &octonion_inv(&b))
            } else {
                octonion_mul(&b, &octonion_inv(&a))
            };
            let scale = 1.0 / (1.0 + octonion_norm2(&m)).sqrt();
            (0..8)
                .map(|l| {
                    let e = unit_octonion(l);
                    let me = octonion_mul(&m, &e);
                    let (first, second) = if b_dominant { (me, e) } else { (e, me) };
                    first.iter().chain(second.iter()).map(|v| v * scale).collect()
                })
                .collect()
        }
    })
}

/// `|∇_b f|²` from the ambient gradient `g`, given an orthonormal fibre basis.
pub fn horizontal_norm2_with_fibre(fibre: &[Vec<f64>], g: &[f64]) -> f64 {
    let total = norm2(g);
    let vertical: f64 = fibre.iter().map(|u| dot(u, g).powi(2)).sum();
    (total - vertical).max(0.0)
}

pub fn horizontal_norm2(case: &CaseId, xi: &[f64], g: &[f64]) -> Result<f64> {
    Ok(horizontal_norm2_with_fibre(&fibre_basis(case, xi)?, g))
}

/// `|∇_S f|²`, the full tangential part of the ambient gradient.
pub fn tangential_norm2(xi: &[f64], g: &[f64]) -> f64 {
    (norm2(g) - dot(xi, g).powi(2)).max(0.0)
}

/// Orthonormal basis of the horizontal subspace at a point.
#[derive(Debug, Clone)]
pub struct HorizontalFrame {
    pub base: SpherePoint,
    /// Unit tangent vectors spanning the vertical directions (empty for the real case).
    pub vertical: Vec<Vec<f64>>,
    pub basis: Vec<Vec<f64>>,
}

impl HorizontalFrame {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Orthogonal projection of an ambient vector onto the frame span.
    pub fn project(&self, g: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; g.len()];
        for h in &self.basis {
            let c = dot(h, g);
            out.iter_mut().zip(h).for_each(|(o, hi)| *o += c * hi);
        }
        out
    }
}

// Gram–Schmidt (applied twice) of `v` against an orthonormal list.
fn orthogonalize(v: &mut [f64], against: &[Vec<f64>]) {
    for _ in 0..2 {
        for u in against {
            let c = dot(u, v);
            v.iter_mut().zip(u).for_each(|(a, b)| *a -= c * b);
        }
    }
}

// Extend `basis` by vectors from `candidates`, largest residual first, until it has `target` entries.
fn extend_pivoted(basis: &mut Vec<Vec<f64>>, mut candidates: Vec<Vec<f64>>, target: usize) {
    while basis.len() < target && !candidates.is_empty() {
        for c in candidates.iter_mut() {
            orthogonalize(c, basis);
        }
        let (best, _) = candidates
            .iter()
            .enumerate()
            .map(|(i, c)| (i, norm2(c)))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        let mut v = candidates.swap_remove(best);
        let r = norm2(&v).sqrt();
        if r < 1e-8 {
            break;
        }
        v.iter_mut().for_each(|a| *a /= r);
        basis.push(v);
    }
}

pub fn horizontal_frame(case: &CaseId, xi: &SpherePoint) -> Result<HorizontalFrame> {
    horizontal_frame_seeded(case, xi, 0)
}

/// As [`horizontal_frame`], completing the basis from Gaussian vectors drawn with `seed`.
pub fn horizontal_frame_seeded(case: &CaseId, xi: &SpherePoint, seed: u64) -> Result<HorizontalFrame> {
    let x = xi.coords();
    let fibre = fibre_basis(case, x)?;
    let dim = x.len();
    let vertical_count = fibre.len() - 1;

    let mut span = vec![x.to_vec()];
    extend_pivoted(&mut span, fibre, vertical_count + 1);
    if span.len() != vertical_count + 1 {
        return Err(Error::domain("degenerate fibre at this point"));
    }
    let vertical = span[1..].to_vec();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = dim;
    let mut basis_all = span;
    while basis_all.len() < target {
        let mut v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        orthogonalize(&mut v, &basis_all);
        let r = norm2(&v).sqrt();
        if r > 1e-3 {
            v.iter_mut().for_each(|a| *a /= r);
            basis_all.push(v);
        }
    }
    let basis = basis_all.split_off(vertical_count + 1);
    Ok(HorizontalFrame {
        base: xi.clone(),
        vertical,
        basis,
    })
}

/// Ambient gradient of `f` projected onto the horizontal subspace at ξ.
pub fn horizontal_gradient(case: &CaseId, f: &MultiPoly<Rational>, xi: &SpherePoint) -> Result<Vec<f64>> {
    if f.nvars() != xi.ambient_dim() {
        return Err(Error::structural("polynomial and point dimensions differ"));
    }
    let frame = horizontal_frame(case, xi)?;
    let np = NumPoly::new(f);
    let mut g = vec![0.0; f.nvars()];
    let mut gi = vec![0.0; f.nvars()];
    np.eval_with_gradient(xi.coords(), &mut g, &mut gi);
    Ok(frame.project(&g))
}
