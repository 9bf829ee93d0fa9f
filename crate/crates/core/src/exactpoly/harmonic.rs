//! Spherical-harmonic decomposition of homogeneous polynomials.
//!
//! A homogeneous `p` of degree `k` in `D` variables splits uniquely as
//! `p = Σ_j |x|^{2j} H_{k-2j}` with each `H` harmonic. [`harmonic_projection`] recovers the
//! `H` by a triangular solve on the iterated Laplacians `Δ^i p`; [`harmonic_part`] uses the
//! closed-form series `H_k = Σ_j a_j |x|^{2j} Δ^j p` instead, and the two are checked
//! against each other in the tests.

use num_traits::{One, Zero};

use super::poly::{rat_int, Coefficient, MultiPoly, Rational};
use crate::error::{Error, Result};

/// Default caps keeping exact arithmetic bounded.
#[derive(Debug, Clone, Copy)]
pub struct PolyCaps {
    pub max_degree: u32,
    pub max_dims: usize,
}

impl Default for PolyCaps {
    fn default() -> Self {
        PolyCaps {
            max_degree: 12,
            max_dims: 16,
        }
    }
}

/// One piece `|x|^{2·r2_power} · harmonic` of a decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicComponent<C: Coefficient> {
    pub degree: u32,
    pub r2_power: u32,
    pub harmonic: MultiPoly<C>,
}

fn check_homogeneous<C: Coefficient>(
    p: &MultiPoly<C>,
    idx: &[usize],
    caps: PolyCaps,
) -> Result<u32> {
    let k = p
        .homogeneous_degree_in(idx)
        .ok_or_else(|| Error::domain("harmonic projection needs a homogeneous polynomial"))?;
    if k > caps.max_degree || idx.len() > caps.max_dims {
        return Err(Error::domain(format!(
            "degree {k} / {} dims exceeds caps {:?}",
            idx.len(),
            caps
        )));
    }
    Ok(k)
}

/// `Δ(|x|^{2s} H) = c · |x|^{2s-2} H` for harmonic `H` of degree `m`; returns `c`.
fn lap_factor(s: u32, m: u32, dims: usize) -> i64 {
    2 * s as i64 * (2 * s as i64 + 2 * m as i64 + dims as i64 - 2)
}

pub fn harmonic_projection<C: Coefficient, S: AsRef<str>>(
    p: &MultiPoly<C>,
    dims: &[S],
) -> Result<Vec<HarmonicComponent<C>>> {
    harmonic_projection_with_caps(p, dims, PolyCaps::default())
}

pub fn harmonic_projection_with_caps<C: Coefficient, S: AsRef<str>>(
    p: &MultiPoly<C>,
    dims: &[S],
    caps: PolyCaps,
) -> Result<Vec<HarmonicComponent<C>>> {
    let idx = p.indices(dims)?;
    let k = check_homogeneous(p, &idx, caps)?;
    let d = idx.len();
    if p.is_zero() {
        return Ok(Vec::new());
    }
    let half = k / 2;
    let r2 = p.radius_squared_like(&idx);
    let mut r2_pows = vec![MultiPoly::one(p.vars())];
    for _ in 0..half {
        let next = r2_pows.last().unwrap().try_mul(&r2)?;
        r2_pows.push(next);
    }

    let mut laps = vec![p.clone()];
    for _ in 0..half {
        let next = laps.last().unwrap().laplacian_indices(&idx);
        laps.push(next);
    }

    // coeff(i, j): Δ^i (|x|^{2j} H_{k-2j}) = coeff · |x|^{2(j-i)} H_{k-2j}
    let coeff = |i: u32, j: u32| -> Rational {
        let m = k - 2 * j;
        let mut c = Rational::one();
        for l in 0..i {
            c *= rat_int(lap_factor(j - l, m, d));
        }
        c
    };

    // h[j] = H_{k-2j}
    let mut h: Vec<Option<MultiPoly<C>>> = vec![None; half as usize + 1];
    for i in (0..=half).rev() {
        let mut rest = laps[i as usize].clone();
        for j in (i + 1)..=half {
            let hj = h[j as usize].as_ref().unwrap();
            let term = hj
                .try_mul(&r2_pows[(j - i) as usize])?
                .scale_rational(&coeff(i, j));
            rest = rest.try_sub(&term)?;
        }
        h[i as usize] = Some(rest.div_rational(&coeff(i, i)));
    }

    Ok(h.into_iter()
        .enumerate()
        .filter_map(|(j, hj)| {
            let hj = hj.unwrap();
            (!hj.is_zero()).then(|| HarmonicComponent {
                degree: k - 2 * j as u32,
                r2_power: j as u32,
                harmonic: hj,
            })
        })
        .collect())
}

/// `Σ_j |x|^{2j} H_{k-2j}` for the components of a decomposition.
pub fn reassemble<C: Coefficient>(
    parts: &[HarmonicComponent<C>],
    like: &MultiPoly<C>,
    idx: &[usize],
) -> Result<MultiPoly<C>> {
    let r2 = like.radius_squared_like(idx);
    let mut out = MultiPoly::zero(like.vars());
    for c in parts {
        out = out.try_add(&c.harmonic.try_mul(&r2.pow(c.r2_power))?)?;
    }
    Ok(out)
}

/// Coefficients `a_j` of `H_k = Σ_j a_j |x|^{2j} Δ^j p`.
fn series_coefficients(k: u32, dims: usize) -> Vec<Rational> {
    let mut a = vec![Rational::one()];
    for j in 0..k / 2 {
        let denom = rat_int(2 * (j as i64 + 1) * (dims as i64 + 2 * k as i64 - 4 - 2 * j as i64));
        let next = -(a.last().unwrap() / denom);
        a.push(next);
    }
    a
}

/// The top-degree harmonic component of `p` via the closed-form series.
pub fn harmonic_part<C: Coefficient, S: AsRef<str>>(
    p: &MultiPoly<C>,
    dims: &[S],
) -> Result<MultiPoly<C>> {
    let idx = p.indices(dims)?;
    let k = check_homogeneous(p, &idx, PolyCaps::default())?;
    let a = series_coefficients(k, idx.len());
    let r2 = p.radius_squared_like(&idx);
    let mut lap = p.clone();
    let mut r2_pow = MultiPoly::one(p.vars());
    let mut out = MultiPoly::zero(p.vars());
    for aj in &a {
        out = out.try_add(&lap.try_mul(&r2_pow)?.scale_rational(aj))?;
        lap = lap.laplacian_indices(&idx);
        r2_pow = r2_pow.try_mul(&r2)?;
    }
    Ok(out)
}

/// A polynomial agreeing with [`harmonic_part`] on the unit sphere of `dims`.
///
/// Drops the `|x|^{2j}` factors, so it is much sparser; values and tangential
/// derivatives on the sphere are unchanged.
pub fn harmonic_part_on_sphere<C: Coefficient, S: AsRef<str>>(
    p: &MultiPoly<C>,
    dims: &[S],
) -> Result<MultiPoly<C>> {
    let idx = p.indices(dims)?;
    let k = check_homogeneous(p, &idx, PolyCaps::default())?;
    let a = series_coefficients(k, idx.len());
    let mut lap = p.clone();
    let mut out = MultiPoly::zero(p.vars());
    for aj in &a {
        out = out.try_add(&lap.scale_rational(aj))?;
        lap = lap.laplacian_indices(&idx);
    }
    Ok(out)
}

/// Mean of `x^α` over the unit sphere in ℝ^D with its normalized invariant measure.
///
/// Zero unless every exponent is even; otherwise `Π (α_i - 1)!! / (D (D+2) ··· (D + |α| - 2))`.
pub fn sphere_moment(exps: &[u32]) -> Rational {
    if exps.iter().any(|e| e % 2 == 1) {
        return Rational::zero();
    }
    let dims = exps.len() as i64;
    let mut num = Rational::one();
    for &e in exps {
        let mut j = e as i64 - 1;
        while j > 0 {
            num *= rat_int(j);
            j -= 2;
        }
    }
    let half: i64 = exps.iter().map(|&e| e as i64).sum::<i64>() / 2;
    let mut den = Rational::one();
    for l in 0..half {
        den *= rat_int(dims + 2 * l);
    }
    num / den
}

/// Exact mean of a polynomial over the unit sphere of all its variables.
pub fn sphere_mean<C: Coefficient>(p: &MultiPoly<C>) -> C {
    let mut acc = C::zero();
    for (e, c) in p.terms() {
        let m = sphere_moment(e);
        if !m.is_zero() {
            acc = acc + c.clone() * C::from_rational(m);
        }
    }
    acc
}
