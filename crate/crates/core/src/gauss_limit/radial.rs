use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::constants::ln_heisenberg_constant;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_de_with, DeDomain};
use crate::spectra::ln_gamma_pos;

/// Parameters of the inner `v`-integral over ℂ^m at a point `(u, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialIntegralParams {
    pub big_n: f64,
    pub m: u32,
    pub n: f64,
    pub u_norm_sq: f64,
    pub t: f64,
}

impl RadialIntegralParams {
    pub fn new(big_n: f64, m: u32, n: f64, u_norm_sq: f64, t: f64) -> Result<Self> {
        if m == 0 || !(n > 0.0) || !(u_norm_sq >= 0.0) || !t.is_finite() {
            return Err(Error::domain("need m >= 1, n > 0, |u|^2 >= 0 and finite t"));
        }
        if !(2.0 * big_n > m as f64) {
            return Err(Error::domain(format!("the v-integral diverges unless 2N > m (N={big_n}, m={m})")));
        }
        Ok(RadialIntegralParams {
            big_n,
            m,
            n,
            u_norm_sq,
            t,
        })
    }

    /// `A = 1 + |u|²/(2n)`
    pub fn a(&self) -> f64 {
        1.0 + self.u_norm_sq / (2.0 * self.n)
    }

    /// `C = t²/(2n)²`
    pub fn c(&self) -> f64 {
        (self.t / (2.0 * self.n)).powi(2)
    }

    /// `D = C/A²`
    pub fn d(&self) -> f64 {
        self.c() / self.a().powi(2)
    }

    /// `β = (1+D)^{−1/2}`
    pub fn beta(&self) -> f64 {
        1.0 / (1.0 + self.d()).sqrt()
    }
}

/// Both evaluations of the `v`-integral, with their logarithms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialIntegral {
    pub direct: f64,
    pub rewritten: f64,
    pub ln_direct: f64,
    pub ln_rewritten: f64,
}

/// `ln ∫_ℝ e^{φ(s)} ds` for concave `φ`: locate the peak, then a trapezoid rule at a fraction of
/// the peak width, walking out until the integrand drops by `e^{−60}`.
pub(crate) fn ln_integral_concave(phi: impl Fn(f64) -> f64, guess: f64) -> Result<f64> {
    let (mut lo, mut mid, mut hi) = (guess - 1.0, guess, guess + 1.0);
    let mut step = 1.0;
    for _ in 0..200 {
        if phi(hi) > phi(mid) {
            lo = mid;
            mid = hi;
            step *= 2.0;
            hi = mid + step;
        } else if phi(lo) > phi(mid) {
            hi = mid;
            mid = lo;
            step *= 2.0;
            lo = mid - step;
        } else {
            break;
        }
    }
    // golden section on [lo, hi]
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (phi(x1), phi(x2));
    while b - a > 1e-10 * (1.0 + a.abs().max(b.abs())) {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = phi(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = phi(x1);
        }
    }
    let s0 = 0.5 * (a + b);
    let top = phi(s0);
    if !top.is_finite() {
        return Err(Error::NonFinite { point: vec![s0] });
    }
    let h = 1e-4 * (1.0 + s0.abs());
    let curv = (phi(s0 + h) - 2.0 * top + phi(s0 - h)) / (h * h);
    let width = if curv < 0.0 { (-curv).sqrt().recip().min(1.0) } else { 1.0 };
    let dx = width / 8.0;
    let mut sum = 1.0;
    for dir in [1.0, -1.0] {
        let mut i = 1;
        loop {
            let v = phi(s0 + dir * i as f64 * dx) - top;
            if !v.is_finite() && v != f64::NEG_INFINITY {
                return Err(Error::NonFinite { point: vec![s0 + dir * i as f64 * dx] });
            }
            if v < -60.0 {
                break;
            }
            sum += v.exp();
            i += 1;
            if i > 2_000_000 {
                return Err(Error::NoConvergence("log-concave integral did not decay".into()));
            }
        }
    }
    Ok(top + (sum * dx).ln())
}

/// `ln |S^{2m−1}| = ln(2π^m/Γ(m))`
fn ln_area(m: u32) -> f64 {
    2f64.ln() + m as f64 * PI.ln() - ln_gamma_pos(m as f64)
}

/// `ln ∫_{ℂ^m} |v|^{2j} Q^{−N} dv` by the radial integral in `ρ = e^s`.
fn ln_direct(p: &RadialIntegralParams, j: u32) -> Result<f64> {
    let (a, c, two_n, nn) = (p.a(), p.c(), 2.0 * p.n, p.big_n);
    let power = 2.0 * (p.m + j) as f64;
    let phi = |s: f64| {
        let q = a + (2.0 * s).exp() / two_n;
        -nn * (q * q + c).ln() + power * s
    };
    let guess = 0.5 * (two_n * a).ln();
    Ok(ln_area(p.m) + ln_integral_concave(phi, guess)?)
}

/// `ln ∫_{ℂ^m} |v|^{2j} Q^{−N} dv` through the `x`-form with `β`.
fn ln_rewritten(p: &RadialIntegralParams, j: u32) -> Result<f64> {
    let (a, d, beta, nn) = (p.a(), p.d(), p.beta(), p.big_n);
    let (m, jf) = (p.m as f64, j as f64);
    if !(2.0 * nn > m + jf) {
        return Err(Error::domain("the moment diverges"));
    }
    let phi = |s: f64| {
        let e = s.exp();
        -nn * (e * e + 2.0 * beta * e + 1.0).ln() + (m + jf) * s
    };
    let ln_x = ln_integral_concave(phi, 0.0)?;
    // |v|² = 2nA r², r² = √(1+D) x
    Ok((m + jf) * (2.0 * p.n).ln() + (m + jf - 2.0 * nn) * a.ln() + ln_area(p.m) - 2f64.ln()
        + (0.5 * (m + jf) - nn) * d.ln_1p()
        + ln_x)
}

/// `∫_{ℂ^m} ((1+(|u|²+|v|²)/(2n))² + t²/(4n²))^{−N} dv`, directly and in the `β` form.
pub fn radial_integral_i(params: &RadialIntegralParams) -> Result<RadialIntegral> {
    let p = RadialIntegralParams::new(params.big_n, params.m, params.n, params.u_norm_sq, params.t)?;
    let ln_direct = ln_direct(&p, 0)?;
    let ln_rewritten = ln_rewritten(&p, 0)?;
    Ok(RadialIntegral {
        direct: ln_direct.exp(),
        rewritten: ln_rewritten.exp(),
        ln_direct,
        ln_rewritten,
    })
}

/// `∫₀^∞ ((1+r²)² + D)^{−N} r^{2m−1} dr` from the `x`-form.
pub fn radial_factor(big_n: f64, m: u32, d: f64) -> Result<f64> {
    if !(2.0 * big_n > m as f64) || !(d >= 0.0) {
        return Err(Error::domain("need 2N > m and D >= 0"));
    }
    let beta = 1.0 / (1.0 + d).sqrt();
    let mf = m as f64;
    let ln_x = ln_integral_concave(
        |s: f64| {
            let e = s.exp();
            -big_n * (e * e + 2.0 * beta * e + 1.0).ln() + mf * s
        },
        0.0,
    )?;
    Ok((ln_x - 2f64.ln() + (0.5 * mf - big_n) * d.ln_1p()).exp())
}

/// Which projected Heisenberg weight a row describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExplorationMeasure {
    /// `Q^{−n−1}` integrated over `v`.
    Nu,
    /// `Q^{−n}` integrated over `v`.
    Rho,
    /// `|v|² Q^{−n}` integrated over `v`.
    RhoTilde,
}

impl ExplorationMeasure {
    fn exponent_and_moment(self, n: f64) -> (f64, u32) {
        match self {
            ExplorationMeasure::Nu => (n + 1.0, 0),
            ExplorationMeasure::Rho => (n, 0),
            ExplorationMeasure::RhoTilde => (n, 1),
        }
    }
}

/// `ln (c′ₙ ∫_{ℂ^m} |v|^{2j} Q^{−N} dv)` at `(u, t) ∈ ℂ^k × ℝ`, `m = n − k`.
pub fn ln_projected_weight(measure: ExplorationMeasure, n: u32, k: u32, u_norm_sq: f64, t: f64) -> Result<f64> {
    if k == 0 || k >= n {
        return Err(Error::domain(format!("need 1 <= k < n (n={n}, k={k})")));
    }
    let (big_n, j) = measure.exponent_and_moment(n as f64);
    let p = RadialIntegralParams::new(big_n, n - k, n as f64, u_norm_sq, t)?;
    Ok(ln_heisenberg_constant(n)? + ln_rewritten(&p, j)?)
}

/// One line of the finite-`n` exploration of the projected weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExplorationRow {
    pub measure: ExplorationMeasure,
    pub n: u32,
    pub k: u32,
    /// `max |w(u,0)/w(0,0) · e^{|u|²/2} − 1|` over `|u|² ∈ {0.25, 1, 2, 4}`.
    pub u_profile_deviation: f64,
    /// `∫t² w(0,t)dt / ∫w(0,t)dt` divided by `8n`.
    pub t_width_ratio: f64,
    /// `∫_{ℂ^k×ℝ} w`, when requested.
    pub normalization: Option<f64>,
    /// `normalization / √n`.
    pub scaled_normalization: Option<f64>,
}

const PROFILE_GRID: [f64; 4] = [0.25, 1.0, 2.0, 4.0];
const TABLE_TOL: f64 = 1e-9;

/// `∫_ℝ t^power w(u, t) dt / w(0, 0)` with `ln0 = ln w(0, 0)`.
fn t_moment(measure: ExplorationMeasure, n: u32, k: u32, u2: f64, ln0: f64, power: i32) -> Result<f64> {
    let scale = (n as f64).sqrt();
    let r = integrate_de_with(
        |tau| {
            let t = scale * tau;
            Ok((ln_projected_weight(measure, n, k, u2, t)? - ln0).exp() * t.powi(power))
        },
        DeDomain::HalfLine,
        TABLE_TOL,
        4.5,
        8,
    )?;
    // even in t
    Ok(2.0 * scale * r.value)
}

/// Profiles of the projected weight for one `(measure, n, k)`; the total mass over ℂ^k × ℝ is
/// computed only with `with_normalization` (a nested quadrature).
pub fn exploration_row(measure: ExplorationMeasure, n: u32, k: u32, with_normalization: bool) -> Result<ExplorationRow> {
    let ln0 = ln_projected_weight(measure, n, k, 0.0, 0.0)?;
    let mut dev: f64 = 0.0;
    for u2 in PROFILE_GRID {
        let r = ln_projected_weight(measure, n, k, u2, 0.0)? - ln0 + 0.5 * u2;
        dev = dev.max(r.exp_m1().abs());
    }
    let m0 = t_moment(measure, n, k, 0.0, ln0, 0)?;
    let m2 = t_moment(measure, n, k, 0.0, ln0, 2)?;
    let t_width_ratio = m2 / m0 / (8.0 * n as f64);
    let normalization = if with_normalization {
        let kf = k as f64;
        let r = integrate_de_with(
            |s| {
                Ok(t_moment(measure, n, k, s * s, ln0, 0)? * s.powf(2.0 * kf - 1.0))
            },
            DeDomain::HalfLine,
            TABLE_TOL,
            4.5,
            8,
        )?;
        Some(ln0.exp() * ln_area(k).exp() * r.value)
    } else {
        None
    };
    Ok(ExplorationRow {
        measure,
        n,
        k,
        u_profile_deviation: dev,
        t_width_ratio,
        normalization,
        scaled_normalization: normalization.map(|v| v / (n as f64).sqrt()),
    })
}

/// Rows for every measure and every `n` in `n_list`.
pub fn exploration_table(k: u32, n_list: &[u32], with_normalization: bool) -> Result<Vec<ExplorationRow>> {
    let mut rows = Vec::new();
    for &n in n_list {
        for m in [ExplorationMeasure::Nu, ExplorationMeasure::Rho, ExplorationMeasure::RhoTilde] {
            rows.push(exploration_row(m, n, k, with_normalization)?);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_heisenberg_weight, QuadratureKind, QuadratureSpec};

    #[test]
    fn beta_identity_at_t0() {
        for m in 1..=4u32 {
            for big_n in [1.0, 1.5, 2.0, 3.0, 8.0, 40.0] {
                if 2.0 * big_n <= m as f64 {
                    continue;
                }
                let mf = m as f64;
                let want = (ln_gamma_pos(mf) + ln_gamma_pos(2.0 * big_n - mf) - ln_gamma_pos(2.0 * big_n)).exp() / 2.0;
                let got = radial_factor(big_n, m, 0.0).unwrap();
                assert!((got - want).abs() < 1e-10 * want, "m={m} N={big_n}: {got} vs {want}");
            }
        }
        let p = RadialIntegralParams::new(2.0, 1, 3.0, 1.0, 0.0).unwrap();
        assert_eq!(p.d(), 0.0);
        assert_eq!(p.beta(), 1.0);
        assert!(RadialIntegralParams::new(1.0, 2, 3.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn direct_and_rewritten_agree() {
        for m in 1..=3u32 {
            for big_n in 1..=8 {
                let big_n = big_n as f64;
                if 2.0 * big_n <= m as f64 {
                    continue;
                }
                for u2 in [0.0, 0.7, 3.0] {
                    for t in [0.0, 0.5, -2.0, 10.0] {
                        let p = RadialIntegralParams::new(big_n, m, 3.0, u2, t).unwrap();
                        let r = radial_integral_i(&p).unwrap();
                        assert!((r.direct - r.rewritten).abs() < 1e-6 * r.direct, "{p:?}: {r:?}");
                    }
                }
            }
        }
        // large N stays finite in log form
        let p = RadialIntegralParams::new(10_001.0, 9_999, 10_000.0, 1.0, 3.0).unwrap();
        let r = radial_integral_i(&p).unwrap();
        assert!((r.ln_direct - r.ln_rewritten).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn radial_factor_against_quadrature() {
        for d in [0.0, 0.3, 4.0] {
            let q = crate::quadrature::integrate_de(
                |r: f64| Ok(((1.0 + r * r).powi(2) + d).powf(-2.5) * r.powi(3)),
                DeDomain::HalfLine,
                1e-13,
            )
            .unwrap();
            let v = radial_factor(2.5, 2, d).unwrap();
            assert!((q.value - v).abs() < 1e-10 * v);
        }
    }

    #[test]
    fn weights_integrate_to_the_full_measure() {
        // ν at n = 2, k = 1 carries all of c′ μ₂, total mass 1
        let row = exploration_row(ExplorationMeasure::Nu, 2, 1, true).unwrap();
        assert!((row.normalization.unwrap() - 1.0).abs() < 1e-6, "{row:?}");
        // ρ at n = 3 against the full Q^{−3} integral
        let ar = QuadratureSpec::new(QuadratureKind::AdaptiveRadial, 4, 0).unwrap();
        let full = integrate_heisenberg_weight(3, -3.0, &|_: &[f64]| 1.0, &ar).unwrap().value;
        let row = exploration_row(ExplorationMeasure::Rho, 3, 1, true).unwrap();
        let c = ln_heisenberg_constant(3).unwrap().exp();
        assert!((row.normalization.unwrap() - c * full).abs() < 1e-6 * c * full, "{row:?}");
    }

    #[test]
    fn gaussian_u_profile() {
        for m in [ExplorationMeasure::Nu, ExplorationMeasure::Rho, ExplorationMeasure::RhoTilde] {
            let row = exploration_row(m, 10_000, 1, false).unwrap();
            assert!(row.u_profile_deviation < 0.01, "{row:?}");
            assert!(row.t_width_ratio.is_finite() && row.t_width_ratio > 0.0);
        }
    }
}
