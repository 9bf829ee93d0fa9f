use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
#[cfg(test)]
use crate::quadrature::heisenberg_mu_mass;
use crate::spectra::ln_gamma_pos;

/// `∫_{ℝ^m} (1 + (|x|²+|y|²)/n)^{−N} dy = (nπ)^{m/2} Γ(N−m/2)/Γ(N) · (1+|x|²/n)^{−N+m/2}`.
pub fn lemma_closed_form(m: u32, big_n: f64, n: f64, x_norm_sq: f64) -> Result<f64> {
    Ok(ln_lemma_closed_form(m, big_n, n, x_norm_sq)?.exp())
}

pub fn ln_lemma_closed_form(m: u32, big_n: f64, n: f64, x_norm_sq: f64) -> Result<f64> {
    let mf = m as f64;
    if !(2.0 * big_n > mf) {
        return Err(Error::domain(format!("the integral diverges unless 2N > m (N={big_n}, m={m})")));
    }
    if !(n > 0.0) || !(x_norm_sq >= 0.0) {
        return Err(Error::domain("need n > 0 and |x|^2 >= 0"));
    }
    Ok(0.5 * mf * (n * PI).ln() + ln_gamma_pos(big_n - 0.5 * mf) - ln_gamma_pos(big_n)
        + (0.5 * mf - big_n) * (x_norm_sq / n).ln_1p())
}

/// The normalizing constants of the real-case projection, stored as logarithms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LimitConstants {
    pub n: u32,
    pub k: u32,
    pub ln_c_prime: f64,
    pub ln_d: f64,
    pub ln_d_prime: f64,
    pub ln_d_tilde: f64,
    pub ln_d_tilde_prime: f64,
}

impl LimitConstants {
    pub fn c_prime(&self) -> f64 {
        self.ln_c_prime.exp()
    }

    pub fn d(&self) -> f64 {
        self.ln_d.exp()
    }

    pub fn d_prime(&self) -> f64 {
        self.ln_d_prime.exp()
    }

    pub fn d_tilde(&self) -> f64 {
        self.ln_d_tilde.exp()
    }

    pub fn d_tilde_prime(&self) -> f64 {
        self.ln_d_tilde_prime.exp()
    }

    /// `d′_{n,k}` from its own closed form `(nπ)^{−k/2} Γ((n+k)/2)/Γ(n/2)`.
    pub fn ln_d_prime_direct(&self) -> f64 {
        let (n, k) = (self.n as f64, self.k as f64);
        -0.5 * k * (n * PI).ln() + ln_gamma_pos(0.5 * (n + k)) - ln_gamma_pos(0.5 * n)
    }
}

/// `c′ₙ, d_{n,k}, d′_{n,k} = c′ₙ d_{n,k}, d̃_{n,k}, d̃′_{n,k} = c′ₙ d̃_{n,k}` with `m = n − k`.
pub fn limit_constants(n: u32, k: u32) -> Result<LimitConstants> {
    if k == 0 || n <= k || n < 3 || n + k < 5 {
        return Err(Error::domain(format!(
            "need n > k >= 1, n >= 3 and n + k >= 5 for positive Gamma arguments (n={n}, k={k})"
        )));
    }
    let (nf, kf) = (n as f64, k as f64);
    let mf = nf - kf;
    let lnp = (nf * PI).ln();
    let ln_c_prime = -0.5 * nf * lnp + ln_gamma_pos(nf) - ln_gamma_pos(0.5 * nf);
    let ln_d = 0.5 * mf * lnp + ln_gamma_pos(0.5 * (nf + kf)) - ln_gamma_pos(nf);
    let ln_d_tilde = 0.5 * mf * lnp + ln_gamma_pos(0.5 * (nf + kf) - 2.0) - ln_gamma_pos(nf - 2.0);
    Ok(LimitConstants {
        n,
        k,
        ln_c_prime,
        ln_d,
        ln_d_prime: ln_c_prime + ln_d,
        ln_d_tilde,
        ln_d_tilde_prime: ln_c_prime + ln_d_tilde,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticsRow {
    pub n: u32,
    /// `d′_{n,k} (2π)^{k/2} − 1`
    pub d_prime_deviation: f64,
    /// `(d̃′_{n,k}/4) (2π)^{k/2} − 1`
    pub d_tilde_prime_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticsTable {
    pub k: u32,
    pub rows: Vec<AsymptoticsRow>,
    /// `n · |deviation|` at the largest `n`.
    pub fit_d_prime: f64,
    pub fit_d_tilde_prime: f64,
}

/// Deviations of the normalized constants from their Gaussian limits along `n_list`.
pub fn asymptotics_check(k: u32, n_list: &[u32]) -> Result<AsymptoticsTable> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("n_list must be strictly increasing"));
    }
    let half_log = 0.5 * k as f64 * (2.0 * PI).ln();
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let c = limit_constants(n, k)?;
        rows.push(AsymptoticsRow {
            n,
            d_prime_deviation: (c.ln_d_prime + half_log).exp_m1(),
            d_tilde_prime_deviation: (c.ln_d_tilde_prime - 4f64.ln() + half_log).exp_m1(),
        });
    }
    let (fit_d_prime, fit_d_tilde_prime) = rows
        .last()
        .map(|r| (r.n as f64 * r.d_prime_deviation.abs(), r.n as f64 * r.d_tilde_prime_deviation.abs()))
        .unwrap_or((0.0, 0.0));
    Ok(AsymptoticsTable {
        k,
        rows,
        fit_d_prime,
        fit_d_tilde_prime,
    })
}

/// `(1 + a/n)^{−n} − e^{−a}`.
pub fn exp_limit_deviation(a: f64, n: f64) -> f64 {
    (-n * (a / n).ln_1p()).exp() - (-a).exp()
}

/// `c′ₙ = (2n)^{−n−1} π^{−n−1/2} Γ(2n+1)/Γ(n+1/2)`, normalizing `Q_n^{−n−1} dz dt`.
pub fn heisenberg_constant(n: u32) -> Result<f64> {
    Ok(ln_heisenberg_constant(n)?.exp())
}

pub fn ln_heisenberg_constant(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("Heisenberg dimension n must be at least 1"));
    }
    let nf = n as f64;
    Ok(-(nf + 1.0) * (2.0 * nf).ln() - (nf + 0.5) * PI.ln() + ln_gamma_pos(2.0 * nf + 1.0) - ln_gamma_pos(nf + 0.5))
}

#[cfg(test)]
/// Independent route: the reciprocal of the Cayley-transported sphere volume.
pub(crate) fn heisenberg_constant_from_mass(n: u32) -> f64 {
    1.0 / heisenberg_mu_mass(n as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_heisenberg_mu, integrate_weighted_rn, QuadratureKind, QuadratureSpec};

    #[test]
    fn lemma_examples() {
        assert!((lemma_closed_form(1, 1.0, 1.0, 0.0).unwrap() - PI).abs() < 1e-14);
        assert!(lemma_closed_form(2, 1.0, 1.0, 0.0).is_err());
        let ar = QuadratureSpec::new(QuadratureKind::AdaptiveRadial, 6, 0).unwrap();
        for m in 1..=3u32 {
            for big_n in 1..=6 {
                let big_n = big_n as f64;
                if 2.0 * big_n <= m as f64 {
                    continue;
                }
                for x2 in [0.0, 0.5, 2.0, 4.0] {
                    let n = 3.0;
                    // the y-integral with |x|² folded into the weight
                    let q = integrate_weighted_rn(
                        m as usize,
                        n + x2,
                        -big_n,
                        &|_: &[f64]| 1.0,
                        &ar,
                    )
                    .unwrap()
                    .value
                        * ((n + x2) / n).powf(-big_n);
                    let want = lemma_closed_form(m, big_n, n, x2).unwrap();
                    assert!((q - want).abs() < 1e-8 * want, "m={m} N={big_n} x2={x2}: {q} vs {want}");
                }
            }
        }
    }

    #[test]
    fn lemma_decay_slope() {
        let (m, big_n, n) = (2, 3.0, 2.0);
        let a = ln_lemma_closed_form(m, big_n, n, 1e6).unwrap();
        let b = ln_lemma_closed_form(m, big_n, n, 1e8).unwrap();
        let slope = (b - a) / (1e8f64.ln() - 1e6f64.ln());
        assert!((slope - (-big_n + 1.0)).abs() < 1e-5, "{slope}");
    }

    #[test]
    fn constants_products_and_domain() {
        for n in 5..40 {
            for k in 1..4 {
                let c = limit_constants(n, k).unwrap();
                assert!((c.ln_d_prime - c.ln_d_prime_direct()).abs() < 1e-10 * c.ln_d_prime.abs().max(1.0));
                assert_eq!(c.ln_d_tilde_prime, c.ln_c_prime + c.ln_d_tilde);
                for v in [c.c_prime(), c.d(), c.d_prime(), c.d_tilde(), c.d_tilde_prime()] {
                    assert!(v > 0.0 && v.is_finite());
                }
            }
        }
        assert!(limit_constants(2, 2).is_err());
        assert!(limit_constants(3, 1).is_err());
        assert!(limit_constants(4, 1).is_ok());
    }

    #[test]
    fn c_prime_normalizes() {
        let ar = QuadratureSpec::new(QuadratureKind::AdaptiveRadial, 4, 0).unwrap();
        for n in 1..=6u32 {
            let nf = n as f64;
            let mass = integrate_weighted_rn(n as usize, nf, -nf, &|_: &[f64]| 1.0, &ar);
            let ln_c = -0.5 * nf * (nf * PI).ln() + ln_gamma_pos(nf) - ln_gamma_pos(0.5 * nf);
            let v = mass.unwrap().value * ln_c.exp();
            assert!((v - 1.0).abs() < 5e-3, "n={n}: {v}");
        }
        for n in 4..=8u32 {
            for k in 1..=2 {
                if n + k < 5 {
                    continue;
                }
                let c = limit_constants(n, k).unwrap();
                let e = -(n as f64 + k as f64) / 2.0;
                let m = integrate_weighted_rn(k as usize, n as f64, e, &|_: &[f64]| 1.0, &ar).unwrap();
                assert!((m.value * c.d_prime() - 1.0).abs() < 5e-3);
            }
        }
    }

    #[test]
    fn asymptotics() {
        let t = asymptotics_check(1, &[10, 100, 1000, 1_000_000]).unwrap();
        let last = t.rows.last().unwrap();
        assert!(last.d_prime_deviation.abs() <= 1e-4 && last.d_tilde_prime_deviation.abs() <= 1e-4);
        for w in t.rows.windows(2) {
            assert!(w[1].d_prime_deviation.abs() < w[0].d_prime_deviation.abs());
            assert!(w[1].d_tilde_prime_deviation.abs() < w[0].d_tilde_prime_deviation.abs());
        }
        assert!(t.fit_d_prime < 1.0 && t.fit_d_tilde_prime < 10.0);
        // sign of each column is fixed along n for every k
        for k in 1..=3 {
            let t = asymptotics_check(k, &[10, 100, 1000, 10_000]).unwrap();
            // k = 2 makes the first column vanish up to rounding
            let sign = |v: f64| if v.abs() < 1e-9 { 0 } else { v.signum() as i32 };
            let s: Vec<i32> = t.rows.iter().map(|r| sign(r.d_prime_deviation)).collect();
            let s2: Vec<i32> = t.rows.iter().map(|r| sign(r.d_tilde_prime_deviation)).collect();
            assert!(s.windows(2).all(|w| w[0] == w[1]), "k={k}: {s:?}");
            assert!(s2.windows(2).all(|w| w[0] == w[1]), "k={k}: {s2:?}");
        }
        assert!(exp_limit_deviation(1.0, 1e6).abs() <= 1e-6);
        assert!(asymptotics_check(1, &[100, 10]).is_err());
    }

    #[test]
    fn heisenberg_constant_values() {
        assert!((heisenberg_constant(1).unwrap() - PI.powi(-2)).abs() < 1e-15);
        for n in 1..12 {
            let a = heisenberg_constant(n).unwrap();
            assert!((a - heisenberg_constant_from_mass(n)).abs() < 1e-12 * a);
        }
        let ar = QuadratureSpec::new(QuadratureKind::AdaptiveRadial, 4, 0).unwrap();
        for n in 1..=2u32 {
            let m = integrate_heisenberg_mu(n as usize, &|_: &[f64]| 1.0, &ar).unwrap();
            assert!((m.value * heisenberg_constant(n).unwrap() - 1.0).abs() < 5e-3);
        }
        let logs: Vec<f64> = (1..30).map(|n| ln_heisenberg_constant(n).unwrap()).collect();
        assert!(logs.windows(2).all(|w| w[1] < w[0]));
    }
}
