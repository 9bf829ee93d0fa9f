use super::function::BandLimitedFunction;
use super::report::{InequalityReport, ReportMetadata};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_joint, Measure, QuadratureSpec};
use crate::spectra::{ln_gamma_pos, Family};

fn check_p(p: f64) -> Result<f64> {
    if !(p > 1.0 && p < 2.0) {
        return Err(Error::domain(format!("need 1 < p < 2, got {p}")));
    }
    Ok(p / (p - 1.0))
}

/// Multiplier of the HLS intertwiner on degree-`k` harmonics of Sⁿ, normalized so `γ₀ = 1`:
/// `Γ(n/p) Γ(n/p′ + k) / (Γ(n/p′) Γ(n/p + k))`.
pub fn gamma_k(n: u32, p: f64, k: u32) -> Result<f64> {
    let pp = check_p(p)?;
    if n == 0 {
        return Err(Error::domain("sphere dimension must be at least 1"));
    }
    if k == 0 {
        return Ok(1.0);
    }
    let (a, b) = (n as f64 / p, n as f64 / pp);
    Ok((ln_gamma_pos(a) + ln_gamma_pos(b + k as f64) - ln_gamma_pos(b) - ln_gamma_pos(a + k as f64)).exp())
}

/// `K_p = π^{n/p′} Γ(n/p − n/2)/Γ(n/p) · (Γ(n/2)/Γ(n))^{(p−2)/p}`.
pub fn hls_constant(n: u32, p: f64) -> Result<f64> {
    let pp = check_p(p)?;
    if n == 0 {
        return Err(Error::domain("sphere dimension must be at least 1"));
    }
    let nf = n as f64;
    let arg = nf / p - nf / 2.0;
    if !(arg > 0.0) {
        return Err(Error::domain(format!("Γ({arg}) is at or past its pole")));
    }
    let log = (nf / pp) * std::f64::consts::PI.ln() + ln_gamma_pos(arg) - ln_gamma_pos(nf / p)
        + ((p - 2.0) / p) * (ln_gamma_pos(nf / 2.0) - ln_gamma_pos(nf));
    Ok(log.exp())
}

/// Multiplies each degree-`k` component of a real-case function by `γ_k`.
pub fn intertwiner_multiplier_apply(f: &BandLimitedFunction, p: f64) -> Result<BandLimitedFunction> {
    let case = *f.case();
    if case.family != Family::Real {
        return Err(Error::domain(format!("the multiplier is defined on real spheres, not {case}")));
    }
    f.map_weights(|c| gamma_k(case.n, p, c.label.degree()))
}

/// `‖I f‖_{p′} ≤ ‖f‖_p` on the normalized sphere, both norms from the same nodes.
pub fn hls_contraction_check(f: &BandLimitedFunction, p: f64, spec: &QuadratureSpec) -> Result<InequalityReport> {
    let pp = check_p(p)?;
    let g = intertwiner_multiplier_apply(f, p)?;
    let case = *f.case();
    let j = integrate_joint(
        Measure::Sphere { d: case.sphere_dim() },
        &|x: &[f64]| Ok([g.eval(x).norm().powf(pp), f.eval(x).norm().powf(p)]),
        spec,
    )?;
    let (a, b) = (j.value[0], j.value[1]);
    let lhs = a.powf(1.0 / pp);
    let rhs = b.powf(1.0 / p);
    let dl = if a > 0.0 { lhs / (pp * a) } else { 0.0 };
    let dr = if b > 0.0 { rhs / (p * b) } else { 0.0 };
    let md = ReportMetadata::new("hls-contraction", Some(case), Some(*spec)).with("p", p).with("p_dual", pp);
    InequalityReport::new(lhs, rhs, j.std_error_of([-dl, dr]), md)
}

/// `Q = Σ aᵢbᵢ` and `Q*`, the same sum after sorting both lists in decreasing order.
pub fn rearrangement_check(a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    if a.len() != b.len() {
        return Err(Error::structural("sequences must have equal length"));
    }
    if a.iter().chain(b).any(|v| !(*v >= 0.0) || !v.is_finite()) {
        return Err(Error::domain("entries must be finite and nonnegative"));
    }
    let q: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(|x, y| y.total_cmp(x));
    sb.sort_by(|x, y| y.total_cmp(x));
    let qs: f64 = sa.iter().zip(&sb).map(|(x, y)| x * y).sum();
    debug_assert!(qs >= q - 1e-12 * qs.abs().max(1.0));
    Ok((q, qs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::CaseId;

    #[test]
    fn gamma_values() {
        for k in 0..20 {
            let g = gamma_k(3, 1.5, k).unwrap();
            assert!((g - 1.0 / (k as f64 + 1.0)).abs() < 1e-13, "{k}: {g}");
        }
        for n in 1..8 {
            for p in [1.1, 1.5, 1.9] {
                for k in 0..30 {
                    assert!(gamma_k(n, p, k + 1).unwrap() < gamma_k(n, p, k).unwrap());
                }
            }
        }
        assert!(gamma_k(3, 2.0, 1).is_err() && gamma_k(3, 1.0, 1).is_err());
    }

    #[test]
    fn hls_constant_half_integers() {
        // π Γ(1/2)/Γ(2) (Γ(3/2)/Γ(3))^{−1/3} with Γ(1/2) = √π, Γ(3/2) = √π/2
        let pi = std::f64::consts::PI;
        let want = pi * pi.sqrt() * (pi.sqrt() / 4.0).powf(-1.0 / 3.0);
        let got = hls_constant(3, 1.5).unwrap();
        assert!((got - want).abs() < 1e-12 * want, "{got} vs {want}");
        for n in 1..=8 {
            for i in 1..20 {
                let k = hls_constant(n, 1.0 + i as f64 / 20.0).unwrap();
                assert!(k.is_finite() && k > 0.0);
            }
        }
    }

    #[test]
    fn multiplier_and_contraction() {
        let one = BandLimitedFunction::constant(CaseId::real(3), 2.0).unwrap();
        let i1 = intertwiner_multiplier_apply(&one, 1.5).unwrap();
        assert_eq!(i1.norm2(), one.norm2());
        let f = BandLimitedFunction::random(CaseId::real(3), 3, 4).unwrap();
        let g = intertwiner_multiplier_apply(&f, 1.5).unwrap();
        for (a, b) in f.components().iter().zip(g.components()) {
            let k = a.label.degree() as f64;
            assert!((b.weight - a.weight / (k + 1.0)).abs() < 1e-14);
        }
        let r = hls_contraction_check(&f, 1.5, &QuadratureSpec::monte_carlo(20_000, 3)).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(intertwiner_multiplier_apply(&BandLimitedFunction::constant(CaseId::complex(1), 1.0).unwrap(), 1.5).is_err());
    }

    #[test]
    fn rearrangement_examples() {
        assert_eq!(rearrangement_check(&[1.0, 3.0], &[2.0, 1.0]).unwrap(), (5.0, 7.0));
        let (q, qs) = rearrangement_check(&[3.0, 2.0, 1.0], &[5.0, 4.0, 0.5]).unwrap();
        assert_eq!(q, qs);
        assert!(rearrangement_check(&[1.0], &[-1.0]).is_err());
        assert!(rearrangement_check(&[1.0], &[1.0, 2.0]).is_err());
    }
}
