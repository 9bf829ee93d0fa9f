use super::constants::limit_constants;
use crate::error::{Error, Result};
use crate::inequalities::{entropy_density, GaussFunction, InequalityReport, ReportMetadata};
use crate::quadrature::{integrate_joint, Measure, QuadratureSpec};

/// The sphere inequality on Sⁿ⁻¹ integrated over the last `n − k` coordinates:
/// `d′∫|f|² log|f| w ≤ (d̃′/4)∫|∇f|² (1+|x|²/n)² w` with `w = (1+|x|²/n)^{−(n+k)/2}` and
/// `d′∫|f|² w = 1`.
pub fn projected_inequality_check(
    k: usize,
    n: u32,
    f: &dyn GaussFunction,
    spec: &QuadratureSpec,
) -> Result<InequalityReport> {
    if f.dim() != k {
        return Err(Error::structural(format!("f has {} variables, expected {k}", f.dim())));
    }
    let c = limit_constants(n, k as u32)?;
    let nf = n as f64;
    let measure = Measure::WeightedRn {
        k,
        n: nf,
        exponent: -0.5 * (nf + k as f64),
    };
    let j = integrate_joint(
        measure,
        &|x: &[f64]| {
            let v = f.value(x);
            let mut g = vec![0.0; k];
            f.gradient(x, &mut g);
            let r = 1.0 + x.iter().map(|a| a * a).sum::<f64>() / nf;
            Ok([entropy_density(v.abs()), v * v, g.iter().map(|a| a * a).sum::<f64>() * r * r])
        },
        spec,
    )?;
    let dp = c.d_prime();
    let [a, b, d] = j.value.map(|v| dp * v);
    if !(b > 0.0) {
        return Err(Error::domain("f vanishes in the weighted L²"));
    }
    // d̃′/d′ = d̃/d
    let ratio = (c.ln_d_tilde - c.ln_d).exp();
    let lhs = a / b - 0.5 * b.ln();
    let rhs = 0.25 * ratio * d / b;
    let se = dp * j.std_error_of([-1.0 / b, (a - 0.25 * ratio * d) / (b * b) + 0.5 / b, 0.25 * ratio / b]);
    let md = ReportMetadata::new("projected", None, Some(*spec))
        .with("n", nf)
        .with("k", k as f64)
        .with("d_prime", dp)
        .with("d_tilde_prime", c.d_tilde_prime());
    InequalityReport::new(lhs, rhs, se, md)
}
