use num_complex::Complex64;

use super::function::{BandLimitedFunction, ComponentLabel};
use super::report::{InequalityReport, ReportMetadata};
use crate::error::{Error, Result};
use crate::exactpoly::rational_to_f64;
use crate::geometry::{fibre_basis, horizontal_norm2_with_fibre};
use crate::quadrature::{integrate_joint, IntegralResult, JointEstimate, Measure, QuadratureSpec};
use crate::spectra::{deltab_eigenvalue, CaseId};

/// Values of |f| below this count as zero in `|f|² log |f|`.
pub const ENTROPY_FLOOR: f64 = 1e-300;

/// `a² log a` for `a = |f| ≥ 0`, with `0 · log 0 = 0`.
pub fn entropy_density(a: f64) -> f64 {
    if a < ENTROPY_FLOOR {
        0.0
    } else {
        a * a * a.ln()
    }
}

/// `∫ |f|² log |f|` for the measure; with `general` the term `‖f‖₂² log ‖f‖₂` is subtracted,
/// `‖f‖₂` being estimated on the same nodes.
pub fn entropy_functional<F>(abs_f: &F, measure: Measure, spec: &QuadratureSpec, general: bool) -> Result<IntegralResult>
where
    F: Fn(&[f64]) -> f64,
{
    let j = integrate_joint(measure, &|x: &[f64]| {
        let a = abs_f(x);
        Ok([entropy_density(a), a * a])
    }, spec)?;
    let (a, b) = (j.value[0], j.value[1]);
    let (value, grad) = if general {
        if !(b > 0.0) {
            return Err(Error::domain("the general entropy form needs a nonzero function"));
        }
        (a - 0.5 * b * b.ln(), [1.0, -0.5 * (b.ln() + 1.0)])
    } else {
        (a, [1.0, 0.0])
    };
    Ok(IntegralResult {
        value,
        std_error: j.std_error_of(grad),
        nodes_used: j.count,
    })
}

/// Shared sampling loop: `g(f(ξ), |∇_b f(ξ)|²)` on the sphere of `f`.
fn sphere_joint<const M: usize>(
    f: &BandLimitedFunction,
    spec: &QuadratureSpec,
    with_gradient: bool,
    g: impl Fn(Complex64, f64) -> [f64; M],
) -> Result<JointEstimate<M>> {
    let case = *f.case();
    let dim = case.ambient_dim();
    integrate_joint(
        Measure::Sphere { d: case.sphere_dim() },
        &|x: &[f64]| {
            if !with_gradient {
                return Ok(g(f.eval(x), 0.0));
            }
            let mut gr = vec![0.0; dim];
            let mut gi = vec![0.0; dim];
            let v = f.eval_with_gradient(x, &mut gr, &mut gi);
            let fibre = fibre_basis(&case, x)?;
            let mut h = horizontal_norm2_with_fibre(&fibre, &gr);
            if !f.is_real() {
                h += horizontal_norm2_with_fibre(&fibre, &gi);
            }
            Ok(g(v, h))
        },
        spec,
    )
}

fn metadata(check: &str, case: &CaseId, spec: &QuadratureSpec) -> ReportMetadata {
    ReportMetadata::new(check, Some(*case), Some(*spec))
}

/// `∫_S |∇_b f|²` by quadrature of the horizontal gradient.
pub fn dirichlet_form_geometric(f: &BandLimitedFunction, spec: &QuadratureSpec) -> Result<IntegralResult> {
    let j = sphere_joint(f, spec, true, |_, h| [h])?;
    Ok(IntegralResult {
        value: j.value[0],
        std_error: j.std_error(0),
        nodes_used: j.count,
    })
}

/// Eigenvalue of Δ_b on a component; degree-only labels are accepted only for constants.
pub fn component_eigenvalue(case: &CaseId, label: &ComponentLabel) -> Result<f64> {
    match label {
        ComponentLabel::KType(kt) => Ok(deltab_eigenvalue(case, kt)? as f64),
        ComponentLabel::Degree(0) => Ok(0.0),
        ComponentLabel::Degree(d) => Err(Error::domain(format!(
            "component of degree {d} in {case} carries no K-type label"
        ))),
    }
}

/// `Σ λ(label) ‖Y‖₂²`.
pub fn dirichlet_form_spectral(f: &BandLimitedFunction) -> Result<f64> {
    let mut total = 0.0;
    for c in f.components() {
        total += component_eigenvalue(f.case(), &c.label)? * c.norm2();
    }
    Ok(total)
}

/// `∫|f|² log|f| − ‖f‖₂² log‖f‖₂ ≤ C ∫|∇_b f|²` with the sharp constant of the case.
pub fn verify_theorem21(f: &BandLimitedFunction, spec: &QuadratureSpec) -> Result<InequalityReport> {
    let n2 = f.norm2();
    if !(n2 > 0.0) {
        return Err(Error::domain("the inequality is stated for nonzero f"));
    }
    let c = rational_to_f64(&f.case().sharp_constant());
    let j = sphere_joint(f, spec, true, |v, h| [entropy_density(v.norm()), c * h])?;
    let lhs = j.value[0] - 0.5 * n2 * n2.ln();
    let md = metadata("theorem", f.case(), spec).with("C", c).with("norm2", n2);
    InequalityReport::new(lhs, j.value[1], j.std_error_of([-1.0, 1.0]), md)
}

/// `∫|f|² log|f| ≤ Σ_k k ‖Y_k‖₂²` for `f` renormalized to `‖f‖₂ = 1`.
pub fn beckner_bound_check(f: &BandLimitedFunction, spec: &QuadratureSpec) -> Result<InequalityReport> {
    let g = f.normalized()?;
    let rhs: f64 = g.degree_masses().iter().map(|(k, m)| *k as f64 * m).sum();
    let j = sphere_joint(&g, spec, false, |v, _| [entropy_density(v.norm())])?;
    InequalityReport::new(j.value[0], rhs, j.std_error(0), metadata("beckner", f.case(), spec))
}

/// `∫|f|² log|f| ≤ Σ C λ ‖Y‖₂²` for `‖f‖₂ = 1` and a generator with eigenvalue `λ(label)`.
pub fn sobolev_generator_check(
    spectrum: &dyn Fn(&ComponentLabel) -> Result<f64>,
    c: f64,
    f: &BandLimitedFunction,
    spec: &QuadratureSpec,
) -> Result<InequalityReport> {
    let g = f.normalized()?;
    let mut rhs = 0.0;
    for comp in g.components() {
        rhs += c * spectrum(&comp.label)? * comp.norm2();
    }
    let j = sphere_joint(&g, spec, false, |v, _| [entropy_density(v.norm())])?;
    InequalityReport::new(j.value[0], rhs, j.std_error(0), metadata("sobolev-generator", f.case(), spec).with("C", c))
}

/// `‖f‖_p` with the delta-method standard error.
pub fn lp_norm(f: &BandLimitedFunction, p: f64, spec: &QuadratureSpec) -> Result<IntegralResult> {
    if !(p >= 1.0) {
        return Err(Error::domain(format!("L^p norm needs p >= 1, got {p}")));
    }
    let j = sphere_joint(f, spec, false, |v, _| [v.norm().powf(p)])?;
    let m = j.value[0];
    let value = m.powf(1.0 / p);
    let d = if m > 0.0 { value / (p * m) } else { 0.0 };
    Ok(IntegralResult {
        value,
        std_error: d * j.std_error(0),
        nodes_used: j.count,
    })
}

/// The smallest `t` with `exp(−t/C) ≤ √((q−1)/(p−1))`.
pub fn hypercontractive_time(c: f64, q: f64, p: f64) -> f64 {
    0.5 * c * ((p - 1.0) / (q - 1.0)).ln()
}

/// `‖e^{−tΔ_b} f‖_p ≤ ‖f‖_q`; `extra` records the threshold time and whether `t` meets it.
pub fn semigroup_contraction_check(
    f: &BandLimitedFunction,
    t: f64,
    q: f64,
    p: f64,
    spec: &QuadratureSpec,
) -> Result<InequalityReport> {
    if !(q > 1.0 && q <= p) || !(t >= 0.0) {
        return Err(Error::domain(format!("need 1 < q <= p and t >= 0, got q={q}, p={p}, t={t}")));
    }
    let case = *f.case();
    let g = f.map_weights(|c| Ok((-t * component_eigenvalue(&case, &c.label)?).exp()))?;
    let exact_q = q == 2.0;
    let j = integrate_joint(
        Measure::Sphere { d: case.sphere_dim() },
        &|x: &[f64]| {
            let fq = if exact_q { 0.0 } else { f.eval(x).norm().powf(q) };
            Ok([g.eval(x).norm().powf(p), fq])
        },
        spec,
    )?;
    let lhs = j.value[0].powf(1.0 / p);
    let dl = if j.value[0] > 0.0 { lhs / (p * j.value[0]) } else { 0.0 };
    let (rhs, dr) = if exact_q {
        (f.norm2().sqrt(), 0.0)
    } else {
        let r = j.value[1].powf(1.0 / q);
        (r, if j.value[1] > 0.0 { r / (q * j.value[1]) } else { 0.0 })
    };
    let c = rational_to_f64(&case.sharp_constant());
    let threshold = hypercontractive_time(c, q, p);
    let md = metadata("semigroup", &case, spec)
        .with("t", t)
        .with("q", q)
        .with("p", p)
        .with("threshold", threshold)
        .with("condition_holds", if t >= threshold { 1.0 } else { 0.0 });
    InequalityReport::new(lhs, rhs, j.std_error_of([-dl, dr]), md)
}
