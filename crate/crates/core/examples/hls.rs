//! HLS multipliers on S^3, the rearrangement inequality, and the contraction ‖If‖_{p′} ≤ ‖f‖_p.

use flagsob::inequalities::{gamma_k, hls_constant, hls_contraction_check, rearrangement_check, BandLimitedFunction};
use flagsob::quadrature::QuadratureSpec;
use flagsob::spectra::CaseId;

fn main() -> flagsob::error::Result<()> {
    let p = 1.5;
    let gammas: Vec<String> = (0..6).map(|k| gamma_k(3, p, k).map(|g| format!("{g:.4}"))).collect::<Result<_, _>>()?;
    println!("gamma_k on S^3, p = {p}: {}", gammas.join(" "));
    println!("K_p = {:.6}", hls_constant(3, p)?);

    let (q, q_star) = rearrangement_check(&[3.0, 1.0, 4.0, 1.0, 5.0], &[9.0, 2.0, 6.0, 5.0, 3.0])?;
    println!("Q = {q}, Q* = {q_star}");

    let f = BandLimitedFunction::random(CaseId::real(3), 3, 8)?;
    let r = hls_contraction_check(&f, p, &QuadratureSpec::monte_carlo(50_000, 2))?;
    println!("|If|_p' = {:.5} <= |f|_p = {:.5}", r.lhs, r.rhs);
    Ok(())
}
