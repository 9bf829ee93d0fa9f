//! Δ_b on polynomials of the Heisenberg group, the Cayley transform, and log-Sobolev for a pullback.

use flagsob::exactpoly::{rat, MultiPoly};
use flagsob::gauss_limit::{heisenberg_logsob_check, sphere_pullback};
use flagsob::geometry::{cayley, cayley_inverse, heisenberg_deltab, heisenberg_deltab_expanded, heisenberg_vars, HeisenbergPoint};
use flagsob::quadrature::QuadratureSpec;
use num_complex::Complex64;

fn main() -> flagsob::error::Result<()> {
    let vars = heisenberg_vars(1);
    // x² t + y⁴
    let f = MultiPoly::from_terms(&vars, [(vec![2, 0, 1], rat(1, 1)), (vec![0, 4, 0], rat(1, 1))])?;
    let a = heisenberg_deltab(&f, 1)?;
    println!("Delta_b f = {a}");
    println!("matches the expanded formula: {}", a == heisenberg_deltab_expanded(&f, 1)?);

    let h = HeisenbergPoint::new(vec![Complex64::new(0.3, -1.2)], 0.7);
    let w = cayley(&h);
    println!("cayley{:?} = {:?}", h.coords(), w.coords());
    println!("inverse recovers {:?}", cayley_inverse(&w)?.coords());

    let g = sphere_pullback(1, |x: &[f64]| 1.0 + 0.5 * x[0] - 0.3 * x[3]);
    let r = heisenberg_logsob_check(1, &g, &QuadratureSpec::monte_carlo(100_000, 3))?;
    println!("log-Sobolev on H^1: margin {:.5} +- {:.5}", r.margin, r.std_error);
    Ok(())
}
