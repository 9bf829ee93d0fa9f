//! Gross's inequality, its finite-dimensional projections, and the limit of the normalizing constants.

use flagsob::gauss_limit::{asymptotics_check, lemma_closed_form, projected_inequality_check};
use flagsob::inequalities::{gross_check, ClosureFunction};
use flagsob::quadrature::{QuadratureKind, QuadratureSpec};

fn main() -> flagsob::error::Result<()> {
    println!("lemma, m = 2, N = 3, n = 5, |x|^2 = 1: {:.10}", lemma_closed_form(2, 3.0, 5.0, 1.0)?);
    print!("{}", asymptotics_check(2, &[10, 1000, 100_000])?.to_csv()?);

    let f = ClosureFunction { k: 1, f: |x: &[f64]| 1.0 + 0.2 * x[0] };
    let gh = QuadratureSpec::new(QuadratureKind::GaussHermite, 30, 0)?;
    let g = gross_check(&f, &gh)?;
    println!("Gross: margin {:.6}", g.margin);
    let ar = QuadratureSpec::new(QuadratureKind::AdaptiveRadial, 6, 0)?;
    for n in [20, 100, 500] {
        let r = projected_inequality_check(1, n, &f, &ar)?;
        println!("n = {n:>3}: projected margin {:.6}", r.margin);
    }
    Ok(())
}
