//! Hypercontractivity of the heat semigroup on S^2 from 2 to 4, above and below the threshold time.

use flagsob::exactpoly::rational_to_f64;
use flagsob::inequalities::{hypercontractive_time, semigroup_contraction_check, BandLimitedFunction};
use flagsob::quadrature::{QuadratureKind, QuadratureSpec};
use flagsob::spectra::CaseId;

fn main() -> flagsob::error::Result<()> {
    let case = CaseId::real(2);
    let t0 = hypercontractive_time(rational_to_f64(&case.sharp_constant()), 2.0, 4.0);
    println!("threshold t = {t0:.6}");
    let f = BandLimitedFunction::random(case, 2, 5)?;
    let spec = QuadratureSpec::new(QuadratureKind::SphereProductRule, 10, 0)?;
    for frac in [0.25, 0.5, 1.0, 1.5] {
        let r = semigroup_contraction_check(&f, frac * t0, 2.0, 4.0, &spec)?;
        println!("t = {:.4}: |e^(-t L) f|_4 = {:.5}, |f|_2 = {:.5}, margin {:+.5}", frac * t0, r.lhs, r.rhs, r.margin);
    }
    Ok(())
}
