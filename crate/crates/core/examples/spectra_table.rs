//! Δ_b eigenvalues and sharp-constant margins for the low K-types of each case.

use flagsob::exactpoly::rational_to_f64;
use flagsob::spectra::{deltab_eigenvalue, enumerate_ktypes, theorem_bound_margin, CaseId};

fn main() -> flagsob::error::Result<()> {
    let cases = [CaseId::real(4), CaseId::complex(2), CaseId::quaternionic(1), CaseId::octonionic()];
    for case in &cases {
        println!("{case}  (C = {})", case.sharp_constant());
        for kt in enumerate_ktypes(case, 3) {
            let lambda = deltab_eigenvalue(case, &kt)?;
            let margin = theorem_bound_margin(case, &kt)?;
            println!("  {kt:<24} lambda = {lambda:>4}  C*lambda - k = {margin} ({:.4})", rational_to_f64(&margin));
        }
    }
    Ok(())
}
