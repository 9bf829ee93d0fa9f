//! The log-Sobolev inequality on S^7 for a few random band-limited functions.

use flagsob::inequalities::{verify_theorem21, BandLimitedFunction};
use flagsob::quadrature::QuadratureSpec;
use flagsob::spectra::CaseId;

fn main() -> flagsob::error::Result<()> {
    let case = CaseId::quaternionic(1);
    for seed in 0..4 {
        let f = BandLimitedFunction::random(case, 3, seed)?;
        let r = verify_theorem21(&f, &QuadratureSpec::monte_carlo(50_000, 100 + seed))?;
        println!(
            "seed {seed}: entropy {:.5} <= energy {:.5}  margin {:.5} +- {:.5}  holds: {}",
            r.lhs,
            r.rhs,
            r.margin,
            r.std_error,
            r.holds()
        );
    }
    Ok(())
}
