//! The Dirichlet form of a function on S^5, from its spectrum and from horizontal gradients.

use flagsob::inequalities::{dirichlet_form_geometric, dirichlet_form_spectral, BandLimitedFunction};
use flagsob::quadrature::QuadratureSpec;
use flagsob::spectra::CaseId;

fn main() -> flagsob::error::Result<()> {
    let f = BandLimitedFunction::random(CaseId::complex(2), 2, 42)?;
    let spectral = dirichlet_form_spectral(&f)?;
    let geometric = dirichlet_form_geometric(&f, &QuadratureSpec::monte_carlo(100_000, 1))?;
    println!("spectral  {spectral:.6}");
    println!("geometric {:.6} +- {:.6}", geometric.value, geometric.std_error);
    println!("difference in standard errors: {:.2}", (geometric.value - spectral) / geometric.std_error);
    Ok(())
}
