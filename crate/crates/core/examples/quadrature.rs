//! The integration rules side by side on a few integrands with known values.

use flagsob::quadrature::{integrate_gauss, integrate_heisenberg_mu, integrate_sphere, QuadratureKind, QuadratureSpec};

fn main() -> flagsob::error::Result<()> {
    let quartic = |x: &[f64]| x[0].powi(4);
    let mc = integrate_sphere(3, &quartic, &QuadratureSpec::monte_carlo(200_000, 7))?;
    let pr = integrate_sphere(3, &quartic, &QuadratureSpec::new(QuadratureKind::SphereProductRule, 6, 0)?)?;
    println!("x0^4 on S^3: exact {:.8}, product {:.8}, mc {:.8} +- {:.8}", 3.0 / 24.0, pr.value, mc.value, mc.std_error);

    let gh = integrate_gauss(2, &|x: &[f64]| (x[0] * x[1]).powi(2), &QuadratureSpec::new(QuadratureKind::GaussHermite, 8, 0)?)?;
    println!("E[x^2 y^2] under the Gauss measure: {:.12}", gh.value);

    let ar = QuadratureSpec::new(QuadratureKind::AdaptiveRadial, 4, 0)?;
    let mass = integrate_heisenberg_mu(1, &|_: &[f64]| 1.0, &ar)?;
    println!("mass of mu_1 on H^1: {:.10}", mass.value);
    Ok(())
}
