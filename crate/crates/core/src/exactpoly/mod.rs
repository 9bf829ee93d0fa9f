//! Exact multivariate polynomials over ℚ and ℚ(i), with the differential operators
//! needed to test spectral identities without floating point.

mod bidegree;
mod compiled;
mod harmonic;
mod operator;
mod poly;

pub use bidegree::{bidegree_split, complex_coordinate};
pub use compiled::NumPoly;
pub use harmonic::{
    harmonic_part, harmonic_part_on_sphere, harmonic_projection, harmonic_projection_with_caps,
    reassemble, sphere_mean, sphere_moment, HarmonicComponent, PolyCaps,
};
pub use operator::{apply_operator, FirstOrderOperator};
pub use poly::{
    poly_arith, rat, rat_int, rational_to_f64, ArithOp, CPoly, Coefficient, ComplexRational,
    MultiPoly, Rational,
};

/// Variable names `x0, x1, ...`.
pub fn coordinate_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}
