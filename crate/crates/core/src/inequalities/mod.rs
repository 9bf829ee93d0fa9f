//! The functional inequalities: entropy, Dirichlet forms, the sphere log-Sobolev bound,
//! Beckner's bound, hypercontractivity, Gross's inequality and the HLS multipliers.

mod function;
mod gross;
mod hls;
mod report;
mod sphere;

pub use function::{BandLimitedFunction, Component, ComponentLabel};
pub use gross::{gross_check, random_gauss_polynomial, ClosureFunction, GaussFunction, PolyFunction, FD_STEP};
pub use hls::{gamma_k, hls_constant, hls_contraction_check, intertwiner_multiplier_apply, rearrangement_check};
pub use report::{InequalityReport, ReportMetadata};
pub use sphere::{
    beckner_bound_check, component_eigenvalue, dirichlet_form_geometric, dirichlet_form_spectral, entropy_density,
    entropy_functional, hypercontractive_time, lp_norm, semigroup_contraction_check, sobolev_generator_check,
    verify_theorem21, ENTROPY_FLOOR,
};
