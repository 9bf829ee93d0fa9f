//! Reproducible integration on spheres, Gaussian space, weighted ℝᵏ and the Heisenberg group.

mod integrate;
mod multi;
mod rules;

pub use integrate::{
    derive_seed, heisenberg_q, integrate_gauss, integrate_heisenberg_mu, integrate_heisenberg_weight,
    integrate_sphere, integrate_weighted_rn, radial_product, sample_sphere, seeded_rng, IntegralResult,
    MeanAccumulator, QuadratureKind, QuadratureSpec,
};
#[cfg(test)]
pub(crate) use integrate::heisenberg_mu_mass;
pub use multi::{integrate_joint, measure_mass, JointEstimate, Measure};
pub use rules::{
    de_rule, gauss_gegenbauer, gauss_hermite, golub_welsch, integrate_de, integrate_de_with, sphere_product_rule,
    Adaptive1d, DeDomain, Rule1d, SphereProductRule, MAX_PRODUCT_NODES,
};
