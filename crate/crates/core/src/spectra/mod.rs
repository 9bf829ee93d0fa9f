//! Case tables for the four rank-one flag spheres and exact evaluation of their spectra.

mod case;
mod eigen;
mod gamma;

pub use case::{enumerate_ktypes, CaseId, Family, KTypeLabel};
pub use eigen::{
    deltab_eigenvalue, eigenvalue_table, intertwiner_eigenvalue, octonionic_eigenvalue_exact,
    octonionic_eigenvalue_log_gamma, special_nu_identity, theorem_bound_margin, yamabe_eigenvalue,
    EigenvalueRecord, Provenance, Scalar, SpecialIdentity, SpecialNuOutcome, SpectralParam, SpectralValue,
};
pub use gamma::log_gamma;
pub(crate) use gamma::ln_gamma_pos;
