//! Models of the spheres with their horizontal distributions, the Heisenberg group,
//! and the stereographic and Cayley maps.

mod algebra;
mod frame;
mod heisenberg;
mod sphere;

pub use algebra::{
    octonion_conj, octonion_inv, octonion_mul, octonion_norm2, quaternion_mul, unit_octonion, Octonion,
    Quaternion, FANO_TRIPLES,
};
pub use frame::{
    fibre_basis, horizontal_frame, horizontal_frame_seeded, horizontal_gradient, horizontal_norm2,
    horizontal_norm2_with_fibre, tangential_norm2, HorizontalFrame,
};
pub use heisenberg::{
    cayley, cayley_conformal_factor, cayley_coords, cayley_inverse, heisenberg_deltab, heisenberg_deltab_expanded,
    heisenberg_fields, heisenberg_mul, heisenberg_vars, left_invariant_derivative, reflect_t, HeisenbergFields,
    HeisenbergPoint,
};
pub use sphere::{conformal_factor, stereographic, stereographic_inverse, SpherePoint};
