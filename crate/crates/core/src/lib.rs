//! Spectral and quadrature toolkit for the four rank-one flag spheres.

pub mod error;
pub mod cli;
pub mod exactpoly;
pub mod gauss_limit;
pub mod geometry;
pub mod inequalities;
pub mod quadrature;
pub mod spectra;
pub mod suite;

pub use error::{Error, Result};
