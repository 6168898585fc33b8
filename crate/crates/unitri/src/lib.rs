//! Unimodular triangulations of dilated empty lattice tetrahedra and lattice polytopes.

pub mod dilation;
pub mod empty_simplex;
pub mod error;
pub mod formats;
pub mod fundamental_square;
pub mod lattice_core;
mod layered;
pub mod polytope_pipeline;
pub mod prism_builder;
pub mod verifier;

pub use error::{Error, Result};
