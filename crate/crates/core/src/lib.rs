//! Computational kernel for PU(N) monopole moduli: index bookkeeping on
//! closed four-manifolds, the quadratic moment map `mu`, pointwise checks of
//! the Kähler monopole equations and enumeration of circle-action fixed
//! points.

pub mod checks;
pub mod cohomology;
pub mod error;
pub mod exact;
pub mod kaehler;
pub mod lattice;
pub mod linalg;
pub mod mu_kernel;
pub mod optim;
pub mod reductions;
pub mod warning;

pub use error::{Error, Result};
pub use warning::Warning;
