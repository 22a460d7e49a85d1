//! Numerical solvers for two-state mean-field games.
//!
//! A two-state mean-field game with quadratic switching costs reduces to a
//! scalar transport equation for the value difference `w = U^1 - U^2` over the
//! population fraction `zeta`, and to three further equivalent formulations:
//! the dual transport equation for the inverse map `Z`, and one
//! Hamilton-Jacobi equation behind each of the two (the potential forms).
//! This crate evaluates the model functions, marches all four formulations
//! backward from terminal data with monotone first-order schemes, and provides
//! the post-processing used to cross-check them against each other.
//!
//! * [`model`] — cost models, switching rates, Hamiltonians and the reduced
//!   coefficients `r` and `q`.
//! * [`numerics`] — grids, fields, time marching, first-order upwind and
//!   Godunov kernels.
//! * [`solvers`] — the four initial-boundary-value problems assembled from the
//!   two layers above.
//! * [`analysis`] — Legendre transforms, inversion, shock and monotonicity
//!   diagnostics, field comparison.

pub mod analysis;
mod error;
pub mod model;
pub mod numerics;
pub mod solvers;

pub use error::{Error, Result};
