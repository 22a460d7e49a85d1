//! Grid, time-marching and scheme kernels: first-order upwind for
//! nonconservative advection-reaction and Godunov's method for
//! Hamilton-Jacobi equations. Both kernels are pure field-to-field maps;
//! all four reduced formulations march them in the backward time
//! `tau = T - t`.

mod boundary;
mod field;
mod godunov;
mod gradient;
mod march;
mod upwind;

pub use boundary::BoundarySpec;
pub use field::{Field, Grid1D};
pub use godunov::{godunov_flux, godunov_step, GodunovHamiltonian};
pub use gradient::central_gradient;
pub use march::{cfl_number, TimeMarch};
pub use upwind::upwind_step;

/// Per-step scheme statistics, fed into solver diagnostics.
#[derive(Clone, Copy, Debug, Default)]
pub struct StepStats {
    /// Largest advection speed seen by the step (for Godunov, the
    /// Hamiltonian slope at the flux extremizers).
    pub max_abs_velocity: f64,
    /// `max_abs_velocity * dt / dx`.
    pub cfl: f64,
}
