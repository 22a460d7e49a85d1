//! First-order upwind step for `u_tau + v(x, u) u_x = s(x, u)`.
//!
//! At each node the spatial difference is biased against the local transport
//! direction: backward when `v(x_j, u_j) >= 0`, forward otherwise (the tie
//! `v = 0` takes the backward branch, where the advection term vanishes
//! anyway). The velocity is evaluated at the node's own `(x, u)`.

use super::{BoundarySpec, Field, StepStats};
use crate::{Error, Result};

/// One explicit Euler step. The CFL number with respect to
/// `max |v(x_j, u_j)|` over the current field must not exceed one.
///
/// Boundary nodes use the one-sided interior difference when the velocity
/// points outward; at an inflow boundary the node is assigned the Dirichlet
/// value, and an `Outflow` spec reports an error. Only `Outflow` and
/// `Dirichlet` rules apply to this kernel.
pub fn upwind_step(
    field: &Field,
    velocity: impl Fn(f64, f64) -> f64,
    source: impl Fn(f64, f64) -> f64,
    dt: f64,
    boundary: &BoundarySpec,
) -> Result<(Field, StepStats)> {
    let dirichlet = match *boundary {
        BoundarySpec::Outflow => None,
        BoundarySpec::Dirichlet {
            left_value,
            right_value,
        } => Some((left_value, right_value)),
        other => {
            return Err(Error::BoundaryMismatch {
                solver: "upwind",
                got: other.kind_name().into(),
            })
        }
    };

    let grid = *field.grid();
    let dx = grid.spacing();
    let u = field.values();
    let n = u.len() - 1;

    let v: Vec<f64> = (0..=n).map(|j| velocity(grid.node(j), u[j])).collect();
    let max_abs_velocity = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let cfl = max_abs_velocity * dt / dx;
    if cfl > 1.0 {
        return Err(Error::CflViolation { cfl });
    }

    let mut out = vec![0.0; n + 1];
    for j in 1..n {
        let ux = if v[j] >= 0.0 {
            (u[j] - u[j - 1]) / dx
        } else {
            (u[j + 1] - u[j]) / dx
        };
        out[j] = u[j] - dt * v[j] * ux + dt * source(grid.node(j), u[j]);
    }

    // left boundary: outward means v < 0 there
    out[0] = if v[0] > 0.0 {
        match dirichlet {
            Some((left, _)) => left,
            None => {
                return Err(Error::InflowAtOutflow {
                    x: grid.node(0),
                    velocity: v[0],
                })
            }
        }
    } else {
        let ux = (u[1] - u[0]) / dx;
        u[0] - dt * v[0] * ux + dt * source(grid.node(0), u[0])
    };

    // right boundary: outward means v > 0 there
    out[n] = if v[n] < 0.0 {
        match dirichlet {
            Some((_, right)) => right,
            None => {
                return Err(Error::InflowAtOutflow {
                    x: grid.node(n),
                    velocity: v[n],
                })
            }
        }
    } else {
        let ux = (u[n] - u[n - 1]) / dx;
        u[n] - dt * v[n] * ux + dt * source(grid.node(n), u[n])
    };

    Ok((
        Field::new(grid, out)?,
        StepStats {
            max_abs_velocity,
            cfl,
        },
    ))
}
