//! The two reduced transport problems, marched with first-order upwind.

use super::{
    check_dual_domain, check_primal_domain, check_terminal, MarchRecorder, ProblemKind,
    SolutionTrace,
};
use crate::model::CostModel;
use crate::numerics::{upwind_step, BoundarySpec, Field, Grid1D, TimeMarch};
use crate::{Error, Result};

/// Reduced primal equation `w_tau + r(w, zeta) w_zeta = q(w, zeta)` on
/// `[0, 1]`. The sign structure `r(w, 0) <= 0 <= r(w, 1)` makes both ends
/// outflow, so no boundary data is needed; the kernel still verifies the
/// directions every step.
pub fn solve_reduced_primal(
    model: &CostModel,
    grid: &Grid1D,
    march: &TimeMarch,
    terminal: &Field,
) -> Result<SolutionTrace> {
    check_primal_domain(grid)?;
    check_terminal(grid, terminal)?;

    let mut rec = MarchRecorder::new(march);
    let mut state = terminal.clone();
    rec.observe(0, &state);
    for k in 1..=march.steps() {
        let (next, stats) = upwind_step(
            &state,
            |x, u| model.reduced_r_extended(u, x),
            |x, u| model.reduced_q_extended(u, x),
            march.dt(),
            &BoundarySpec::Outflow,
        )
        .map_err(|e| e.at_step(k))?;
        state = next;
        rec.stats(stats);
        rec.observe(k, &state);
    }
    Ok(rec.finish(ProblemKind::ReducedPrimal, *grid, march.clone(), |_| {}))
}

/// Reduced dual equation `Z_tau + q(v, Z) Z_v = r(v, Z)` on `[-L, L]` with
/// Dirichlet data re-imposed at both ends every step. Note the swapped
/// argument roles: the first slot of `q` and `r` is the dual coordinate `v`,
/// the second the evolving fraction `Z`.
pub fn solve_reduced_dual(
    model: &CostModel,
    grid: &Grid1D,
    march: &TimeMarch,
    terminal: &Field,
    boundary: &BoundarySpec,
) -> Result<SolutionTrace> {
    check_dual_domain(grid)?;
    check_terminal(grid, terminal)?;
    boundary.validate()?;
    let (left, right) = match *boundary {
        BoundarySpec::Dirichlet {
            left_value,
            right_value,
        } => (left_value, right_value),
        other => {
            return Err(Error::BoundaryMismatch {
                solver: "reduced-dual",
                got: other.kind_name().into(),
            })
        }
    };

    let n = grid.intervals();
    let mut state = terminal.clone();
    {
        let v = state.values_mut();
        v[0] = left;
        v[n] = right;
    }

    let mut rec = MarchRecorder::new(march);
    rec.observe(0, &state);
    for k in 1..=march.steps() {
        let (mut next, stats) = upwind_step(
            &state,
            |x, u| model.reduced_q_extended(x, u),
            |x, u| model.reduced_r_extended(x, u),
            march.dt(),
            boundary,
        )
        .map_err(|e| e.at_step(k))?;
        {
            let v = next.values_mut();
            v[0] = left;
            v[n] = right;
        }
        state = next;
        rec.stats(stats);
        rec.observe(k, &state);
    }

    let dx = grid.spacing();
    let final_state = state;
    Ok(rec.finish(ProblemKind::ReducedDual, *grid, march.clone(), |diag| {
        diag.range_alert = diag.min_value < -0.05 || diag.max_value > 1.05;
        // layer-width heuristic: steep gradients five nodes inside an end
        // mean the truncation L is too small for the far-field data
        if n >= 10 {
            let left_slope = (final_state.value(5) - final_state.value(4)) / dx;
            let right_slope = (final_state.value(n - 4) - final_state.value(n - 5)) / dx;
            diag.boundary_slope_alert = left_slope.abs() > 0.1 || right_slope.abs() > 0.1;
        }
    }))
}
