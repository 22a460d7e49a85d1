//! The four reduced initial-boundary-value problems, assembled from the model
//! coefficients and the scheme kernels and marched from terminal data in
//! `tau = T - t`.
//!
//! | problem           | equation in tau                   | scheme  | boundary            |
//! |-------------------|-----------------------------------|---------|---------------------|
//! | reduced-primal    | `w_tau + r(w,z) w_z = q(w,z)`     | upwind  | outflow             |
//! | reduced-dual      | `Z_tau + q(v,Z) Z_v = r(v,Z)`     | upwind  | Dirichlet 1 / 0     |
//! | potential-primal  | `Y_tau - H(Y_z, z) = 0`           | Godunov | large Dirichlet     |
//! | potential-dual    | `P_tau + H(v, P_v) = 0`           | Godunov | slopes 1 / 0        |
//!
//! In the dual transport the argument roles swap: the first slot of `q` and
//! `r` carries the value difference (the dual coordinate) and the second the
//! evolving fraction `Z`.

mod potential;
mod terminal;
mod trace;
mod transport;

pub use potential::{solve_potential_dual, solve_potential_primal};
pub use terminal::TerminalPreset;
pub use trace::{Diagnostics, SolutionTrace};
pub use transport::{solve_reduced_dual, solve_reduced_primal};

use serde::{Deserialize, Serialize};

use crate::numerics::{Field, Grid1D, StepStats, TimeMarch};
use crate::{Error, Result};

/// Which of the four reduced formulations a run solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProblemKind {
    ReducedPrimal,
    ReducedDual,
    PotentialPrimal,
    PotentialDual,
}

impl ProblemKind {
    pub fn name(&self) -> &'static str {
        match self {
            ProblemKind::ReducedPrimal => "reduced-primal",
            ProblemKind::ReducedDual => "reduced-dual",
            ProblemKind::PotentialPrimal => "potential-primal",
            ProblemKind::PotentialDual => "potential-dual",
        }
    }

    /// Primal formulations live on the fraction interval `[0, 1]`; dual ones
    /// on a symmetric value-difference interval.
    pub fn is_dual(&self) -> bool {
        matches!(self, ProblemKind::ReducedDual | ProblemKind::PotentialDual)
    }
}

pub(crate) fn check_primal_domain(grid: &Grid1D) -> Result<()> {
    if grid.a().abs() > 1e-12 || (grid.b() - 1.0).abs() > 1e-12 {
        return Err(Error::DomainMismatch {
            a: grid.a(),
            b: grid.b(),
            expected: "unit interval [0, 1]".into(),
        });
    }
    Ok(())
}

pub(crate) fn check_dual_domain(grid: &Grid1D) -> Result<()> {
    if (grid.a() + grid.b()).abs() > 1e-9 || grid.b() <= 1.0 {
        return Err(Error::DomainMismatch {
            a: grid.a(),
            b: grid.b(),
            expected: "symmetric interval [-L, L] with L > 1".into(),
        });
    }
    Ok(())
}

pub(crate) fn check_terminal(grid: &Grid1D, terminal: &Field) -> Result<()> {
    if terminal.grid() != grid {
        return Err(Error::GridMismatch);
    }
    Ok(())
}

/// Accumulates snapshots (in descending `t`) and run-level diagnostics while
/// a solver marches.
pub(crate) struct MarchRecorder {
    plan: Vec<(usize, f64)>,
    next: usize,
    snapshots: Vec<(f64, Field)>,
    diag: Diagnostics,
}

impl MarchRecorder {
    pub(crate) fn new(march: &TimeMarch) -> Self {
        MarchRecorder {
            plan: march.snapshot_plan(),
            next: 0,
            snapshots: Vec::new(),
            diag: Diagnostics {
                steps: march.steps(),
                max_abs_velocity: 0.0,
                max_cfl: 0.0,
                min_value: f64::INFINITY,
                max_value: f64::NEG_INFINITY,
                range_alert: false,
                boundary_slope_alert: false,
            },
        }
    }

    /// Record the state after step `k` (`k = 0` is the imposed terminal data).
    pub(crate) fn observe(&mut self, k: usize, state: &Field) {
        self.diag.min_value = self.diag.min_value.min(state.min());
        self.diag.max_value = self.diag.max_value.max(state.max());
        if self.next < self.plan.len() && self.plan[self.next].0 == k {
            self.snapshots.push((self.plan[self.next].1, state.clone()));
            self.next += 1;
        }
    }

    pub(crate) fn stats(&mut self, s: StepStats) {
        self.diag.max_abs_velocity = self.diag.max_abs_velocity.max(s.max_abs_velocity);
        self.diag.max_cfl = self.diag.max_cfl.max(s.cfl);
    }

    pub(crate) fn finish(
        self,
        problem: ProblemKind,
        grid: Grid1D,
        march: TimeMarch,
        tune: impl FnOnce(&mut Diagnostics),
    ) -> SolutionTrace {
        let mut diag = self.diag;
        tune(&mut diag);
        SolutionTrace {
            problem,
            grid,
            march,
            snapshots: self.snapshots,
            diagnostics: diag,
        }
    }
}
