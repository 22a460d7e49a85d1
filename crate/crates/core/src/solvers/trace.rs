use serde::{Deserialize, Serialize};

use super::ProblemKind;
use crate::numerics::{Field, Grid1D, TimeMarch};
use crate::{Error, Result};

/// Run-level diagnostics summary accumulated over all steps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub steps: usize,
    /// Largest advection speed (or Hamiltonian slope at flux extremizers).
    pub max_abs_velocity: f64,
    pub max_cfl: f64,
    pub min_value: f64,
    pub max_value: f64,
    /// Dual runs only: the fraction `Z` left `[-0.05, 1.05]` at some step.
    /// The mismatched terminal/boundary data of the dual problem drives
    /// transient excursions well outside the simplex; this records them.
    pub range_alert: bool,
    /// Dual runs only: the final-state slope a few nodes inside an endpoint
    /// exceeds 0.1, suggesting the truncated domain is too small.
    pub boundary_slope_alert: bool,
}

/// Time-indexed solution snapshots plus run diagnostics, ordered by `t`
/// descending from the terminal data.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionTrace {
    pub problem: ProblemKind,
    pub grid: Grid1D,
    pub march: TimeMarch,
    pub snapshots: Vec<(f64, Field)>,
    pub diagnostics: Diagnostics,
}

impl SolutionTrace {
    /// Snapshot whose realized time is nearest `t`, within half a step.
    pub fn snapshot_at(&self, t: f64) -> Result<&Field> {
        let tol = 0.5 * self.march.dt() + 1e-12;
        self.snapshots
            .iter()
            .find(|(ts, _)| (ts - t).abs() <= tol)
            .map(|(_, f)| f)
            .ok_or(Error::SnapshotNotFound { t })
    }

    /// The snapshot at the terminal time, when recorded (largest `t`).
    pub fn terminal_snapshot(&self) -> Option<&(f64, Field)> {
        self.snapshots.first()
    }

    /// The snapshot at the smallest recorded `t`.
    pub fn last_snapshot(&self) -> Option<&(f64, Field)> {
        self.snapshots.last()
    }
}
