use serde::{Deserialize, Serialize};

use super::Grid1D;
use crate::{Error, Result};

/// Time horizon, step size and requested snapshot times.
///
/// All formulations carry terminal data at `t = T`; the kernels march forward
/// in `tau = T - t` and snapshots are relabeled back to `t`. Snapshot times
/// round to the nearest integer step; realized times are `(K - k) dt`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeMarch {
    t_final: f64,
    dt: f64,
    snapshot_times: Vec<f64>,
}

impl TimeMarch {
    pub fn new(t_final: f64, dt: f64, mut snapshot_times: Vec<f64>) -> Result<Self> {
        if !(t_final.is_finite() && t_final > 0.0) {
            return Err(Error::InvalidTimeMarch(format!(
                "horizon must be positive, got {t_final}"
            )));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidTimeMarch(format!(
                "dt must be positive, got {dt}"
            )));
        }
        let steps = t_final / dt;
        if (steps - steps.round()).abs() > steps.max(1.0) * 8.0 * f64::EPSILON {
            return Err(Error::InvalidTimeMarch(format!(
                "horizon {t_final} is not an integer number of steps of {dt}"
            )));
        }
        if steps.round() < 1.0 {
            return Err(Error::InvalidTimeMarch("at least one step required".into()));
        }
        let tol = 1e-9 * t_final.max(1.0);
        if snapshot_times
            .iter()
            .any(|t| !t.is_finite() || *t < -tol || *t > t_final + tol)
        {
            return Err(Error::InvalidTimeMarch(
                "snapshot times must lie in [0, T]".into(),
            ));
        }
        snapshot_times.sort_by(|a, b| a.total_cmp(b));
        snapshot_times.dedup();
        Ok(TimeMarch {
            t_final,
            dt,
            snapshot_times,
        })
    }

    pub fn t_final(&self) -> f64 {
        self.t_final
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn snapshot_times(&self) -> &[f64] {
        &self.snapshot_times
    }

    pub fn steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }

    /// `(step index k, realized t)` pairs, ascending in k (descending in t).
    /// Requested times that round to the same step are merged.
    pub fn snapshot_plan(&self) -> Vec<(usize, f64)> {
        let total = self.steps();
        let mut plan: Vec<(usize, f64)> = self
            .snapshot_times
            .iter()
            .map(|t| {
                let k = (((self.t_final - t) / self.dt).round() as usize).min(total);
                (k, (total - k) as f64 * self.dt)
            })
            .collect();
        plan.sort_by_key(|(k, _)| *k);
        plan.dedup_by_key(|(k, _)| *k);
        plan
    }
}

/// CFL number `max_speed * dt / dx`. Callers must reject values above one.
pub fn cfl_number(max_speed: f64, grid: &Grid1D, march: &TimeMarch) -> f64 {
    max_speed * march.dt() / grid.spacing()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_parameters_cfl() {
        let grid = Grid1D::new(0.0, 1.0, 200).unwrap();
        let march = TimeMarch::new(5.0, 1e-5, vec![]).unwrap();
        assert!((cfl_number(1.0, &grid, &march) - 0.002).abs() < 1e-15);
        assert_eq!(cfl_number(0.0, &grid, &march), 0.0);
        let coarse = TimeMarch::new(5.0, 1e-4, vec![]).unwrap();
        assert!((cfl_number(100.0, &grid, &coarse) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn horizon_must_divide() {
        assert!(TimeMarch::new(5.0, 1e-4, vec![]).is_ok());
        assert!(TimeMarch::new(0.25, 1e-4, vec![]).is_ok());
        assert!(TimeMarch::new(1.0, 0.3, vec![]).is_err());
        assert!(TimeMarch::new(1.0, -0.1, vec![]).is_err());
    }

    #[test]
    fn snapshot_plan_rounds_to_steps() {
        let march = TimeMarch::new(5.0, 1e-4, vec![0.0, 4.99, 5.0]).unwrap();
        let plan = march.snapshot_plan();
        assert_eq!(plan.len(), 3);
        assert_eq!(plan[0].0, 0);
        assert!((plan[0].1 - 5.0).abs() < 1e-9);
        assert_eq!(plan[1].0, 100);
        assert_eq!(plan[2], (50_000, 0.0));
        // the t = 0 realized time is exactly zero by construction
        assert_eq!(plan[2].1, 0.0);
    }

    #[test]
    fn snapshots_outside_horizon_rejected() {
        assert!(TimeMarch::new(1.0, 0.1, vec![1.5]).is_err());
        assert!(TimeMarch::new(1.0, 0.1, vec![-0.2]).is_err());
    }
}
