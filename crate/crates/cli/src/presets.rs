//! The two worked-example run descriptions.
//!
//! Example I (shock formation): first-example costs, horizon `T = 5`,
//! terminal `w_T = 2 zeta - 1`. Example II (monotonicity loss): quartic
//! coupling with the sweep-selected kappa and orientation, horizon
//! `T = 0.25`, the same terminal profile. Both discretize with `N = 200`
//! intervals; the default step `1e-4` keeps first-order profiles
//! indistinguishable from the reference step `1e-5` at a tenth of the cost
//! (pass `--paper-exact` to the CLI to pin `1e-5`).

use mfg_core::numerics::BoundarySpec;
use mfg_core::solvers::{ProblemKind, TerminalPreset};

use crate::config::{
    GridConfig, ModelConfig, OutputConfig, RunConfig, TerminalConfig, TimeConfig,
};
use crate::{CliError, Result};

pub const DEFAULT_DT: f64 = 1e-4;
pub const PAPER_EXACT_DT: f64 = 1e-5;
pub const DEFAULT_INTERVALS: usize = 200;
/// Dual domain truncation `[-L, L]`; the terminal inverse profile is
/// constant outside `[-1, 1]`.
pub const DEFAULT_DUAL_HALF_WIDTH: f64 = 2.0;
/// State-constraint value for the potential primal problem, far above the
/// interior solution scale (~0.25 for Example I).
pub const DEFAULT_LARGE_VALUE: f64 = 10.0;

/// Run description for worked example 1 or 2 in the given formulation.
pub fn preset_example(id: u8, problem: ProblemKind) -> Result<RunConfig> {
    let (model, t_final) = match id {
        1 => (ModelConfig::Example1, 5.0),
        2 => (ModelConfig::Example2 { kappa: None }, 0.25),
        other => {
            return Err(CliError::Config(format!(
                "unknown example id {other}; use 1 or 2"
            )))
        }
    };
    let l = DEFAULT_DUAL_HALF_WIDTH;
    let grid = if problem.is_dual() {
        GridConfig {
            a: -l,
            b: l,
            n: DEFAULT_INTERVALS,
        }
    } else {
        GridConfig {
            a: 0.0,
            b: 1.0,
            n: DEFAULT_INTERVALS,
        }
    };
    let boundary = match problem {
        ProblemKind::ReducedPrimal => BoundarySpec::Outflow,
        ProblemKind::ReducedDual => BoundarySpec::Dirichlet {
            left_value: 1.0,
            right_value: 0.0,
        },
        ProblemKind::PotentialPrimal => BoundarySpec::LargeDirichlet {
            large_value: DEFAULT_LARGE_VALUE,
        },
        ProblemKind::PotentialDual => BoundarySpec::AsymptoticLinear {
            left_slope: 1.0,
            right_slope: 0.0,
        },
    };
    Ok(RunConfig {
        problem,
        model,
        grid,
        time: TimeConfig {
            t_final,
            dt: DEFAULT_DT,
        },
        terminal: TerminalConfig {
            preset: TerminalPreset::default_for(problem),
        },
        boundary,
        snapshots: vec![0.0, t_final],
        output: OutputConfig::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example1_reduced_primal_parameters() {
        let cfg = preset_example(1, ProblemKind::ReducedPrimal).unwrap();
        assert_eq!(cfg.time.t_final, 5.0);
        assert_eq!((cfg.grid.a, cfg.grid.b, cfg.grid.n), (0.0, 1.0, 200));
        assert_eq!(cfg.terminal.preset, TerminalPreset::LinearW);
        assert_eq!(cfg.boundary, BoundarySpec::Outflow);
        // terminal data realizes w_T = 2 zeta - 1
        let grid = cfg.build_grid().unwrap();
        let w = cfg.sample_terminal(&grid).unwrap();
        assert_eq!(w.value(0), -1.0);
        assert_eq!(w.value(200), 1.0);
    }

    #[test]
    fn example2_reduced_primal_parameters() {
        let cfg = preset_example(2, ProblemKind::ReducedPrimal).unwrap();
        assert_eq!(cfg.time.t_final, 0.25);
        assert_eq!(cfg.terminal.preset, TerminalPreset::LinearW);
        assert!(matches!(cfg.model, ModelConfig::Example2 { kappa: None }));
    }

    #[test]
    fn example1_reduced_dual_parameters() {
        let cfg = preset_example(1, ProblemKind::ReducedDual).unwrap();
        assert_eq!((cfg.grid.a, cfg.grid.b), (-2.0, 2.0));
        assert_eq!(
            cfg.boundary,
            BoundarySpec::Dirichlet {
                left_value: 1.0,
                right_value: 0.0
            }
        );
        assert_eq!(cfg.terminal.preset, TerminalPreset::DualInverseLinear);
    }

    #[test]
    fn unknown_id_is_config_error() {
        let err = preset_example(3, ProblemKind::ReducedPrimal).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn paper_exact_step_matches_reference() {
        let mut cfg = preset_example(1, ProblemKind::ReducedPrimal).unwrap();
        cfg.time.dt = PAPER_EXACT_DT;
        let march = cfg.build_march().unwrap();
        assert_eq!(march.steps(), 500_000);
    }
}
