//! Declarative run configuration, the worked-example presets, cross-check
//! suites and artifact emission (CSV snapshots, run manifests, SVG plots)
//! for the two-state mean-field game solvers.

pub mod checks;
pub mod config;
pub mod csv;
pub mod presets;
pub mod runner;
pub mod svg;

use thiserror::Error;

/// CLI-level errors, classified for exit codes: configuration problems exit
/// with 2, numerical failures with 3 (check failures exit with 1 and are not
/// errors).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(mfg_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<mfg_core::Error> for CliError {
    fn from(e: mfg_core::Error) -> Self {
        use mfg_core::Error::*;
        match e {
            CflViolation { .. } | NonFiniteField { .. } | AtStep { .. }
            | InflowAtOutflow { .. } | NonMonotone { .. } => CliError::Numerical(e),
            other => CliError::Config(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
