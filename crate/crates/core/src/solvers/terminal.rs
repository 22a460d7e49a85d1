use serde::{Deserialize, Serialize};

use super::ProblemKind;
use crate::analysis::discrete_legendre;
use crate::numerics::{Field, Grid1D};
use crate::Result;

/// Named terminal profiles for the four formulations.
///
/// The value-difference data `w_T = 2 zeta - 1` pairs with the potential
/// `Y_T = zeta^2 - zeta` (its antiderivative), the clamped inverse
/// `Z_T = clamp((v + 1) / 2, 0, 1)`, and the discrete Legendre transform of
/// `Y_T` for the dual potential.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TerminalPreset {
    /// `w_T(zeta) = 2 zeta - 1`
    LinearW,
    /// `Y_T(zeta) = zeta^2 - zeta`
    PotentialLinear,
    /// `Z_T(v) = clamp((v + 1) / 2, 0, 1)`
    DualInverseLinear,
    /// `P_T = ` discrete Legendre transform of `Y_T` over `[0, 1]`
    DualPotentialLegendre,
}

impl TerminalPreset {
    /// The profile each formulation uses in the worked examples.
    pub fn default_for(problem: ProblemKind) -> TerminalPreset {
        match problem {
            ProblemKind::ReducedPrimal => TerminalPreset::LinearW,
            ProblemKind::PotentialPrimal => TerminalPreset::PotentialLinear,
            ProblemKind::ReducedDual => TerminalPreset::DualInverseLinear,
            ProblemKind::PotentialDual => TerminalPreset::DualPotentialLegendre,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TerminalPreset::LinearW => "linear-w",
            TerminalPreset::PotentialLinear => "potential-linear",
            TerminalPreset::DualInverseLinear => "dual-inverse-linear",
            TerminalPreset::DualPotentialLegendre => "dual-potential-legendre",
        }
    }

    /// Sample the profile on `grid`. The Legendre preset transforms
    /// `Y_T = zeta^2 - zeta` sampled on `[0, 1]` with the same interval count.
    pub fn sample(&self, grid: &Grid1D) -> Result<Field> {
        match self {
            TerminalPreset::LinearW => Field::sample(*grid, |x| 2.0 * x - 1.0),
            TerminalPreset::PotentialLinear => Field::sample(*grid, |x| x * x - x),
            TerminalPreset::DualInverseLinear => {
                Field::sample(*grid, |x| ((x + 1.0) / 2.0).clamp(0.0, 1.0))
            }
            TerminalPreset::DualPotentialLegendre => {
                let primal = Grid1D::new(0.0, 1.0, grid.intervals())?;
                let upsilon = Field::sample(primal, |x| x * x - x)?;
                discrete_legendre(&upsilon, grid)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_terminal_peak_value() {
        // sup over [0,1] of (zeta * 0 - zeta^2 + zeta) = 1/4 at zeta = 1/2
        let dual = Grid1D::new(-2.0, 2.0, 200).unwrap();
        let phi = TerminalPreset::DualPotentialLegendre.sample(&dual).unwrap();
        let mid = dual.node_count() / 2;
        assert_eq!(dual.node(mid), 0.0);
        assert!((phi.value(mid) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn clamped_inverse_profile() {
        let dual = Grid1D::new(-2.0, 2.0, 8).unwrap();
        let z = TerminalPreset::DualInverseLinear.sample(&dual).unwrap();
        assert_eq!(z.values(), &[0.0, 0.0, 0.0, 0.25, 0.5, 0.75, 1.0, 1.0, 1.0]);
    }
}
