//! The two Hamilton-Jacobi formulations, marched with Godunov's method.

use arrayvec::ArrayVec;

use super::{
    check_dual_domain, check_primal_domain, check_terminal, MarchRecorder, ProblemKind,
    SolutionTrace,
};
use crate::model::{CostModel, Polynomial};
use crate::numerics::{godunov_step, BoundarySpec, Field, Grid1D, GodunovHamiltonian, TimeMarch};
use crate::{Error, Result};

/// Flux Hamiltonian of the potential primal march:
/// `Hhat(zeta, p) = 0.5 [zeta (p^+)^2 + (1-zeta) (p^-)^2] - phi(zeta)`,
/// the negative of the reduced Hamiltonian. Convex in `p` with its only
/// interior extremum at the kink `p = 0`.
struct PrimalFluxHamiltonian<'a> {
    phi: &'a Polynomial,
}

impl GodunovHamiltonian for PrimalFluxHamiltonian<'_> {
    fn eval(&self, x: f64, p: f64) -> f64 {
        let up = p.max(0.0);
        let dn = (-p).max(0.0);
        0.5 * (x * up * up + (1.0 - x) * dn * dn) - self.phi.eval(x)
    }

    fn critical_points(&self, _x: f64) -> Option<ArrayVec<f64, 4>> {
        let mut v = ArrayVec::new();
        v.push(0.0);
        Some(v)
    }
}

/// Flux Hamiltonian of the potential dual march: the reduced dual
/// Hamiltonian itself, `Hhat(v, p) = -0.5 [(v^-)^2 + p |v| v] + phi(p)`.
/// Its interior extrema in `p` solve `phi'(p) = 0.5 v |v|`, a polynomial
/// equation of the potential's degree minus one (undeclared beyond cubic,
/// which triggers the kernel's dense fallback).
struct DualFluxHamiltonian<'a> {
    phi: &'a Polynomial,
    dphi: Polynomial,
}

impl GodunovHamiltonian for DualFluxHamiltonian<'_> {
    fn eval(&self, x: f64, p: f64) -> f64 {
        let dn = (-x).max(0.0);
        -0.5 * (dn * dn + p * x.abs() * x) + self.phi.eval(p)
    }

    fn critical_points(&self, x: f64) -> Option<ArrayVec<f64, 4>> {
        self.dphi.real_roots_shifted(0.5 * x * x.abs())
    }
}

/// Potential primal problem `Y_tau + Hhat(zeta, Y_zeta) = 0` on `[0, 1]`,
/// state constraints emulated by holding both boundary nodes at the large
/// Dirichlet value (imposed on the terminal data as well).
pub fn solve_potential_primal(
    model: &CostModel,
    grid: &Grid1D,
    march: &TimeMarch,
    terminal: &Field,
    boundary: &BoundarySpec,
) -> Result<SolutionTrace> {
    check_primal_domain(grid)?;
    check_terminal(grid, terminal)?;
    boundary.validate()?;
    let large_value = match *boundary {
        BoundarySpec::LargeDirichlet { large_value } => large_value,
        other => {
            return Err(Error::BoundaryMismatch {
                solver: "potential-primal",
                got: other.kind_name().into(),
            })
        }
    };
    let phi = model.potential().ok_or(Error::MissingPotential)?;
    let hamiltonian = PrimalFluxHamiltonian { phi };

    let n = grid.intervals();
    let mut state = terminal.clone();
    {
        let v = state.values_mut();
        v[0] = large_value;
        v[n] = large_value;
    }

    let mut rec = MarchRecorder::new(march);
    rec.observe(0, &state);
    for k in 1..=march.steps() {
        let (next, stats) = godunov_step(&state, &hamiltonian, march.dt(), boundary)
            .map_err(|e| e.at_step(k))?;
        state = next;
        rec.stats(stats);
        rec.observe(k, &state);
    }
    Ok(rec.finish(ProblemKind::PotentialPrimal, *grid, march.clone(), |_| {}))
}

/// Potential dual problem `P_tau + Hhat(v, P_v) = 0` on `[-L, L]` with
/// asymptotically linear boundaries: each end is extrapolated from its
/// neighbor with the far-field slope (1 on the left, 0 on the right by
/// default), both initially and after every step.
pub fn solve_potential_dual(
    model: &CostModel,
    grid: &Grid1D,
    march: &TimeMarch,
    terminal: &Field,
    boundary: &BoundarySpec,
) -> Result<SolutionTrace> {
    check_dual_domain(grid)?;
    check_terminal(grid, terminal)?;
    boundary.validate()?;
    let (left_slope, right_slope) = match *boundary {
        BoundarySpec::AsymptoticLinear {
            left_slope,
            right_slope,
        } => (left_slope, right_slope),
        other => {
            return Err(Error::BoundaryMismatch {
                solver: "potential-dual",
                got: other.kind_name().into(),
            })
        }
    };
    let phi = model.potential().ok_or(Error::MissingPotential)?;
    let hamiltonian = DualFluxHamiltonian {
        phi,
        dphi: phi.derivative(),
    };

    let n = grid.intervals();
    let dx = grid.spacing();
    let mut state = terminal.clone();
    {
        let v = state.values_mut();
        v[0] = v[1] - left_slope * dx;
        v[n] = v[n - 1] + right_slope * dx;
    }

    let mut rec = MarchRecorder::new(march);
    rec.observe(0, &state);
    for k in 1..=march.steps() {
        let (next, stats) = godunov_step(&state, &hamiltonian, march.dt(), boundary)
            .map_err(|e| e.at_step(k))?;
        state = next;
        rec.stats(stats);
        rec.observe(k, &state);
    }
    Ok(rec.finish(ProblemKind::PotentialDual, *grid, march.clone(), |_| {}))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::TerminalPreset;
    use approx::assert_relative_eq;

    fn large() -> BoundarySpec {
        BoundarySpec::LargeDirichlet { large_value: 10.0 }
    }

    fn slopes() -> BoundarySpec {
        BoundarySpec::AsymptoticLinear {
            left_slope: 1.0,
            right_slope: 0.0,
        }
    }

    #[test]
    fn rest_state_with_flat_potential() {
        // f1 = f2 = 0 so phi = 0 and H(0) = 0: the zero field only feels the
        // state-constraint spikes pinned at the ends, which Godunov ignores.
        let model = CostModel::from_polynomials(vec![0.0], vec![0.0], true).unwrap();
        let grid = Grid1D::new(0.0, 1.0, 20).unwrap();
        let march = TimeMarch::new(0.01, 1e-3, vec![0.0]).unwrap();
        let terminal = Field::constant(grid, 0.0).unwrap();
        let trace = solve_potential_primal(&model, &grid, &march, &terminal, &large()).unwrap();
        let u = trace.snapshot_at(0.0).unwrap();
        for j in 1..20 {
            assert_eq!(u.value(j), 0.0, "node {j}");
        }
        assert_eq!(u.value(0), 10.0);
        assert_eq!(u.value(20), 10.0);
    }

    #[test]
    fn primal_single_step_at_flat_slope() {
        // terminal zeta^2 - zeta has centered slope 0 at zeta = 1/2, where
        // the increment is dt * H(0, 1/2) = dt * F(1/2) = dt/4
        let model = CostModel::example1();
        let grid = Grid1D::new(0.0, 1.0, 20).unwrap();
        let dt = 1e-3;
        let march = TimeMarch::new(dt, dt, vec![0.0]).unwrap();
        let terminal = TerminalPreset::PotentialLinear.sample(&grid).unwrap();
        let trace = solve_potential_primal(&model, &grid, &march, &terminal, &large()).unwrap();
        let u = trace.snapshot_at(0.0).unwrap();
        let mid = 10;
        assert_eq!(grid.node(mid), 0.5);
        assert_relative_eq!(
            u.value(mid),
            terminal.value(mid) + dt * 0.25,
            epsilon = 1e-12
        );
    }

    #[test]
    fn potential_primal_requires_large_dirichlet() {
        let model = CostModel::example1();
        let grid = Grid1D::new(0.0, 1.0, 10).unwrap();
        let march = TimeMarch::new(0.01, 1e-3, vec![]).unwrap();
        let terminal = Field::constant(grid, 0.0).unwrap();
        let err =
            solve_potential_primal(&model, &grid, &march, &terminal, &BoundarySpec::Outflow);
        assert!(matches!(err, Err(Error::BoundaryMismatch { .. })));
    }

    #[test]
    fn potential_primal_needs_a_potential() {
        let model = CostModel::from_polynomials(vec![1.0], vec![0.0], false).unwrap();
        let grid = Grid1D::new(0.0, 1.0, 10).unwrap();
        let march = TimeMarch::new(0.01, 1e-3, vec![]).unwrap();
        let terminal = Field::constant(grid, 0.0).unwrap();
        let err = solve_potential_primal(&model, &grid, &march, &terminal, &large());
        assert!(matches!(err, Err(Error::MissingPotential)));
    }

    #[test]
    fn dual_single_step_from_zero_with_flat_potential() {
        // phi = 0, P_T = 0: slopes vanish so the flux is H(v, 0) = -(v^-)^2/2
        // and one step yields P = dt * (v^-)^2 / 2 away from the ends.
        let model = CostModel::from_polynomials(vec![0.0], vec![0.0], true).unwrap();
        let grid = Grid1D::new(-2.0, 2.0, 20).unwrap();
        let dt = 1e-3;
        let march = TimeMarch::new(dt, dt, vec![0.0]).unwrap();
        let terminal = Field::constant(grid, 0.0).unwrap();
        let boundary = BoundarySpec::AsymptoticLinear {
            left_slope: 0.0,
            right_slope: 0.0,
        };
        let trace = solve_potential_dual(&model, &grid, &march, &terminal, &boundary).unwrap();
        let p = trace.snapshot_at(0.0).unwrap();
        for j in 2..19 {
            let v = grid.node(j);
            let dn = (-v).max(0.0);
            assert_relative_eq!(p.value(j), dt * 0.5 * dn * dn, epsilon = 1e-14);
        }
        // at v > 0 the increment vanishes
        assert_eq!(p.value(15), 0.0);
    }

    #[test]
    fn dual_boundary_extrapolation_slopes() {
        let model = CostModel::example1();
        let grid = Grid1D::new(-2.0, 2.0, 200).unwrap();
        let march = TimeMarch::new(0.01, 1e-4, vec![0.0]).unwrap();
        let terminal = TerminalPreset::DualPotentialLegendre.sample(&grid).unwrap();
        let trace = solve_potential_dual(&model, &grid, &march, &terminal, &slopes()).unwrap();
        let p = trace.snapshot_at(0.0).unwrap();
        let dx = grid.spacing();
        assert_relative_eq!((p.value(1) - p.value(0)) / dx, 1.0, epsilon = 1e-12);
        assert_relative_eq!((p.value(200) - p.value(199)) / dx, 0.0, epsilon = 1e-12);
    }
}
