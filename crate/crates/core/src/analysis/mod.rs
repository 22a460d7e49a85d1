//! Post-processing that operationalizes the cross-formulation equivalences:
//! discrete Legendre transforms, numerical inversion, shock and monotonicity
//! detection, and field comparison.

use crate::numerics::{Field, Grid1D};
use crate::solvers::SolutionTrace;
use crate::{Error, Result};

/// Default factor of [`shock_indicator`]: a snapshot is flagged when its
/// steepest one-sided slope reaches ten times the terminal one.
pub const DEFAULT_SLOPE_FACTOR: f64 = 10.0;

/// Default dead band of [`monotonicity_check`].
pub const DEFAULT_MONOTONE_TOL: f64 = 1e-10;

/// Norms of a field difference on a restricted interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComparisonReport {
    pub l_inf: f64,
    pub l1: f64,
    pub l2: f64,
    /// The interval actually compared (node range after restriction).
    pub restricted_domain: (f64, f64),
}

/// Slope and variation summary of one snapshot.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShockReport {
    pub t: f64,
    /// Largest one-sided slope magnitude.
    pub max_slope: f64,
    pub total_variation: f64,
    /// `max_slope >= slope_factor * (terminal max slope)`.
    pub shock_flag: bool,
    /// Midpoint of the steepest cell.
    pub location: f64,
}

/// Verdict of [`monotonicity_check`]. A constant field counts as increasing.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    NonMonotone { first_violation: f64 },
}

impl Monotonicity {
    pub fn is_monotone(&self) -> bool {
        !matches!(self, Monotonicity::NonMonotone { .. })
    }
}

/// Discrete Legendre transform `P(v_k) = max_j (zeta_j v_k - Y(zeta_j))` by
/// direct scan. The output is convex in `v` as a maximum of affine maps.
pub fn discrete_legendre(field: &Field, dual_grid: &Grid1D) -> Result<Field> {
    let xs: Vec<f64> = field.grid().nodes().collect();
    let us = field.values();
    let values = dual_grid
        .nodes()
        .map(|v| {
            xs.iter()
                .zip(us)
                .map(|(x, u)| x * v - u)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    Field::new(*dual_grid, values)
}

/// Piecewise-linear inversion: for each query `v` find `x` with
/// `field(x) = v`. Errors when a query is bracketed more than once (the
/// field is not monotone there) or not at all.
pub fn numerical_inverse(field: &Field, query_values: &[f64]) -> Result<Vec<f64>> {
    let grid = field.grid();
    let u = field.values();
    let dx = grid.spacing();
    let mut out = Vec::with_capacity(query_values.len());
    for &v in query_values {
        let mut found: Option<f64> = None;
        for j in 0..u.len() - 1 {
            let (a, b) = (u[j] - v, u[j + 1] - v);
            if a * b > 0.0 {
                continue;
            }
            if a == 0.0 && b == 0.0 {
                // flat at the query level: ambiguous bracket
                return Err(Error::NonMonotone { x: grid.node(j) });
            }
            let x = grid.node(j) + dx * a / (a - b);
            match found {
                Some(prev) if (x - prev).abs() > dx * 1e-9 => {
                    return Err(Error::NonMonotone { x });
                }
                Some(_) => {}
                None => found = Some(x),
            }
        }
        out.push(found.ok_or(Error::QueryOutOfRange { value: v })?);
    }
    Ok(out)
}

/// Per-snapshot slope and total-variation report. The baseline slope is the
/// snapshot at the largest recorded `t` (the terminal data); one-sided
/// differences keep shock magnitudes unsmeared.
pub fn shock_indicator(trace: &SolutionTrace, slope_factor: f64) -> Vec<ShockReport> {
    let baseline = trace
        .terminal_snapshot()
        .map(|(_, f)| max_slope_of(f).0)
        .unwrap_or(0.0);
    trace
        .snapshots
        .iter()
        .map(|(t, f)| {
            let (max_slope, location) = max_slope_of(f);
            let total_variation = f
                .values()
                .windows(2)
                .map(|w| (w[1] - w[0]).abs())
                .sum::<f64>();
            ShockReport {
                t: *t,
                max_slope,
                total_variation,
                shock_flag: max_slope >= slope_factor * baseline && baseline > 0.0,
                location,
            }
        })
        .collect()
}

fn max_slope_of(f: &Field) -> (f64, f64) {
    let dx = f.grid().spacing();
    let mut best = (0.0f64, f.grid().a());
    for j in 0..f.len() - 1 {
        let s = ((f.value(j + 1) - f.value(j)) / dx).abs();
        if s > best.0 {
            best = (s, f.grid().node(j) + 0.5 * dx);
        }
    }
    best
}

/// Classifies a field by the signs of consecutive differences, ignoring
/// those at or below `tolerance`. A field with no significant differences is
/// reported increasing by convention.
pub fn monotonicity_check(field: &Field, tolerance: f64) -> Monotonicity {
    let u = field.values();
    let mut direction = 0i8;
    for j in 0..u.len() - 1 {
        let d = u[j + 1] - u[j];
        let sign = if d > tolerance {
            1
        } else if d < -tolerance {
            -1
        } else {
            continue;
        };
        if direction == 0 {
            direction = sign;
        } else if sign != direction {
            return Monotonicity::NonMonotone {
                first_violation: field.grid().node(j),
            };
        }
    }
    if direction < 0 {
        Monotonicity::Decreasing
    } else {
        Monotonicity::Increasing
    }
}

/// L-infinity, trapezoid L1 and L2 norms of `f - g` over the nodes of `f`
/// inside `restrict`, with `g` resampled by linear interpolation.
pub fn compare_fields(f: &Field, g: &Field, restrict: (f64, f64)) -> Result<ComparisonReport> {
    let lo = restrict.0.max(f.grid().a()).max(g.grid().a());
    let hi = restrict.1.min(f.grid().b()).min(g.grid().b());
    if lo >= hi {
        return Err(Error::EmptyOverlap);
    }
    let rf = f.restrict(lo, hi)?;
    let diffs: Vec<f64> = rf
        .grid()
        .nodes()
        .zip(rf.values())
        .map(|(x, u)| g.interpolate(x).map(|gv| u - gv))
        .collect::<Result<_>>()?;
    if diffs.len() < 2 {
        return Err(Error::EmptyOverlap);
    }
    let dx = rf.grid().spacing();
    let l_inf = diffs.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let l1 = trapezoid(diffs.iter().map(|d| d.abs()), dx);
    let l2 = trapezoid(diffs.iter().map(|d| d * d), dx).sqrt();
    Ok(ComparisonReport {
        l_inf,
        l1,
        l2,
        restricted_domain: (rf.grid().a(), rf.grid().b()),
    })
}

fn trapezoid(vals: impl Iterator<Item = f64>, dx: f64) -> f64 {
    let v: Vec<f64> = vals.collect();
    if v.len() < 2 {
        return 0.0;
    }
    let inner: f64 = v[1..v.len() - 1].iter().sum();
    dx * (0.5 * (v[0] + v[v.len() - 1]) + inner)
}

/// Checks the inversion relation between a primal and a dual run at time `t`:
/// the dual field evaluated at `w(zeta_j, t)` should return `zeta_j`.
/// Compared on the interior restriction `[0.1, 0.9]`, away from the dual
/// boundary layers; errors when the primal snapshot is not monotone.
pub fn inversion_consistency(
    primal: &SolutionTrace,
    dual: &SolutionTrace,
    t: f64,
) -> Result<ComparisonReport> {
    let w = primal.snapshot_at(t)?;
    let z = dual.snapshot_at(t)?;
    if let Monotonicity::NonMonotone { first_violation } =
        monotonicity_check(w, DEFAULT_MONOTONE_TOL)
    {
        return Err(Error::NonMonotone {
            x: first_violation,
        });
    }
    let restricted = w.restrict(0.1, 0.9)?;
    let diffs: Vec<f64> = restricted
        .grid()
        .nodes()
        .zip(restricted.values())
        .map(|(zeta, wv)| z.interpolate(*wv).map(|zz| zz - zeta))
        .collect::<Result<_>>()?;
    let dx = restricted.grid().spacing();
    Ok(ComparisonReport {
        l_inf: diffs.iter().fold(0.0f64, |m, d| m.max(d.abs())),
        l1: trapezoid(diffs.iter().map(|d| d.abs()), dx),
        l2: trapezoid(diffs.iter().map(|d| d * d), dx).sqrt(),
        restricted_domain: (restricted.grid().a(), restricted.grid().b()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_field(n: usize, f: impl Fn(f64) -> f64) -> Field {
        Field::sample(Grid1D::new(0.0, 1.0, n).unwrap(), f).unwrap()
    }

    #[test]
    fn legendre_of_parabola() {
        let u = unit_field(400, |x| x * x - x);
        let dual = Grid1D::new(-2.0, 2.0, 400).unwrap();
        let phi = discrete_legendre(&u, &dual).unwrap();
        let mid = 200;
        assert_eq!(dual.node(mid), 0.0);
        assert!((phi.value(mid) - 0.25).abs() < 1e-12);
        // analytic transform: (v+1)^2/4 on [-1,1], 0 below, v above
        for (j, v) in dual.nodes().enumerate() {
            let exact = if v < -1.0 {
                0.0
            } else if v > 1.0 {
                v
            } else {
                (v + 1.0) * (v + 1.0) / 4.0
            };
            assert!(
                (phi.value(j) - exact).abs() < 1e-4,
                "v = {v}: {} vs {exact}",
                phi.value(j)
            );
        }
    }

    #[test]
    fn legendre_of_zero_is_positive_part() {
        let u = unit_field(100, |_| 0.0);
        let dual = Grid1D::new(-2.0, 2.0, 40).unwrap();
        let phi = discrete_legendre(&u, &dual).unwrap();
        for (j, v) in dual.nodes().enumerate() {
            assert_relative_eq!(phi.value(j), v.max(0.0), epsilon = 1e-14);
        }
    }

    #[test]
    fn legendre_double_transform_recovers_convex_input() {
        let u = unit_field(400, |x| x * x - x);
        let dual = Grid1D::new(-2.0, 2.0, 400).unwrap();
        let phi = discrete_legendre(&u, &dual).unwrap();
        let back = discrete_legendre(&phi, u.grid()).unwrap();
        for j in 0..u.len() {
            let d = back.value(j) - u.value(j);
            // Fenchel direction: the double transform never exceeds the input
            assert!(d <= 1e-12, "node {j}: above by {d}");
            assert!(d.abs() <= 2e-3, "node {j}: off by {d}");
        }
    }

    #[test]
    fn inverse_of_linear_data() {
        let w = unit_field(200, |x| 2.0 * x - 1.0);
        let xs = numerical_inverse(&w, &[0.0, 0.5]).unwrap();
        assert!((xs[0] - 0.5).abs() < 1e-12);
        assert!((xs[1] - 0.75).abs() < 1e-12);
        assert!(matches!(
            numerical_inverse(&w, &[2.0]),
            Err(Error::QueryOutOfRange { .. })
        ));
    }

    #[test]
    fn inverse_rejects_non_monotone_bracket() {
        let w = unit_field(100, |x| (x - 0.5) * (x - 0.5));
        assert!(matches!(
            numerical_inverse(&w, &[0.1]),
            Err(Error::NonMonotone { .. })
        ));
    }

    #[test]
    fn inverse_composed_with_forward_is_identity() {
        let w = unit_field(57, |x| x.exp());
        let queries: Vec<f64> = (1..10).map(|k| (k as f64 / 10.0).exp()).collect();
        let xs = numerical_inverse(&w, &queries).unwrap();
        let dx = w.grid().spacing();
        for (x, q) in xs.iter().zip(&queries) {
            // one grid cell's linear-interpolation error budget
            assert!((w.interpolate(*x).unwrap() - q).abs() < dx * dx);
        }
    }

    #[test]
    fn monotonicity_verdicts() {
        assert_eq!(
            monotonicity_check(&unit_field(50, |x| 2.0 * x - 1.0), DEFAULT_MONOTONE_TOL),
            Monotonicity::Increasing
        );
        assert_eq!(
            monotonicity_check(&unit_field(50, |x| -x), DEFAULT_MONOTONE_TOL),
            Monotonicity::Decreasing
        );
        assert_eq!(
            monotonicity_check(&unit_field(50, |_| 3.0), DEFAULT_MONOTONE_TOL),
            Monotonicity::Increasing
        );
        let bump = unit_field(50, |x| -(x - 0.5) * (x - 0.5));
        match monotonicity_check(&bump, DEFAULT_MONOTONE_TOL) {
            Monotonicity::NonMonotone { first_violation } => {
                assert!((first_violation - 0.5).abs() < 0.05)
            }
            v => panic!("expected non-monotone, got {v:?}"),
        }
    }

    #[test]
    fn monotonicity_invariant_under_constant_shift() {
        let f = unit_field(64, |x| (6.0 * x).sin());
        let g = unit_field(64, |x| (6.0 * x).sin() + 10.0);
        assert_eq!(
            monotonicity_check(&f, DEFAULT_MONOTONE_TOL),
            monotonicity_check(&g, DEFAULT_MONOTONE_TOL)
        );
    }

    #[test]
    fn constant_field_has_no_shock() {
        use crate::numerics::TimeMarch;
        use crate::solvers::{Diagnostics, ProblemKind};
        let grid = Grid1D::new(0.0, 1.0, 16).unwrap();
        let trace = SolutionTrace {
            problem: ProblemKind::ReducedPrimal,
            grid,
            march: TimeMarch::new(1.0, 0.5, vec![0.0, 1.0]).unwrap(),
            snapshots: vec![
                (1.0, Field::constant(grid, 2.0).unwrap()),
                (0.0, Field::constant(grid, 2.0).unwrap()),
            ],
            diagnostics: Diagnostics {
                steps: 2,
                max_abs_velocity: 0.0,
                max_cfl: 0.0,
                min_value: 2.0,
                max_value: 2.0,
                range_alert: false,
                boundary_slope_alert: false,
            },
        };
        for report in shock_indicator(&trace, DEFAULT_SLOPE_FACTOR) {
            assert_eq!(report.max_slope, 0.0);
            assert_eq!(report.total_variation, 0.0);
            assert!(!report.shock_flag);
        }
    }

    #[test]
    fn inversion_exact_at_terminal_pair() {
        use crate::model::CostModel;
        use crate::numerics::{BoundarySpec, TimeMarch};
        use crate::solvers::{solve_reduced_dual, solve_reduced_primal, TerminalPreset};
        // one tiny step so that both traces still carry the exact terminal
        // data at t = T
        let model = CostModel::example1();
        let dt = 1e-4;
        let pg = Grid1D::new(0.0, 1.0, 200).unwrap();
        let pm = TimeMarch::new(dt, dt, vec![dt]).unwrap();
        let primal = solve_reduced_primal(
            &model,
            &pg,
            &pm,
            &TerminalPreset::LinearW.sample(&pg).unwrap(),
        )
        .unwrap();
        let dg = Grid1D::new(-2.0, 2.0, 200).unwrap();
        let dual = solve_reduced_dual(
            &model,
            &dg,
            &pm,
            &TerminalPreset::DualInverseLinear.sample(&dg).unwrap(),
            &BoundarySpec::Dirichlet {
                left_value: 1.0,
                right_value: 0.0,
            },
        )
        .unwrap();
        let rep = inversion_consistency(&primal, &dual, dt).unwrap();
        assert!(rep.l_inf < 1e-12, "l_inf = {}", rep.l_inf);
    }

    #[test]
    fn shock_reports_invariant_under_constant_shift() {
        use crate::numerics::TimeMarch;
        use crate::solvers::{Diagnostics, ProblemKind};
        // dyadic samples and a dyadic shift keep the differences bit-exact
        let grid = Grid1D::new(0.0, 1.0, 16).unwrap();
        let trace_of = |shift: f64| SolutionTrace {
            problem: ProblemKind::ReducedPrimal,
            grid,
            march: TimeMarch::new(1.0, 0.5, vec![0.0, 1.0]).unwrap(),
            snapshots: vec![
                (1.0, Field::sample(grid, |x| 2.0 * x - 1.0 + shift).unwrap()),
                (
                    0.0,
                    Field::sample(grid, |x| (x - 0.5).abs() * 8.0 + shift).unwrap(),
                ),
            ],
            diagnostics: Diagnostics {
                steps: 2,
                max_abs_velocity: 0.0,
                max_cfl: 0.0,
                min_value: 0.0,
                max_value: 0.0,
                range_alert: false,
                boundary_slope_alert: false,
            },
        };
        let base = shock_indicator(&trace_of(0.0), DEFAULT_SLOPE_FACTOR);
        let shifted = shock_indicator(&trace_of(16.0), DEFAULT_SLOPE_FACTOR);
        for (a, b) in base.iter().zip(&shifted) {
            assert_eq!(a.max_slope, b.max_slope);
            assert_eq!(a.total_variation, b.total_variation);
            assert_eq!(a.shock_flag, b.shock_flag);
            assert_eq!(a.location, b.location);
        }
    }

    #[test]
    fn comparison_norms() {
        let f = unit_field(100, |_| 1.0);
        let g = unit_field(100, |_| 0.0);
        let rep = compare_fields(&f, &g, (0.0, 1.0)).unwrap();
        assert_relative_eq!(rep.l_inf, 1.0);
        assert_relative_eq!(rep.l1, 1.0, epsilon = 1e-12);
        assert_relative_eq!(rep.l2, 1.0, epsilon = 1e-12);

        let f = unit_field(100, |x| x);
        let g = unit_field(100, |x| x + 0.01);
        let rep = compare_fields(&f, &g, (0.0, 1.0)).unwrap();
        assert_relative_eq!(rep.l_inf, 0.01, epsilon = 1e-14);
        assert_relative_eq!(rep.l1, 0.01, epsilon = 1e-14);

        let same = compare_fields(&f, &f, (0.2, 0.8)).unwrap();
        assert_eq!((same.l_inf, same.l1, same.l2), (0.0, 0.0, 0.0));
    }

    #[test]
    fn comparison_requires_overlap() {
        let f = unit_field(10, |x| x);
        let g = Field::sample(Grid1D::new(2.0, 3.0, 10).unwrap(), |x| x).unwrap();
        assert!(matches!(
            compare_fields(&f, &g, (0.0, 3.0)),
            Err(Error::EmptyOverlap)
        ));
    }

    #[test]
    fn comparison_is_symmetric_up_to_resampling() {
        let f = unit_field(100, |x| x * x);
        let g = unit_field(140, |x| x * x + 0.05 * (3.0 * x).cos());
        let a = compare_fields(&f, &g, (0.1, 0.9)).unwrap();
        let b = compare_fields(&g, &f, (0.1, 0.9)).unwrap();
        assert!((a.l_inf - b.l_inf).abs() < 1e-3);
        assert!((a.l1 - b.l1).abs() < 1e-3);
    }
}
