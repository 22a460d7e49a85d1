//! Cross-check suites: fast model-identity checks (`consistency`) and the
//! end-to-end worked-example reproductions (`examples`). Each check prints
//! one pass/fail line through the CLI and doubles as an acceptance predicate
//! for the integration suite.

use std::time::Instant;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use mfg_core::analysis::{
    compare_fields, discrete_legendre, inversion_consistency, monotonicity_check, shock_indicator,
    Monotonicity, DEFAULT_MONOTONE_TOL, DEFAULT_SLOPE_FACTOR,
};
use mfg_core::model::{optimal_rate, CostModel, ProbabilityPair, State, ValuePair};
use mfg_core::numerics::{central_gradient, BoundarySpec, Field, Grid1D, TimeMarch};
use mfg_core::solvers::{
    solve_potential_dual, solve_potential_primal, solve_reduced_dual, solve_reduced_primal,
    ProblemKind, SolutionTrace, TerminalPreset,
};

use crate::config::EXAMPLE2_DEFAULT_KAPPA;
use crate::presets::{preset_example, DEFAULT_LARGE_VALUE};
use crate::{CliError, Result};

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} criterion {:2} ({}): {} [{:.2}s]",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.seconds
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Consistency,
    Examples,
}

pub fn run_suite(suite: Suite) -> Vec<CheckOutcome> {
    match suite {
        Suite::Consistency => vec![
            criterion_1_coefficient_identities(),
            criterion_2_rate_gradient_identity(),
            criterion_3_legendre_closed_form(),
        ],
        Suite::Examples => vec![
            criterion_4_example1_shock(),
            criterion_5_example1_dual_layer(),
            criterion_6_cross_formulation(),
            criterion_7_primal_dual_inversion(),
            criterion_8_example2_monotonicity_loss(),
            criterion_9_characteristics_oracle(),
            criterion_10_convergence_order(),
            criterion_11_legendre_involution(),
            criterion_12_determinism_and_formats(),
        ],
    }
}

fn finish(
    id: usize,
    name: &'static str,
    started: Instant,
    budget: Option<f64>,
    passed: bool,
    detail: String,
) -> CheckOutcome {
    let seconds = started.elapsed().as_secs_f64();
    let within_budget = budget.is_none_or(|b| seconds < b);
    let detail = if within_budget {
        detail
    } else {
        format!("{detail}; runtime {seconds:.1}s exceeded {}s", budget.unwrap())
    };
    CheckOutcome {
        id,
        name,
        passed: passed && within_budget,
        detail,
        seconds,
    }
}

fn fail(id: usize, name: &'static str, started: Instant, err: &CliError) -> CheckOutcome {
    finish(id, name, started, None, false, format!("error: {err}"))
}

fn example2_default_model() -> CostModel {
    CostModel::example2_paper(EXAMPLE2_DEFAULT_KAPPA).expect("default kappa is valid")
}

fn primal_grid(n: usize) -> Grid1D {
    Grid1D::new(0.0, 1.0, n).expect("valid grid")
}

fn dual_grid(n: usize) -> Grid1D {
    Grid1D::new(-2.0, 2.0, n).expect("valid grid")
}

fn run_reduced_primal(
    model: &CostModel,
    n: usize,
    t_final: f64,
    dt: f64,
    snaps: Vec<f64>,
) -> Result<SolutionTrace> {
    let grid = primal_grid(n);
    let march = TimeMarch::new(t_final, dt, snaps)?;
    let terminal = TerminalPreset::LinearW.sample(&grid)?;
    Ok(solve_reduced_primal(model, &grid, &march, &terminal)?)
}

fn run_reduced_dual(
    model: &CostModel,
    n: usize,
    t_final: f64,
    dt: f64,
    snaps: Vec<f64>,
) -> Result<SolutionTrace> {
    let grid = dual_grid(n);
    let march = TimeMarch::new(t_final, dt, snaps)?;
    let terminal = TerminalPreset::DualInverseLinear.sample(&grid)?;
    let boundary = BoundarySpec::Dirichlet {
        left_value: 1.0,
        right_value: 0.0,
    };
    Ok(solve_reduced_dual(model, &grid, &march, &terminal, &boundary)?)
}

fn run_potential_primal(
    model: &CostModel,
    n: usize,
    t_final: f64,
    dt: f64,
    snaps: Vec<f64>,
) -> Result<SolutionTrace> {
    let grid = primal_grid(n);
    let march = TimeMarch::new(t_final, dt, snaps)?;
    let terminal = TerminalPreset::PotentialLinear.sample(&grid)?;
    let boundary = BoundarySpec::LargeDirichlet {
        large_value: DEFAULT_LARGE_VALUE,
    };
    Ok(solve_potential_primal(
        model, &grid, &march, &terminal, &boundary,
    )?)
}

fn run_potential_dual(
    model: &CostModel,
    n: usize,
    t_final: f64,
    dt: f64,
    snaps: Vec<f64>,
) -> Result<SolutionTrace> {
    let grid = dual_grid(n);
    let march = TimeMarch::new(t_final, dt, snaps)?;
    let terminal = TerminalPreset::DualPotentialLegendre.sample(&grid)?;
    let boundary = BoundarySpec::AsymptoticLinear {
        left_slope: 1.0,
        right_slope: 0.0,
    };
    Ok(solve_potential_dual(
        model, &grid, &march, &terminal, &boundary,
    )?)
}

fn max_one_sided_slope(f: &Field) -> f64 {
    let dx = f.grid().spacing();
    f.values()
        .windows(2)
        .map(|w| ((w[1] - w[0]) / dx).abs())
        .fold(0.0, f64::max)
}

/// Criterion 1: `|q - dH/dzeta| <= 1e-6` and `|r + dH/dp| <= 1e-6` at 1000
/// sampled points for both example models.
pub fn criterion_1_coefficient_identities() -> CheckOutcome {
    const NAME: &str = "coefficient identities";
    let t0 = Instant::now();
    const STEP: f64 = 1e-5;
    let mut worst: f64 = 0.0;
    for model in [CostModel::example1(), example2_default_model()] {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for _ in 0..1000 {
            let mut w: f64 = rng.gen_range(-5.0..=5.0);
            while w.abs() < 1e-3 {
                w = rng.gen_range(-5.0..=5.0);
            }
            let zeta = rng.gen_range(0.01..=0.99);
            let dh_dzeta = (model.h_primal(w, zeta + STEP).unwrap()
                - model.h_primal(w, zeta - STEP).unwrap())
                / (2.0 * STEP);
            let dh_dp = (model.h_primal(w + STEP, zeta).unwrap()
                - model.h_primal(w - STEP, zeta).unwrap())
                / (2.0 * STEP);
            worst = worst
                .max((model.reduced_q(w, zeta).unwrap() - dh_dzeta).abs())
                .max((model.reduced_r(w, zeta).unwrap() + dh_dp).abs());
        }
    }
    finish(
        1,
        NAME,
        t0,
        Some(1.0),
        worst <= 1e-6,
        format!("worst deviation {worst:.2e} (tol 1e-6) over 2 x 1000 samples"),
    )
}

/// Criterion 2: the optimal rate toward the other state equals the
/// finite-difference z-derivative of the Hamiltonian within 1e-6.
pub fn criterion_2_rate_gradient_identity() -> CheckOutcome {
    const NAME: &str = "rate-gradient identity";
    let t0 = Instant::now();
    const STEP: f64 = 1e-6;
    let model = CostModel::example1();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let mut z1: f64 = rng.gen_range(-3.0..=3.0);
        let z2: f64 = rng.gen_range(-3.0..=3.0);
        while (z1 - z2).abs() < 0.01 {
            z1 = rng.gen_range(-3.0..=3.0);
        }
        let theta = ProbabilityPair::from_zeta(rng.gen_range(0.0..=1.0)).unwrap();
        for state in [State::One, State::Two] {
            let rate = optimal_rate(ValuePair::new(z1, z2).unwrap(), state);
            let (toward, numeric) = match state {
                State::One => (
                    rate.alpha2,
                    (model.hamiltonian(ValuePair::new(z1, z2 + STEP).unwrap(), theta, state)
                        - model.hamiltonian(
                            ValuePair::new(z1, z2 - STEP).unwrap(),
                            theta,
                            state,
                        ))
                        / (2.0 * STEP),
                ),
                State::Two => (
                    rate.alpha1,
                    (model.hamiltonian(ValuePair::new(z1 + STEP, z2).unwrap(), theta, state)
                        - model.hamiltonian(
                            ValuePair::new(z1 - STEP, z2).unwrap(),
                            theta,
                            state,
                        ))
                        / (2.0 * STEP),
                ),
            };
            worst = worst.max((toward - numeric).abs());
        }
    }
    finish(
        2,
        NAME,
        t0,
        Some(1.0),
        worst <= 1e-6,
        format!("worst deviation {worst:.2e} (tol 1e-6) over 100 samples"),
    )
}

/// Criterion 3: the closed-form Hamiltonian matches brute-force grid
/// minimization of the running cost within 1e-4.
pub fn criterion_3_legendre_closed_form() -> CheckOutcome {
    const NAME: &str = "closed form vs brute force";
    let t0 = Instant::now();
    let model = CostModel::example1();
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let z = ValuePair::new(rng.gen_range(-3.0..=3.0), rng.gen_range(-3.0..=3.0)).unwrap();
        let theta = ProbabilityPair::from_zeta(rng.gen_range(0.0..=1.0)).unwrap();
        for state in [State::One, State::Two] {
            let closed = model.hamiltonian(z, theta, state);
            let dz = match state {
                State::One => z.z2() - z.z1(),
                State::Two => z.z1() - z.z2(),
            };
            let mut brute = f64::INFINITY;
            for k in 0..=1000 {
                let mu = k as f64 * 0.01;
                let rates = match state {
                    State::One => (0.0, mu),
                    State::Two => (mu, 0.0),
                };
                brute = brute.min(model.cost(state, theta, rates) + mu * dz);
            }
            worst = worst.max((closed - brute).abs());
        }
    }
    finish(
        3,
        NAME,
        t0,
        Some(5.0),
        worst <= 1e-4,
        format!("worst deviation {worst:.2e} (tol 1e-4) over 100 samples"),
    )
}

/// Criterion 4: the first example forms a shock by `t = 0` in the reduced
/// primal solution and in the gradient of the potential primal solution.
pub fn criterion_4_example1_shock() -> CheckOutcome {
    const NAME: &str = "example I shock";
    let t0 = Instant::now();
    let model = CostModel::example1();

    let trace = match run_reduced_primal(&model, 200, 5.0, 1e-4, vec![0.0, 5.0]) {
        Ok(t) => t,
        Err(e) => return fail(4, NAME, t0, &e),
    };
    let reports = shock_indicator(&trace, DEFAULT_SLOPE_FACTOR);
    let terminal_ok = !reports[0].shock_flag && (reports[0].max_slope - 2.0).abs() < 1e-6;
    let shock = &reports[1];
    let primal_ok = shock.shock_flag && shock.max_slope >= 20.0;

    let pot = match run_potential_primal(&model, 200, 5.0, 1e-4, vec![0.0, 5.0]) {
        Ok(t) => t,
        Err(e) => return fail(4, NAME, t0, &e),
    };
    let wp_slope = |t: f64| -> Result<f64> {
        let grad = central_gradient(pot.snapshot_at(t)?);
        Ok(max_one_sided_slope(&grad.restrict(0.1, 0.9)?))
    };
    let (s0, s_t) = match (wp_slope(0.0), wp_slope(5.0)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return fail(4, NAME, t0, &e),
    };
    let potential_ok = s0 >= 20.0 && s0 >= DEFAULT_SLOPE_FACTOR * s_t;

    finish(
        4,
        NAME,
        t0,
        Some(120.0),
        terminal_ok && primal_ok && potential_ok,
        format!(
            "w slope {:.0} at zeta {:.3} (terminal 2); w_p slope {:.0} on [0.1,0.9] (terminal {:.2})",
            shock.max_slope, shock.location, s0, s_t
        ),
    )
}

/// Criterion 5: the first example's dual run keeps a boundary layer: the
/// solution within five nodes of an endpoint stays more than 0.25 away from
/// the imposed Dirichlet value at some snapshot before the terminal time.
pub fn criterion_5_example1_dual_layer() -> CheckOutcome {
    const NAME: &str = "example I dual boundary layer";
    let t0 = Instant::now();
    let model = CostModel::example1();
    let trace = match run_reduced_dual(&model, 200, 5.0, 1e-4, vec![0.0, 4.99, 5.0]) {
        Ok(t) => t,
        Err(e) => return fail(5, NAME, t0, &e),
    };
    let mut best: f64 = 0.0;
    let mut best_t = f64::NAN;
    for (t, z) in &trace.snapshots {
        if *t >= 5.0 - 1e-9 {
            continue;
        }
        let n = z.len() - 1;
        let left = (1..=5).map(|j| (z.value(j) - 1.0).abs()).fold(0.0, f64::max);
        let right = (n - 5..n).map(|j| z.value(j).abs()).fold(0.0, f64::max);
        let dev = left.max(right);
        if dev > best {
            best = dev;
            best_t = *t;
        }
    }
    finish(
        5,
        NAME,
        t0,
        Some(60.0),
        best > 0.25,
        format!(
            "max |Z - boundary| within 5 nodes = {best:.3} at t = {best_t:.2} (needs > 0.25); \
             Z range [{:.2}, {:.2}]",
            trace.diagnostics.min_value, trace.diagnostics.max_value
        ),
    )
}

/// Criterion 6: on the pre-shock window the transport solutions match the
/// gradients of their potential counterparts within 5e-2, and both gaps
/// shrink when the resolution doubles.
pub fn criterion_6_cross_formulation() -> CheckOutcome {
    const NAME: &str = "cross-formulation consistency";
    let t0 = Instant::now();
    let model = CostModel::example1();
    let mut primal_gap = [0.0f64; 2];
    let mut dual_gap = [0.0f64; 2];
    for (i, n) in [200usize, 400].into_iter().enumerate() {
        let dt = 2e-2 / n as f64;
        let result = (|| -> Result<()> {
            let w = run_reduced_primal(&model, n, 0.2, dt, vec![0.0])?;
            let pot = run_potential_primal(&model, n, 0.2, dt, vec![0.0])?;
            let wp = central_gradient(pot.snapshot_at(0.0)?);
            primal_gap[i] = compare_fields(w.snapshot_at(0.0)?, &wp, (0.1, 0.9))?.l_inf;

            let z = run_reduced_dual(&model, n, 0.2, dt, vec![0.0])?;
            let potd = run_potential_dual(&model, n, 0.2, dt, vec![0.0])?;
            let zp = central_gradient(potd.snapshot_at(0.0)?);
            dual_gap[i] = compare_fields(z.snapshot_at(0.0)?, &zp, (-1.6, 1.6))?.l_inf;
            Ok(())
        })();
        if let Err(e) = result {
            return fail(6, NAME, t0, &e);
        }
    }
    let passed = primal_gap[0] <= 5e-2
        && dual_gap[0] <= 5e-2
        && primal_gap[1] < primal_gap[0]
        && dual_gap[1] < dual_gap[0];
    finish(
        6,
        NAME,
        t0,
        None,
        passed,
        format!(
            "Linf(w - w_p) {:.2e} -> {:.2e}, Linf(Z - Z_p) {:.2e} -> {:.2e} at N = 200 -> 400 \
             (tol 5e-2, must decrease)",
            primal_gap[0], primal_gap[1], dual_gap[0], dual_gap[1]
        ),
    )
}

/// Criterion 7: the dual field inverts the primal one near the terminal
/// time, and the second example's non-monotone state refuses inversion.
pub fn criterion_7_primal_dual_inversion() -> CheckOutcome {
    const NAME: &str = "primal-dual inversion";
    let t0 = Instant::now();
    let ex1 = CostModel::example1();
    let result = (|| -> Result<(f64, bool)> {
        // t = T - 0.1 for an autonomous equation is a 0.1-horizon march
        let primal = run_reduced_primal(&ex1, 200, 0.1, 1e-4, vec![0.0])?;
        let dual = run_reduced_dual(&ex1, 200, 0.1, 1e-4, vec![0.0])?;
        let rep = inversion_consistency(&primal, &dual, 0.0)?;

        let ex2 = example2_default_model();
        let p2 = run_reduced_primal(&ex2, 200, 0.25, 1e-4, vec![0.0])?;
        let d2 = run_reduced_dual(&ex2, 200, 0.25, 1e-4, vec![0.0])?;
        let refused = matches!(
            inversion_consistency(&p2, &d2, 0.0),
            Err(mfg_core::Error::NonMonotone { .. })
        );
        Ok((rep.l_inf, refused))
    })();
    match result {
        Ok((l_inf, refused)) => finish(
            7,
            NAME,
            t0,
            None,
            l_inf <= 5e-2 && refused,
            format!(
                "Linf(Z(w) - zeta) = {l_inf:.2e} on [0.1,0.9] at t = T - 0.1 (tol 5e-2); \
                 example II at t = 0 raises non-monotone: {refused}"
            ),
        ),
        Err(e) => fail(7, NAME, t0, &e),
    }
}

/// Criterion 8: with the sweep-selected default coupling, the second
/// example's profile is increasing at the terminal time and loses
/// monotonicity by `t = 0`; the baked default matches the sweep.
pub fn criterion_8_example2_monotonicity_loss() -> CheckOutcome {
    const NAME: &str = "example II monotonicity loss";
    let t0 = Instant::now();
    let sweep = match example2_sweep() {
        Ok(s) => s,
        Err(e) => return fail(8, NAME, t0, &e),
    };
    let model = example2_default_model();
    let trace = match run_reduced_primal(&model, 200, 0.25, 1e-4, vec![0.0, 0.25]) {
        Ok(t) => t,
        Err(e) => return fail(8, NAME, t0, &e),
    };
    let terminal = monotonicity_check(&trace.snapshots[0].1, DEFAULT_MONOTONE_TOL);
    let final_state = monotonicity_check(&trace.snapshots[1].1, DEFAULT_MONOTONE_TOL);
    let selection_matches = sweep.kappa == EXAMPLE2_DEFAULT_KAPPA
        && sweep.orientation == Orientation::Paper;
    let lost = matches!(final_state, Monotonicity::NonMonotone { .. });
    finish(
        8,
        NAME,
        t0,
        None,
        selection_matches && lost && terminal == Monotonicity::Increasing,
        format!(
            "sweep selects kappa = {} {:?} (baked {}); terminal {:?}, t = 0 {:?}",
            sweep.kappa, sweep.orientation, EXAMPLE2_DEFAULT_KAPPA, terminal, final_state
        ),
    )
}

/// Criterion 9: the short-horizon grid solution matches RK4 integration of
/// the characteristic system within 5e-3.
pub fn criterion_9_characteristics_oracle() -> CheckOutcome {
    const NAME: &str = "characteristics oracle";
    let t0 = Instant::now();
    let model = CostModel::example1();
    let trace = match run_reduced_primal(&model, 200, 0.05, 1e-4, vec![0.0]) {
        Ok(t) => t,
        Err(e) => return fail(9, NAME, t0, &e),
    };
    let w = trace.snapshot_at(0.0).expect("snapshot recorded");

    // characteristic system: zeta' = r(w, zeta), w' = q(w, zeta)
    let rhs = |zeta: f64, wv: f64| {
        (
            model.reduced_r_extended(wv, zeta),
            model.reduced_q_extended(wv, zeta),
        )
    };
    const H: f64 = 1e-4;
    let steps = (0.05 / H).round() as usize;
    let mut worst: f64 = 0.0;
    let mut used = 0;
    for j in 0..=200 {
        let mut zeta = j as f64 / 200.0;
        let mut wv = 2.0 * zeta - 1.0;
        for _ in 0..steps {
            let (k1z, k1w) = rhs(zeta, wv);
            let (k2z, k2w) = rhs(zeta + 0.5 * H * k1z, wv + 0.5 * H * k1w);
            let (k3z, k3w) = rhs(zeta + 0.5 * H * k2z, wv + 0.5 * H * k2w);
            let (k4z, k4w) = rhs(zeta + H * k3z, wv + H * k3w);
            zeta += H / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
            wv += H / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
        }
        // characteristics near the ends exit the unit interval
        if (0.0..=1.0).contains(&zeta) {
            let grid_w = w.interpolate(zeta).expect("inside domain");
            worst = worst.max((grid_w - wv).abs());
            used += 1;
        }
    }
    finish(
        9,
        NAME,
        t0,
        Some(60.0),
        worst <= 5e-3 && used >= 150,
        format!("Linf vs {used} characteristics = {worst:.2e} (tol 5e-3)"),
    )
}

/// Criterion 10: first-order L1 self-convergence on a smooth window.
pub fn criterion_10_convergence_order() -> CheckOutcome {
    const NAME: &str = "convergence order";
    let t0 = Instant::now();
    let model = CostModel::example1();
    let result = (|| -> Result<f64> {
        let mut sols = Vec::new();
        for n in [100usize, 200, 400] {
            let dt = 2e-2 / n as f64;
            let trace = run_reduced_primal(&model, n, 0.1, dt, vec![0.0])?;
            sols.push(trace.snapshot_at(0.0)?.clone());
        }
        let e1 = compare_fields(&sols[0], &sols[1], (0.0, 1.0))?.l1;
        let e2 = compare_fields(&sols[1], &sols[2], (0.0, 1.0))?.l1;
        Ok((e1 / e2).log2())
    })();
    match result {
        Ok(order) => finish(
            10,
            NAME,
            t0,
            Some(60.0),
            order >= 0.8,
            format!("L1 self-convergence order {order:.2} across N = 100/200/400 (needs >= 0.8)"),
        ),
        Err(e) => fail(10, NAME, t0, &e),
    }
}

/// Criterion 11: the double discrete Legendre transform recovers the convex
/// terminal potential at 401 nodes, and the transform hits the analytic
/// value at the origin.
pub fn criterion_11_legendre_involution() -> CheckOutcome {
    const NAME: &str = "Legendre involution";
    let t0 = Instant::now();
    let grid = primal_grid(400);
    let dual = dual_grid(400);
    let upsilon = Field::sample(grid, |x| x * x - x).expect("finite");
    let phi = discrete_legendre(&upsilon, &dual).expect("finite");
    let back = discrete_legendre(&phi, &grid).expect("finite");

    let mut worst_double: f64 = 0.0;
    for j in 0..upsilon.len() {
        worst_double = worst_double.max((back.value(j) - upsilon.value(j)).abs());
    }
    let mut worst_analytic: f64 = 0.0;
    for (k, v) in dual.nodes().enumerate() {
        let exact = if v < -1.0 {
            0.0
        } else if v > 1.0 {
            v
        } else {
            (v + 1.0) * (v + 1.0) / 4.0
        };
        worst_analytic = worst_analytic.max((phi.value(k) - exact).abs());
    }
    let at_zero = (phi.value(200) - 0.25).abs();
    finish(
        11,
        NAME,
        t0,
        Some(10.0),
        worst_double <= 2e-3 && at_zero <= 2e-3,
        format!(
            "double-transform error {worst_double:.2e} (tol 2e-3); |Phi(0) - 1/4| = {at_zero:.1e}; \
             vs analytic conjugate {worst_analytic:.2e}"
        ),
    )
}

/// Criterion 12: identical configurations produce byte-identical CSV
/// artifacts and manifests (up to the wall-clock duration field), and the
/// CSV obeys the emission contract exactly.
pub fn criterion_12_determinism_and_formats() -> CheckOutcome {
    const NAME: &str = "determinism and formats";
    let t0 = Instant::now();
    let result = (|| -> Result<(bool, bool, bool, String)> {
        let base = preset_example(1, ProblemKind::ReducedPrimal)?;
        // config -> json -> config is lossless
        let round = crate::config::RunConfig::from_json(&base.to_json())?;
        let config_ok = round == base;

        let root = std::env::temp_dir().join(format!("mfg-check12-{}", std::process::id()));
        std::fs::create_dir_all(&root)?;
        let mut cfg = base.clone();
        cfg.output.directory = Some(root.clone());
        // the identical configuration, executed twice
        let mut csv_texts = Vec::new();
        let mut manifests = Vec::new();
        for _ in 0..2 {
            let (_, outputs) = crate::runner::run_from_config(&cfg)?;
            csv_texts.push(std::fs::read(&outputs.csv)?);
            manifests.push(std::fs::read_to_string(&outputs.manifest)?);
        }
        let csv_identical = csv_texts[0] == csv_texts[1];

        let mask = |text: &str| -> serde_json::Value {
            let mut v: serde_json::Value = serde_json::from_str(text).expect("manifest is JSON");
            v["duration_ms"] = serde_json::Value::from(0u64);
            v
        };
        let manifest_identical = mask(&manifests[0]) == mask(&manifests[1]);

        // the manifest's embedded config reproduces the artifacts
        let recorded: crate::runner::RunManifest = serde_json::from_str(&manifests[0])
            .map_err(|e| CliError::Config(format!("manifest does not parse: {e}")))?;
        let (_, outputs) = crate::runner::run_from_config(&recorded.config)?;
        let reproduced = std::fs::read(&outputs.csv)? == csv_texts[0];

        let text = String::from_utf8(csv_texts[0].clone())
            .map_err(|_| CliError::Config("CSV is not ASCII".into()))?;
        let lines: Vec<&str> = text.lines().collect();
        let layout_ok = text.is_ascii()
            && lines.len() == 202
            && lines[0] == "x,t=0.000000,t=5.000000"
            && lines[1..].iter().all(|l| l.split(',').count() == 3);
        let header = lines[0].to_string();
        let _ = std::fs::remove_dir_all(&root);
        Ok((
            config_ok && csv_identical && reproduced,
            manifest_identical,
            layout_ok,
            header,
        ))
    })();
    match result {
        Ok((csv_ok, manifest_ok, layout_ok, header)) => finish(
            12,
            NAME,
            t0,
            None,
            csv_ok && manifest_ok && layout_ok,
            format!(
                "rerun and manifest-replay byte-identical (CSV {csv_ok}, manifest sans \
                 duration {manifest_ok}); layout `{header}` with 202 lines: {layout_ok}"
            ),
        ),
        Err(e) => fail(12, NAME, t0, &e),
    }
}

/// Orientation of the second example's coupling `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// `f(1) = 2k t1^2 t2`, `f(2) = 2k t1 t2^2`.
    Paper,
    /// The gradient of `k t1^2 t2^2`, the swap of the above.
    Gradient,
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub kappa: f64,
    pub orientation: Orientation,
    pub non_monotone: bool,
}

#[derive(Clone, Debug)]
pub struct SweepSelection {
    pub kappa: f64,
    pub orientation: Orientation,
    pub rows: Vec<SweepRow>,
}

/// The oracle sweep behind the `example2` defaults: march the reduced primal
/// problem for each kappa in {1, 2, 4, 8, 16} and both orientations, and
/// select the smallest kappa whose `t = 0` profile is non-monotone. When
/// both orientations qualify, `example2-paper` wins the tie.
pub fn example2_sweep() -> Result<SweepSelection> {
    let mut rows = Vec::new();
    for kappa in [1.0, 2.0, 4.0, 8.0, 16.0] {
        for orientation in [Orientation::Paper, Orientation::Gradient] {
            let model = match orientation {
                Orientation::Paper => CostModel::example2_paper(kappa)?,
                Orientation::Gradient => CostModel::example2_gradient(kappa)?,
            };
            let trace = run_reduced_primal(&model, 200, 0.25, 1e-4, vec![0.0])?;
            let verdict = monotonicity_check(trace.snapshot_at(0.0)?, DEFAULT_MONOTONE_TOL);
            rows.push(SweepRow {
                kappa,
                orientation,
                non_monotone: matches!(verdict, Monotonicity::NonMonotone { .. }),
            });
        }
    }
    let selected = rows
        .iter()
        .filter(|r| r.non_monotone)
        .min_by(|a, b| {
            a.kappa
                .total_cmp(&b.kappa)
                .then_with(|| (a.orientation == Orientation::Gradient).cmp(&(b.orientation == Orientation::Gradient)))
        })
        .ok_or_else(|| {
            CliError::Config("no sweep entry loses monotonicity; widen the kappa ladder".into())
        })?;
    let (kappa, orientation) = (selected.kappa, selected.orientation);
    Ok(SweepSelection {
        kappa,
        orientation,
        rows,
    })
}
