//! Sampled verification of the structural cost assumptions: uniform convexity
//! of the running cost in the switching rate, and superlinear growth.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CostModel, ProbabilityPair, State};
use crate::{Error, Result};

/// A sampled tuple where the uniform-convexity inequality failed.
#[derive(Clone, Debug)]
pub struct ConvexityViolation {
    pub state: State,
    pub theta1: f64,
    pub alpha: (f64, f64),
    pub alpha_prime: (f64, f64),
    /// `c(a') - c(a) - dc(a).(a'-a) - gamma |a'-a|^2`; negative means failure.
    pub margin: f64,
}

/// Outcome of [`CostModel::validate_assumptions`]. Violations are report
/// content, not errors.
#[derive(Clone, Debug)]
pub struct AssumptionReport {
    pub gamma: f64,
    pub samples: usize,
    pub convexity_violations: Vec<ConvexityViolation>,
    /// `(|alpha|, c / |alpha|)` along an increasing rate ladder.
    pub growth_ratios: Vec<(f64, f64)>,
}

impl AssumptionReport {
    pub fn convexity_holds(&self) -> bool {
        self.convexity_violations.is_empty()
    }

    /// Superlinearity heuristic: the cost-to-norm ratio keeps growing along
    /// the sampled ladder.
    pub fn superlinear_growth(&self) -> bool {
        self.growth_ratios.windows(2).all(|w| w[1].1 > w[0].1)
            && self
                .growth_ratios
                .last()
                .zip(self.growth_ratios.first())
                .map(|(last, first)| last.1 > 100.0 * first.1.max(1e-30))
                .unwrap_or(false)
    }
}

const SEED: u64 = 0x5eed_a55e_55ed;
const MARGIN_TOL: f64 = 1e-9;

impl CostModel {
    /// Samples the uniform-convexity inequality
    /// `c(i,th,a') - c(i,th,a) >= dc/da . (a'-a) + gamma |a'-a|^2`
    /// at pseudo-random `(i, theta, alpha, alpha')` and tabulates the growth
    /// ratio `c / |alpha|` at increasing rates. For the quadratic switching
    /// cost the inequality holds with equality at `gamma = 1/2`, so any
    /// larger `gamma` is reported as a violation.
    pub fn validate_assumptions(&self, gamma: f64, samples: usize) -> Result<AssumptionReport> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma must be positive, got {gamma}"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut violations = Vec::new();
        for _ in 0..samples {
            let state = if rng.gen::<bool>() {
                State::One
            } else {
                State::Two
            };
            let theta1 = rng.gen_range(0.0..=1.0);
            let theta = ProbabilityPair::new(theta1, 1.0 - theta1).expect("sampled on simplex");
            let alpha = (rng.gen_range(0.0..=10.0), rng.gen_range(0.0..=10.0));
            // the own-state component is a dummy coordinate of c; the
            // inequality quantifies over the rate toward the other state
            let mut alpha_prime = alpha;
            match state {
                State::One => alpha_prime.1 = rng.gen_range(0.0..=10.0),
                State::Two => alpha_prime.0 = rng.gen_range(0.0..=10.0),
            }

            let da = (alpha_prime.0 - alpha.0, alpha_prime.1 - alpha.1);
            let norm_sq = da.0 * da.0 + da.1 * da.1;
            // gradient of the quadratic cost: dc/da_j = a_j for j != i, else 0
            let grad_dot = match state {
                State::One => alpha.1 * da.1,
                State::Two => alpha.0 * da.0,
            };
            let lhs = self.cost(state, theta, alpha_prime) - self.cost(state, theta, alpha);
            let margin = lhs - grad_dot - gamma * norm_sq;
            if margin < -MARGIN_TOL * (1.0 + norm_sq) {
                violations.push(ConvexityViolation {
                    state,
                    theta1,
                    alpha,
                    alpha_prime,
                    margin,
                });
            }
        }

        let theta = ProbabilityPair::new(0.5, 0.5).expect("valid");
        let growth_ratios = [1.0, 10.0, 100.0, 1e3, 1e4]
            .iter()
            .map(|&s| {
                let c = self.cost(State::One, theta, (0.0, s));
                (s, c / s)
            })
            .collect();

        Ok(AssumptionReport {
            gamma,
            samples,
            convexity_violations: violations,
            growth_ratios,
        })
    }
}
