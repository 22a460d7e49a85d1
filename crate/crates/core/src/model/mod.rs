//! Model-level functions of the two-state game with quadratic switching cost.
//!
//! The running cost is `c(i, theta, mu) = f(i, theta) + 0.5 * mu_j^2` (j the
//! other state). Its generalized Legendre transform has the closed form
//! `h(z, theta, i) = f(i, theta) - 0.5 ((z^i - z^j)^+)^2`, the optimal
//! switching rate toward state j is `(z^i - z^j)^+`, and everything below
//! depends on `z` only through the difference `z^1 - z^2`.
//!
//! On the reduced line `theta = (zeta, 1 - zeta)` the scalar transport
//! coefficients are
//!
//! ```text
//! r(w, zeta) = zeta w^+ - (1 - zeta) w^-          (advection velocity)
//! q(w, zeta) = f(1) - f(2) - 0.5 w |w|            (source)
//! ```
//!
//! and both are partial derivatives of the reduced Hamiltonian
//! `H(p, zeta) = -0.5 [zeta (p^+)^2 + (1 - zeta) (p^-)^2] + F(zeta, 1 - zeta)`:
//! `q = dH/dzeta` and `r = -dH/dp`.

mod assumptions;
mod poly;

pub use assumptions::{AssumptionReport, ConvexityViolation};
pub use poly::Polynomial;

use crate::{Error, Result};

/// One of the two player states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum State {
    One,
    Two,
}

impl State {
    pub fn other(self) -> State {
        match self {
            State::One => State::Two,
            State::Two => State::One,
        }
    }
}

/// Population split `(theta1, theta2)` on the simplex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbabilityPair {
    theta1: f64,
    theta2: f64,
}

impl ProbabilityPair {
    const SUM_TOL: f64 = 1e-12;

    pub fn new(theta1: f64, theta2: f64) -> Result<Self> {
        let ok = theta1.is_finite()
            && theta2.is_finite()
            && theta1 >= 0.0
            && theta2 >= 0.0
            && (theta1 + theta2 - 1.0).abs() <= Self::SUM_TOL;
        if !ok {
            return Err(Error::InvalidProbability { theta1, theta2 });
        }
        Ok(ProbabilityPair { theta1, theta2 })
    }

    /// `(zeta, 1 - zeta)` for `zeta` in `[0, 1]`.
    pub fn from_zeta(zeta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&zeta) {
            return Err(Error::ZetaOutOfRange { zeta });
        }
        Ok(ProbabilityPair {
            theta1: zeta,
            theta2: 1.0 - zeta,
        })
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }

    pub fn component(&self, state: State) -> f64 {
        match state {
            State::One => self.theta1,
            State::Two => self.theta2,
        }
    }
}

/// Value pair `(z^1, z^2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValuePair {
    z1: f64,
    z2: f64,
}

impl ValuePair {
    pub fn new(z1: f64, z2: f64) -> Result<Self> {
        if !(z1.is_finite() && z2.is_finite()) {
            return Err(Error::NonFiniteValue { z1, z2 });
        }
        Ok(ValuePair { z1, z2 })
    }

    pub fn z1(&self) -> f64 {
        self.z1
    }

    pub fn z2(&self) -> f64 {
        self.z2
    }

    /// `z^1 - z^2`, the only combination the model functions see.
    pub fn diff(&self) -> f64 {
        self.z1 - self.z2
    }

    pub fn component(&self, state: State) -> f64 {
        match state {
            State::One => self.z1,
            State::Two => self.z2,
        }
    }
}

/// Optimal switching rates `(alpha*_1, alpha*_2)`; they sum to zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SwitchingRates {
    pub alpha1: f64,
    pub alpha2: f64,
}

#[inline]
pub(crate) fn pos(x: f64) -> f64 {
    x.max(0.0)
}

#[inline]
pub(crate) fn neg(x: f64) -> f64 {
    (-x).max(0.0)
}

/// Which cost family a model was built from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModelKind {
    /// `f(1) = 1 - theta1`, `f(2) = 1 - theta2`, `F = theta1 theta2`.
    Example1,
    /// `f(1) = 2k theta1^2 theta2`, `f(2) = 2k theta1 theta2^2`.
    /// Not a gradient field in 2-d; the reduced line still has a potential.
    Example2Paper { kappa: f64 },
    /// `f = grad(k theta1^2 theta2^2)`, the swap of the orientation above.
    Example2Gradient { kappa: f64 },
    /// User-supplied polynomials in `theta1`.
    Custom,
}

/// Two-dimensional potential formula, used off the simplex by the
/// gradient-consistency check.
#[derive(Clone, Copy, Debug)]
enum SimplexPotential {
    /// `F(t1, t2) = t1 t2`
    Product,
    /// `F(t1, t2) = kappa t1^2 t2^2`
    QuarticProduct { kappa: f64 },
}

impl SimplexPotential {
    fn eval(&self, t1: f64, t2: f64) -> f64 {
        match *self {
            SimplexPotential::Product => t1 * t2,
            SimplexPotential::QuarticProduct { kappa } => kappa * t1 * t1 * t2 * t2,
        }
    }
}

/// Running-cost data of the game: the mean-field couplings `f(i, .)`, the
/// quadratic switching cost, and (when one exists) the potential behind `f`.
///
/// `f(i, .)` is stored as a polynomial in `theta1`; the diagonal potential
/// `phi(zeta) = F(zeta, 1 - zeta)` is the antiderivative of `f(1) - f(2)` and
/// is extended to all real arguments by its polynomial formula, so flux
/// searches may probe slightly outside the simplex without artificial kinks.
#[derive(Clone, Debug)]
pub struct CostModel {
    kind: ModelKind,
    f1: Polynomial,
    f2: Polynomial,
    delta_f: Polynomial,
    phi: Option<Polynomial>,
    simplex_potential: Option<SimplexPotential>,
    lipschitz: f64,
}

impl CostModel {
    /// First example costs: `f(1) = 1 - theta1`, `f(2) = 1 - theta2`.
    pub fn example1() -> CostModel {
        Self::build(
            ModelKind::Example1,
            Polynomial::new(vec![1.0, -1.0]),
            Polynomial::new(vec![0.0, 1.0]),
            true,
            Some(SimplexPotential::Product),
            1.0 + 1e-9,
        )
        .expect("example1 preset is consistent")
    }

    /// Second example, direct orientation:
    /// `f(1) = 2k theta1^2 theta2`, `f(2) = 2k theta1 theta2^2`.
    pub fn example2_paper(kappa: f64) -> Result<CostModel> {
        Self::check_kappa(kappa)?;
        // on the simplex: f1 = 2k z^2 (1-z), f2 = 2k z (1-z)^2
        let f1 = Polynomial::new(vec![0.0, 0.0, 2.0 * kappa, -2.0 * kappa]);
        let f2 = Polynomial::new(vec![0.0, 2.0 * kappa, -4.0 * kappa, 2.0 * kappa]);
        Self::build(
            ModelKind::Example2Paper { kappa },
            f1,
            f2,
            true,
            None,
            2.0 * kappa * (1.0 + 1e-9),
        )
    }

    /// Second example with `f = grad F`, `F = kappa theta1^2 theta2^2`.
    pub fn example2_gradient(kappa: f64) -> Result<CostModel> {
        Self::check_kappa(kappa)?;
        let f1 = Polynomial::new(vec![0.0, 2.0 * kappa, -4.0 * kappa, 2.0 * kappa]);
        let f2 = Polynomial::new(vec![0.0, 0.0, 2.0 * kappa, -2.0 * kappa]);
        Self::build(
            ModelKind::Example2Gradient { kappa },
            f1,
            f2,
            true,
            Some(SimplexPotential::QuarticProduct { kappa }),
            2.0 * kappa * (1.0 + 1e-9),
        )
    }

    /// Escape hatch: `f(i, .)` as polynomial coefficients in `theta1`
    /// (ascending). With `potential = true` the diagonal potential is the
    /// exact antiderivative of `f(1) - f(2)`; with `false` the model refuses
    /// the Hamilton-Jacobi formulations.
    pub fn from_polynomials(f1: Vec<f64>, f2: Vec<f64>, potential: bool) -> Result<CostModel> {
        if f1.iter().chain(f2.iter()).any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter(
                "cost polynomials must have finite coefficients".into(),
            ));
        }
        let f1 = Polynomial::new(f1);
        let f2 = Polynomial::new(f2);
        let lip = sampled_slope_bound(&f1).max(sampled_slope_bound(&f2)) * (1.0 + 1e-6) + 1e-12;
        Self::build(ModelKind::Custom, f1, f2, potential, None, lip)
    }

    fn check_kappa(kappa: f64) -> Result<()> {
        if !(kappa.is_finite() && kappa > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "kappa must be positive and finite, got {kappa}"
            )));
        }
        Ok(())
    }

    fn build(
        kind: ModelKind,
        f1: Polynomial,
        f2: Polynomial,
        potential: bool,
        simplex_potential: Option<SimplexPotential>,
        lipschitz: f64,
    ) -> Result<CostModel> {
        let delta_f = f1.sub(&f2);
        let phi = potential.then(|| delta_f.antiderivative());
        let model = CostModel {
            kind,
            f1,
            f2,
            delta_f,
            phi,
            simplex_potential,
            lipschitz,
        };
        model.check_structure()?;
        Ok(model)
    }

    /// Sampled structural checks: `f = grad F` along the simplex when a 2-d
    /// potential is declared, and the declared Lipschitz bound.
    fn check_structure(&self) -> Result<()> {
        const STEP: f64 = 1e-5;
        for k in 0..=100 {
            let zeta = k as f64 / 100.0;
            if let Some(sp) = &self.simplex_potential {
                let t2 = 1.0 - zeta;
                let d1 = (sp.eval(zeta + STEP, t2) - sp.eval(zeta - STEP, t2)) / (2.0 * STEP);
                let d2 = (sp.eval(zeta, t2 + STEP) - sp.eval(zeta, t2 - STEP)) / (2.0 * STEP);
                if (self.f1.eval(zeta) - d1).abs() > 1e-6 || (self.f2.eval(zeta) - d2).abs() > 1e-6
                {
                    return Err(Error::InvalidParameter(format!(
                        "declared potential is not consistent with f at zeta = {zeta}"
                    )));
                }
            }
            if k > 0 {
                let prev = (k - 1) as f64 / 100.0;
                let q1 = (self.f1.eval(zeta) - self.f1.eval(prev)).abs() / 0.01;
                let q2 = (self.f2.eval(zeta) - self.f2.eval(prev)).abs() / 0.01;
                if q1 > self.lipschitz || q2 > self.lipschitz {
                    return Err(Error::InvalidParameter(format!(
                        "difference quotient {q:.6} exceeds the declared Lipschitz bound {l:.6}",
                        q = q1.max(q2),
                        l = self.lipschitz
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    /// Mean-field cost `f(i, theta)`.
    pub fn f(&self, state: State, theta: ProbabilityPair) -> f64 {
        match state {
            State::One => self.f1.eval(theta.theta1()),
            State::Two => self.f2.eval(theta.theta1()),
        }
    }

    /// `f(1, (zeta, 1-zeta)) - f(2, (zeta, 1-zeta))` extended to any real
    /// argument by the polynomial formula.
    pub fn delta_f(&self, zeta: f64) -> f64 {
        self.delta_f.eval(zeta)
    }

    /// Running cost `c(i, theta, mu) = f(i, theta) + 0.5 mu_j^2`, `j != i`.
    /// The own-state component of `mu` does not enter.
    pub fn cost(&self, state: State, theta: ProbabilityPair, mu: (f64, f64)) -> f64 {
        let other = match state {
            State::One => mu.1,
            State::Two => mu.0,
        };
        self.f(state, theta) + 0.5 * other * other
    }

    /// Closed-form generalized Legendre transform of the running cost:
    /// `h(z, theta, i) = f(i, theta) - 0.5 ((z^i - z^j)^+)^2`.
    pub fn hamiltonian(&self, z: ValuePair, theta: ProbabilityPair, state: State) -> f64 {
        let gain = match state {
            State::One => pos(z.diff()),
            State::Two => pos(-z.diff()),
        };
        self.f(state, theta) - 0.5 * gain * gain
    }

    /// Advection velocity of the reduced primal equation,
    /// `r(w, zeta) = zeta w^+ - (1 - zeta) w^-`. Independent of `f`.
    pub fn reduced_r(&self, w: f64, zeta: f64) -> Result<f64> {
        check_zeta(zeta)?;
        Ok(self.reduced_r_extended(w, zeta))
    }

    /// Source of the reduced primal equation,
    /// `q(w, zeta) = f(1) - f(2) - 0.5 w |w|`.
    pub fn reduced_q(&self, w: f64, zeta: f64) -> Result<f64> {
        check_zeta(zeta)?;
        Ok(self.reduced_q_extended(w, zeta))
    }

    /// `reduced_r` without the domain check. The dual transport feeds the
    /// evolving fraction `Z` into the zeta slot, and `Z` can transiently
    /// leave `[0, 1]` near the imposed boundary layers.
    pub fn reduced_r_extended(&self, w: f64, zeta: f64) -> f64 {
        zeta * pos(w) - (1.0 - zeta) * neg(w)
    }

    /// `reduced_q` without the domain check; see [`reduced_r_extended`].
    ///
    /// [`reduced_r_extended`]: CostModel::reduced_r_extended
    pub fn reduced_q_extended(&self, w: f64, zeta: f64) -> f64 {
        self.delta_f.eval(zeta) - 0.5 * w * w.abs()
    }

    /// Reduced Hamiltonian of the potential primal formulation,
    /// `H(p, zeta) = -0.5 [zeta (p^+)^2 + (1-zeta) (p^-)^2] + F(zeta, 1-zeta)`.
    /// Concave in `p`.
    pub fn h_primal(&self, p: f64, zeta: f64) -> Result<f64> {
        let phi = self.phi.as_ref().ok_or(Error::MissingPotential)?;
        Ok(kinetic(p, zeta) + phi.eval(zeta))
    }

    /// Reduced Hamiltonian of the potential dual formulation,
    /// `H(v, p) = -0.5 [(v^-)^2 + p |v| v] + F(p, 1-p)`, with the potential
    /// evaluated by its polynomial formula for any real `p`.
    pub fn h_dual(&self, upsilon: f64, p: f64) -> Result<f64> {
        let phi = self.phi.as_ref().ok_or(Error::MissingPotential)?;
        let n = neg(upsilon);
        Ok(-0.5 * (n * n + p * upsilon.abs() * upsilon) + phi.eval(p))
    }

    /// Diagonal potential `phi(zeta) = F(zeta, 1 - zeta)`, when declared.
    pub fn potential(&self) -> Option<&Polynomial> {
        self.phi.as_ref()
    }

    pub fn has_potential(&self) -> bool {
        self.phi.is_some()
    }

    /// The 2-d potential formula `F(theta1, theta2)` for presets whose `f` is
    /// a genuine gradient field.
    pub fn simplex_potential_value(&self, theta1: f64, theta2: f64) -> Option<f64> {
        self.simplex_potential.map(|sp| sp.eval(theta1, theta2))
    }

    /// Declared Lipschitz bound for `f(i, .)` on the simplex.
    pub fn declared_lipschitz(&self) -> f64 {
        self.lipschitz
    }
}

fn check_zeta(zeta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&zeta) {
        return Err(Error::ZetaOutOfRange { zeta });
    }
    Ok(())
}

/// `-0.5 [zeta (p^+)^2 + (1 - zeta) (p^-)^2]`, also `-0.5 [(p^-)^2 + zeta |p| p]`.
fn kinetic(p: f64, zeta: f64) -> f64 {
    let up = pos(p);
    let dn = neg(p);
    -0.5 * (zeta * up * up + (1.0 - zeta) * dn * dn)
}

fn sampled_slope_bound(p: &Polynomial) -> f64 {
    let dp = p.derivative();
    (0..=1000)
        .map(|k| dp.eval(k as f64 / 1000.0).abs())
        .fold(0.0, f64::max)
}

/// Optimal switching rates at the Legendre minimizer. For a player in state
/// `i` the rate toward the other state is `(z^i - z^j)^+`; the own component
/// is its negative so the pair sums to zero.
pub fn optimal_rate(z: ValuePair, state: State) -> SwitchingRates {
    match state {
        State::One => {
            let a2 = pos(z.diff());
            SwitchingRates {
                alpha1: -a2,
                alpha2: a2,
            }
        }
        State::Two => {
            let a1 = pos(-z.diff());
            SwitchingRates {
                alpha1: a1,
                alpha2: -a1,
            }
        }
    }
}

/// Population drift `g_1(z, theta) = -theta1 (z^1-z^2)^+ + theta2 (z^2-z^1)^+`;
/// `g_2 = -g_1`.
pub fn drift_g1(z: ValuePair, theta: ProbabilityPair) -> f64 {
    let d = z.diff();
    -theta.theta1() * pos(d) + theta.theta2() * pos(-d)
}
