//! Dense real polynomials in one variable, ascending coefficient order.
//!
//! The cost presets are polynomial in the population fraction, so the
//! diagonal potential `phi(zeta) = F(zeta, 1 - zeta)` and its derivative stay
//! closed-form. Root finding is needed up to degree three (the quartic
//! potential of the second example yields a cubic derivative).

use arrayvec::ArrayVec;

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    /// Builds a polynomial from coefficients `c0 + c1 x + c2 x^2 + ...`.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![0.0] }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| (k as f64 + 1.0) * c)
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Polynomial {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(0.0);
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / (k as f64 + 1.0)),
        );
        Polynomial::new(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0.0; n];
        for (k, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(k).copied().unwrap_or(0.0);
            let b = other.coeffs.get(k).copied().unwrap_or(0.0);
            *slot = a - b;
        }
        Polynomial::new(out)
    }

    pub fn minus_constant(&self, c: f64) -> Polynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] -= c;
        Polynomial::new(coeffs)
    }

    /// Real roots for degree <= 3; `None` when the degree is higher.
    pub fn real_roots(&self) -> Option<ArrayVec<f64, 4>> {
        self.real_roots_shifted(0.0)
    }

    /// Real solutions of `p(x) = c` for degree <= 3, allocation-free.
    pub fn real_roots_shifted(&self, c: f64) -> Option<ArrayVec<f64, 4>> {
        let cs = &self.coeffs;
        let c0 = cs[0] - c;
        let mut roots = ArrayVec::new();
        match cs.len() {
            1 => {}
            2 => roots.push(-c0 / cs[1]),
            3 => quadratic_roots(cs[2], cs[1], c0, &mut roots),
            4 => cubic_roots(cs[3], cs[2], cs[1], c0, &mut roots),
            _ => return None,
        }
        roots.as_mut_slice().sort_by(|a, b| a.total_cmp(b));
        Some(roots)
    }
}

/// Real roots of `a x^2 + b x + c = 0`, stable form.
fn quadratic_roots(a: f64, b: f64, c: f64, out: &mut ArrayVec<f64, 4>) {
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return;
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    if b == 0.0 {
        let r = (sq / (2.0 * a)).abs();
        out.push(-r);
        out.push(r);
        return;
    }
    out.push(q / a);
    if q != 0.0 {
        out.push(c / q);
    } else {
        out.push(0.0);
    }
}

/// Real roots of `a x^3 + b x^2 + c x + d = 0` via the depressed cubic.
fn cubic_roots(a: f64, b: f64, c: f64, d: f64, out: &mut ArrayVec<f64, 4>) {
    // x = y - b/(3a) turns it into y^3 + p y + q = 0
    let b = b / a;
    let c = c / a;
    let d = d / a;
    let shift = b / 3.0;
    let p = c - b * b / 3.0;
    let q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    let disc = q * q / 4.0 + p * p * p / 27.0;
    if disc > 0.0 {
        // one real root (Cardano)
        let s = disc.sqrt();
        let u = (-q / 2.0 + s).cbrt();
        let v = (-q / 2.0 - s).cbrt();
        out.push(u + v - shift);
    } else if disc == 0.0 {
        if q == 0.0 && p == 0.0 {
            out.push(-shift);
        } else {
            let u = (-q / 2.0).cbrt();
            out.push(2.0 * u - shift);
            out.push(-u - shift);
        }
    } else {
        // three real roots (trigonometric form); p < 0 here
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        for k in 0..3 {
            let angle = theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            out.push(m * angle.cos() - shift);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn eval_and_calculus() {
        // 1 - 2x + 3x^2
        let p = Polynomial::new(vec![1.0, -2.0, 3.0]);
        assert_eq!(p.eval(0.0), 1.0);
        assert_eq!(p.eval(2.0), 9.0);
        let dp = p.derivative();
        assert_eq!(dp.coeffs(), &[-2.0, 6.0]);
        let ip = dp.antiderivative();
        assert_eq!(ip.coeffs(), &[0.0, -2.0, 3.0]);
    }

    #[test]
    fn quadratic_root_pairs() {
        let p = Polynomial::new(vec![-1.0, 0.0, 1.0]); // x^2 - 1
        let r = p.real_roots().unwrap();
        assert_eq!(r.as_slice(), &[-1.0, 1.0]);
        let none = Polynomial::new(vec![1.0, 0.0, 1.0]).real_roots().unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn cubic_three_real_roots() {
        // (x - 1) x (x + 2) = x^3 + x^2 - 2x
        let p = Polynomial::new(vec![0.0, -2.0, 1.0, 1.0]);
        let r = p.real_roots().unwrap();
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([-2.0, 0.0, 1.0]) {
            assert_relative_eq!(*got, want, max_relative = 1e-12, epsilon = 1e-12);
        }
    }

    #[test]
    fn cubic_single_real_root() {
        // x^3 + x + 1: one real root near -0.6823278
        let p = Polynomial::new(vec![1.0, 1.0, 0.0, 1.0]);
        let r = p.real_roots().unwrap();
        assert_eq!(r.len(), 1);
        assert_relative_eq!(r[0], -0.682_327_803_828_019_3, max_relative = 1e-12);
    }

    #[test]
    fn quartic_is_undeclared() {
        let p = Polynomial::new(vec![0.0, 0.0, 0.0, 0.0, 1.0]);
        assert!(p.real_roots().is_none());
    }
}
