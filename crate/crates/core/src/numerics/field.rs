use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Uniform 1-d grid with `n` intervals, nodes `x_j = a + j dx`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    a: f64,
    b: f64,
    n: usize,
}

impl Grid1D {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && b > a && n >= 2) {
            return Err(Error::InvalidGrid { a, b, n });
        }
        Ok(Grid1D { a, b, n })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn intervals(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.n + 1
    }

    pub fn spacing(&self) -> f64 {
        (self.b - self.a) / self.n as f64
    }

    /// Node coordinate; the last node is pinned to `b` exactly.
    pub fn node(&self, j: usize) -> f64 {
        debug_assert!(j <= self.n);
        if j == self.n {
            self.b
        } else {
            self.a + j as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.node_count()).map(move |j| self.node(j))
    }

    /// Interval index and local weight for linear interpolation at `x`.
    /// Queries within round-off of a node snap onto it exactly.
    fn locate(&self, x: f64) -> Result<(usize, f64)> {
        let tol = 1e-12 * (1.0 + self.b.abs().max(self.a.abs()));
        if x < self.a - tol || x > self.b + tol {
            return Err(Error::QueryOutOfRange { value: x });
        }
        let dx = self.spacing();
        let raw = (x - self.a) / dx;
        let nearest = raw.round();
        if (raw - nearest).abs() <= 1e-9 && (0.0..=self.n as f64).contains(&nearest) {
            let j = (nearest as usize).min(self.n - 1);
            return Ok((j, if j == nearest as usize { 0.0 } else { 1.0 }));
        }
        let j = (raw.floor().max(0.0) as usize).min(self.n - 1);
        let s = ((x - self.node(j)) / dx).clamp(0.0, 1.0);
        Ok((j, s))
    }
}

/// Sampled function on the nodes of a [`Grid1D`]. Construction rejects
/// non-finite values; a NaN anywhere in a marching solution is a hard error.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    grid: Grid1D,
    values: Vec<f64>,
}

impl Field {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.node_count() {
            return Err(Error::FieldLength {
                len: values.len(),
                nodes: grid.node_count(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteField { index });
        }
        Ok(Field { grid, values })
    }

    pub fn constant(grid: Grid1D, value: f64) -> Result<Self> {
        Field::new(grid, vec![value; grid.node_count()])
    }

    pub fn sample(grid: Grid1D, f: impl Fn(f64) -> f64) -> Result<Self> {
        Field::new(grid, grid.nodes().map(f).collect())
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Solver-internal mutation hook (boundary pinning); callers must keep
    /// the values finite.
    pub(crate) fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn value(&self, j: usize) -> f64 {
        self.values[j]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Linear interpolation; errors outside the grid domain.
    pub fn interpolate(&self, x: f64) -> Result<f64> {
        let (j, s) = self.grid.locate(x)?;
        Ok((1.0 - s) * self.values[j] + s * self.values[j + 1])
    }

    /// Sub-field over the nodes lying in `[lo, hi]`.
    pub fn restrict(&self, lo: f64, hi: f64) -> Result<Field> {
        let tol = 1e-12 * (1.0 + self.grid.b.abs().max(self.grid.a.abs()));
        let kept: Vec<usize> = (0..self.len())
            .filter(|&j| {
                let x = self.grid.node(j);
                x >= lo - tol && x <= hi + tol
            })
            .collect();
        let (&first, &last) = match (kept.first(), kept.last()) {
            (Some(f), Some(l)) if l > f => (f, l),
            _ => return Err(Error::EmptyOverlap),
        };
        let grid = Grid1D::new(self.grid.node(first), self.grid.node(last), last - first)?;
        Field::new(grid, self.values[first..=last].to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(Grid1D::new(0.0, 1.0, 200).is_ok());
        assert!(Grid1D::new(1.0, 0.0, 10).is_err());
        assert!(Grid1D::new(0.0, 1.0, 1).is_err());
        let g = Grid1D::new(0.0, 1.0, 200).unwrap();
        assert_eq!(g.spacing(), 0.005);
        assert_eq!(g.node_count(), 201);
        assert_eq!(g.node(200), 1.0);
    }

    #[test]
    fn field_rejects_bad_data() {
        let g = Grid1D::new(0.0, 1.0, 2).unwrap();
        assert!(Field::new(g, vec![0.0; 2]).is_err());
        assert!(Field::new(g, vec![0.0, f64::NAN, 0.0]).is_err());
        assert!(Field::new(g, vec![0.0, 1.0, 2.0]).is_ok());
    }

    #[test]
    fn interpolation_is_linear() {
        let g = Grid1D::new(0.0, 1.0, 4).unwrap();
        let f = Field::sample(g, |x| 2.0 * x - 1.0).unwrap();
        assert!((f.interpolate(0.125).unwrap() - (-0.75)).abs() < 1e-15);
        assert_eq!(f.interpolate(1.0).unwrap(), 1.0);
        assert!(f.interpolate(1.5).is_err());
    }

    #[test]
    fn restrict_keeps_interior_nodes() {
        let g = Grid1D::new(0.0, 1.0, 10).unwrap();
        let f = Field::sample(g, |x| x).unwrap();
        let r = f.restrict(0.1, 0.9).unwrap();
        assert_eq!(r.len(), 9);
        assert_eq!(r.grid().a(), g.node(1));
        assert_eq!(r.grid().b(), g.node(9));
        assert!(f.restrict(2.0, 3.0).is_err());
    }
}
