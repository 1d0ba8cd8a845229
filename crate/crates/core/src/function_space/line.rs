use super::Grid;
use crate::error::{Error, Result};

/// A function in the continuous-with-limits space, stored as grid samples plus the
/// limits at `-inf` and `+inf`.
///
/// Evaluation interpolates linearly between nodes and returns the limit beyond `[-L, L]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineFunction {
    grid: Grid,
    samples: Vec<f64>,
    limit_neg: f64,
    limit_pos: f64,
}

impl LineFunction {
    pub fn new(grid: Grid, samples: Vec<f64>, limit_neg: f64, limit_pos: f64) -> Result<Self> {
        if samples.len() != grid.n_points() {
            return Err(Error::GridMismatch);
        }
        if let Some(k) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("sample {k}")));
        }
        if !limit_neg.is_finite() || !limit_pos.is_finite() {
            return Err(Error::NonFinite("limit".into()));
        }
        Ok(Self::from_parts(grid, samples, limit_neg, limit_pos))
    }

    pub(crate) fn from_parts(grid: Grid, samples: Vec<f64>, limit_neg: f64, limit_pos: f64) -> Self {
        debug_assert_eq!(samples.len(), grid.n_points());
        LineFunction { grid, samples, limit_neg, limit_pos }
    }

    /// Samples `f` on the grid; the limits repeat the boundary samples (constant tails).
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Self {
        let samples: Vec<f64> = grid.nodes().into_iter().map(f).collect();
        let (lo, hi) = (samples[0], samples[samples.len() - 1]);
        Self::from_parts(grid, samples, lo, hi)
    }

    pub fn from_fn_with_limits(grid: Grid, f: impl Fn(f64) -> f64, limit_neg: f64, limit_pos: f64) -> Self {
        let samples = grid.nodes().into_iter().map(f).collect();
        Self::from_parts(grid, samples, limit_neg, limit_pos)
    }

    pub fn constant(grid: Grid, c: f64) -> Self {
        Self::from_parts(grid, vec![c; grid.n_points()], c, c)
    }

    pub fn zero(grid: Grid) -> Self {
        Self::constant(grid, 0.0)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn limit_neg(&self) -> f64 {
        self.limit_neg
    }

    pub fn limit_pos(&self) -> f64 {
        self.limit_pos
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    /// Value at node index `i`, or the matching limit when `i` falls off the grid.
    pub fn at_index(&self, i: isize) -> f64 {
        if i < 0 {
            self.limit_neg
        } else if i as usize >= self.samples.len() {
            self.limit_pos
        } else {
            self.samples[i as usize]
        }
    }

    /// Value at `x = j h`.
    pub fn at_offset(&self, j: isize) -> f64 {
        self.at_index(self.grid.center() as isize + j)
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        let n = self.samples.len();
        let pos = x / self.grid.spacing() + self.grid.center() as f64;
        if pos < 0.0 {
            return self.limit_neg;
        }
        if pos > (n - 1) as f64 {
            return self.limit_pos;
        }
        let k = (pos.floor() as usize).min(n - 2);
        let theta = pos - k as f64;
        if theta == 0.0 {
            return self.samples[k];
        }
        (1.0 - theta) * self.samples[k] + theta * self.samples[k + 1]
    }

    /// `x -> f(-x)`; swaps the limits.
    pub fn reflect(&self) -> Self {
        let mut s = self.samples.clone();
        s.reverse();
        Self::from_parts(self.grid, s, self.limit_pos, self.limit_neg)
    }

    /// Even and odd parts `(f + f^T) / 2`, `(f - f^T) / 2`.
    pub fn parity_parts(&self) -> (Self, Self) {
        let n = self.samples.len();
        let mut even = Vec::with_capacity(n);
        let mut odd = Vec::with_capacity(n);
        for k in 0..n {
            let (a, b) = (self.samples[k], self.samples[n - 1 - k]);
            even.push(0.5 * (a + b));
            odd.push(0.5 * (a - b));
        }
        let (lo, hi) = (self.limit_neg, self.limit_pos);
        (
            Self::from_parts(self.grid, even, 0.5 * (lo + hi), 0.5 * (hi + lo)),
            Self::from_parts(self.grid, odd, 0.5 * (lo - hi), 0.5 * (hi - lo)),
        )
    }

    pub fn even(&self) -> Self {
        self.parity_parts().0
    }

    pub fn odd(&self) -> Self {
        self.parity_parts().1
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_parts(
            self.grid,
            self.samples.iter().map(|&v| f(v)).collect(),
            f(self.limit_neg),
            f(self.limit_pos),
        )
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|v| c * v)
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(Self::from_parts(
            self.grid,
            self.samples.iter().zip(&other.samples).map(|(&a, &b)| f(a, b)).collect(),
            f(self.limit_neg, other.limit_neg),
            f(self.limit_pos, other.limit_pos),
        ))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Linear combination `sum c_i f_i`; all terms must share a grid.
    pub fn combine(terms: &[(f64, &LineFunction)]) -> Result<Self> {
        let (_, first) = terms.first().ok_or_else(|| Error::Parse("empty combination".into()))?;
        let grid = first.grid;
        if terms.iter().any(|(_, f)| f.grid != grid) {
            return Err(Error::GridMismatch);
        }
        let mut samples = vec![0.0; grid.n_points()];
        let (mut lo, mut hi) = (0.0, 0.0);
        for (c, f) in terms {
            for (s, v) in samples.iter_mut().zip(&f.samples) {
                *s += c * v;
            }
            lo += c * f.limit_neg;
            hi += c * f.limit_pos;
        }
        Ok(Self::from_parts(grid, samples, lo, hi))
    }

    /// Sup norm over the nodes and both limits.
    pub fn sup_norm(&self) -> f64 {
        self.samples
            .iter()
            .fold(self.limit_neg.abs().max(self.limit_pos.abs()), |m, v| m.max(v.abs()))
    }

    /// Max of `|f|` over nodes whose abscissa satisfies `keep`.
    pub fn sup_norm_where(&self, keep: impl Fn(f64) -> bool) -> f64 {
        (0..self.samples.len())
            .filter(|&k| keep(self.grid.node(k)))
            .fold(0.0, |m, k| m.max(self.samples[k].abs()))
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.sup_norm())
    }

    pub fn is_finite(&self) -> bool {
        self.samples.iter().all(|v| v.is_finite()) && self.limit_neg.is_finite() && self.limit_pos.is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid {
        Grid::new(5.0, 101).unwrap()
    }

    #[test]
    fn reflect_is_an_involution_bitwise() {
        let f = LineFunction::from_fn_with_limits(grid(), |x| (x * 1.3).sin() + x, -2.0, 7.0);
        assert_eq!(f.reflect().reflect(), f);
        assert_eq!(f.reflect().limit_neg(), 7.0);
    }

    #[test]
    fn parity_parts_recombine() {
        let f = LineFunction::from_fn(grid(), |x| x.exp() * 0.01 + x.cos());
        let (e, o) = f.parity_parts();
        assert!(e.add(&o).unwrap().distance(&f).unwrap() < 1e-15);
        assert!(e.distance(&e.reflect()).unwrap() == 0.0);
        assert!(o.add(&o.reflect()).unwrap().sup_norm() == 0.0);
    }

    #[test]
    fn evaluation_interpolates_and_uses_limits() {
        let f = LineFunction::from_fn_with_limits(grid(), |x| 2.0 * x, -100.0, 100.0);
        assert!((f.evaluate(0.125) - 0.25).abs() < 1e-14);
        assert_eq!(f.evaluate(-6.0), -100.0);
        assert_eq!(f.evaluate(6.0), 100.0);
        assert_eq!(f.evaluate(5.0), 10.0);
    }

    #[test]
    fn checked_constructor_rejects_nan_and_length() {
        let g = grid();
        assert!(LineFunction::new(g, vec![0.0; 100], 0.0, 0.0).is_err());
        let mut s = vec![0.0; 101];
        s[3] = f64::NAN;
        assert!(matches!(LineFunction::new(g, s, 0.0, 0.0), Err(Error::NonFinite(_))));
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let a = LineFunction::zero(grid());
        let b = LineFunction::zero(Grid::new(5.0, 103).unwrap());
        assert_eq!(a.add(&b), Err(Error::GridMismatch));
    }

    #[test]
    fn sup_norm_includes_limits() {
        let f = LineFunction::from_fn_with_limits(grid(), |_| 0.5, 0.0, -3.0);
        assert_eq!(f.sup_norm(), 3.0);
    }
}
