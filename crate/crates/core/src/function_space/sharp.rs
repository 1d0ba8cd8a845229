use super::{Grid, LineFunction};
use crate::error::{Error, Result};

/// A function with a possible jump at the origin: a left branch on `[-L, 0]` ending at
/// `f(0-)`, a right branch on `[0, L]` starting at `f(0+)`, and limits at `+-inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct SharpFunction {
    grid: Grid,
    left: Vec<f64>,
    right: Vec<f64>,
    limit_neg: f64,
    limit_pos: f64,
}

impl SharpFunction {
    pub fn new(grid: Grid, left: Vec<f64>, right: Vec<f64>, limit_neg: f64, limit_pos: f64) -> Result<Self> {
        let len = grid.center() + 1;
        if left.len() != len || right.len() != len {
            return Err(Error::GridMismatch);
        }
        if left.iter().chain(&right).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("branch sample".into()));
        }
        if !limit_neg.is_finite() || !limit_pos.is_finite() {
            return Err(Error::NonFinite("limit".into()));
        }
        Ok(Self::from_parts(grid, left, right, limit_neg, limit_pos))
    }

    pub(crate) fn from_parts(grid: Grid, left: Vec<f64>, right: Vec<f64>, limit_neg: f64, limit_pos: f64) -> Self {
        debug_assert_eq!(left.len(), grid.center() + 1);
        debug_assert_eq!(right.len(), grid.center() + 1);
        SharpFunction { grid, left, right, limit_neg, limit_pos }
    }

    /// Samples `fl` on `[-L, 0]` and `fr` on `[0, L]`; limits repeat the boundary samples.
    pub fn from_branches(grid: Grid, fl: impl Fn(f64) -> f64, fr: impl Fn(f64) -> f64) -> Self {
        let m = grid.center();
        let h = grid.spacing();
        let left: Vec<f64> = (0..=m).map(|k| fl(-((m - k) as f64) * h)).collect();
        let right: Vec<f64> = (0..=m).map(|j| fr(j as f64 * h)).collect();
        let (lo, hi) = (left[0], right[m]);
        Self::from_parts(grid, left, right, lo, hi)
    }

    pub fn from_branches_with_limits(
        grid: Grid,
        fl: impl Fn(f64) -> f64,
        fr: impl Fn(f64) -> f64,
        limit_neg: f64,
        limit_pos: f64,
    ) -> Self {
        let f = Self::from_branches(grid, fl, fr);
        Self { limit_neg, limit_pos, ..f }
    }

    /// Continuous embedding: both one-sided values at zero equal `f(0)`.
    pub fn from_line(f: &LineFunction) -> Self {
        let m = f.grid().center();
        let s = f.samples();
        Self::from_parts(*f.grid(), s[..=m].to_vec(), s[m..].to_vec(), f.limit_neg(), f.limit_pos())
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn left(&self) -> &[f64] {
        &self.left
    }

    pub fn right(&self) -> &[f64] {
        &self.right
    }

    pub fn limit_neg(&self) -> f64 {
        self.limit_neg
    }

    pub fn limit_pos(&self) -> f64 {
        self.limit_pos
    }

    /// Value at `x = -j h` from the left branch; `neg(0)` is `f(0-)`.
    pub fn neg(&self, j: usize) -> f64 {
        self.left[self.grid.center() - j]
    }

    /// Value at `x = j h` from the right branch; `pos(0)` is `f(0+)`.
    pub fn pos(&self, j: usize) -> f64 {
        self.right[j]
    }

    pub fn value_left_of_zero(&self) -> f64 {
        self.neg(0)
    }

    pub fn value_right_of_zero(&self) -> f64 {
        self.right[0]
    }

    /// `f(0+) - f(0-)`.
    pub fn jump(&self) -> f64 {
        self.value_right_of_zero() - self.value_left_of_zero()
    }

    pub fn is_continuous(&self, tol: f64) -> bool {
        self.jump().abs() <= tol
    }

    /// `f(0-) = -f(0+)` within `tol`.
    pub fn has_opposite_values(&self, tol: f64) -> bool {
        (self.value_left_of_zero() + self.value_right_of_zero()).abs() <= tol
    }

    /// Drops the duplicated origin; requires continuity within `tol`.
    pub fn to_line(&self, tol: f64) -> Result<LineFunction> {
        let (l, r) = (self.value_left_of_zero(), self.value_right_of_zero());
        if (r - l).abs() > tol {
            return Err(Error::JumpAtZero { left: l, right: r });
        }
        let m = self.grid.center();
        let mut s = Vec::with_capacity(self.grid.n_points());
        s.extend_from_slice(&self.left[..m]);
        s.push(0.5 * (l + r));
        s.extend_from_slice(&self.right[1..]);
        Ok(LineFunction::from_parts(self.grid, s, self.limit_neg, self.limit_pos))
    }

    /// Interpolated value; the origin reports `f(0+)`.
    pub fn evaluate(&self, x: f64) -> f64 {
        let h = self.grid.spacing();
        let m = self.grid.center();
        let branch = |vals: &dyn Fn(usize) -> f64, d: f64, limit: f64| {
            let pos = d / h;
            if pos > m as f64 {
                return limit;
            }
            let j = (pos.floor() as usize).min(m - 1);
            let theta = pos - j as f64;
            (1.0 - theta) * vals(j) + theta * vals(j + 1)
        };
        if x < 0.0 {
            branch(&|j| self.neg(j), -x, self.limit_neg)
        } else {
            branch(&|j| self.pos(j), x, self.limit_pos)
        }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_parts(
            self.grid,
            self.left.iter().map(|&v| f(v)).collect(),
            self.right.iter().map(|&v| f(v)).collect(),
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
            self.left.iter().zip(&other.left).map(|(&a, &b)| f(a, b)).collect(),
            self.right.iter().zip(&other.right).map(|(&a, &b)| f(a, b)).collect(),
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

    /// Sup over both branches (both one-sided values at zero) and both limits.
    pub fn sup_norm(&self) -> f64 {
        self.left
            .iter()
            .chain(&self.right)
            .fold(self.limit_neg.abs().max(self.limit_pos.abs()), |m, v| m.max(v.abs()))
    }

    /// Max of `|f|` over branch nodes whose abscissa satisfies `keep`.
    pub fn sup_norm_where(&self, keep: impl Fn(f64) -> bool) -> f64 {
        let h = self.grid.spacing();
        let m = self.grid.center();
        (0..=m).fold(0.0, |acc, j| {
            let x = j as f64 * h;
            let mut acc = acc;
            if keep(-x) {
                acc = f64::max(acc, self.neg(j).abs());
            }
            if keep(x) {
                acc = f64::max(acc, self.pos(j).abs());
            }
            acc
        })
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.sup_norm())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> Grid {
        Grid::new(3.0, 61).unwrap()
    }

    #[test]
    fn branches_and_offsets_agree() {
        let f = SharpFunction::from_branches(grid(), |x| x - 1.0, |x| x + 1.0);
        assert_eq!(f.value_left_of_zero(), -1.0);
        assert_eq!(f.value_right_of_zero(), 1.0);
        assert_eq!(f.jump(), 2.0);
        assert!((f.neg(10) + 2.0).abs() < 1e-15);
        assert!((f.pos(10) - 2.0).abs() < 1e-15);
        assert!(f.has_opposite_values(0.0));
        assert!(!f.is_continuous(1e-9));
        assert!(matches!(f.to_line(1e-9), Err(Error::JumpAtZero { .. })));
    }

    #[test]
    fn line_round_trip() {
        let g = LineFunction::from_fn(grid(), |x| x.sin());
        let s = SharpFunction::from_line(&g);
        assert!(s.is_continuous(0.0));
        assert_eq!(s.to_line(0.0).unwrap(), g);
    }

    #[test]
    fn evaluate_respects_sides() {
        let f = SharpFunction::from_branches_with_limits(grid(), |x| x, |x| 1.0 + x, -9.0, 9.0);
        assert!((f.evaluate(-0.05) + 0.05).abs() < 1e-14);
        assert!((f.evaluate(0.05) - 1.05).abs() < 1e-14);
        assert_eq!(f.evaluate(0.0), 1.0);
        assert_eq!(f.evaluate(-4.0), -9.0);
        assert_eq!(f.evaluate(4.0), 9.0);
    }

    #[test]
    fn sup_norm_counts_both_zero_values() {
        let f = SharpFunction::from_branches_with_limits(grid(), |_| -4.0, |_| 1.0, 0.0, 0.0);
        assert_eq!(f.sup_norm(), 4.0);
    }
}
