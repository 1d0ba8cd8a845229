use super::{Grid, LineFunction, SharpFunction};
use crate::error::{Error, Result};

/// An element `(f1, f2)` of the product space; both components share one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionPair {
    first: LineFunction,
    second: LineFunction,
}

impl FunctionPair {
    pub fn new(first: LineFunction, second: LineFunction) -> Result<Self> {
        if first.grid() != second.grid() {
            return Err(Error::GridMismatch);
        }
        Ok(FunctionPair { first, second })
    }

    pub(crate) fn from_parts(first: LineFunction, second: LineFunction) -> Self {
        debug_assert_eq!(first.grid(), second.grid());
        FunctionPair { first, second }
    }

    pub fn from_fn(grid: Grid, f1: impl Fn(f64) -> f64, f2: impl Fn(f64) -> f64) -> Self {
        Self::from_parts(LineFunction::from_fn(grid, f1), LineFunction::from_fn(grid, f2))
    }

    pub fn grid(&self) -> &Grid {
        self.first.grid()
    }

    pub fn first(&self) -> &LineFunction {
        &self.first
    }

    pub fn second(&self) -> &LineFunction {
        &self.second
    }

    pub fn into_parts(self) -> (LineFunction, LineFunction) {
        (self.first, self.second)
    }

    /// Left branch from `f1` on `(-inf, 0]`, right branch from `f2` on `[0, inf)`.
    pub fn restrict(&self) -> SharpFunction {
        let m = self.grid().center();
        SharpFunction::from_parts(
            *self.grid(),
            self.first.samples()[..=m].to_vec(),
            self.second.samples()[m..].to_vec(),
            self.first.limit_neg(),
            self.second.limit_pos(),
        )
    }

    pub fn map(&self, f: impl Fn(&LineFunction) -> LineFunction) -> Self {
        Self::from_parts(f(&self.first), f(&self.second))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self::from_parts(self.first.add(&other.first)?, self.second.add(&other.second)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self::from_parts(self.first.sub(&other.first)?, self.second.sub(&other.second)?))
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map(|f| f.scale(c))
    }

    pub fn sup_norm(&self) -> f64 {
        self.first.sup_norm().max(self.second.sup_norm())
    }

    pub fn sup_norm_where(&self, keep: impl Fn(f64) -> bool + Copy) -> f64 {
        self.first.sup_norm_where(keep).max(self.second.sup_norm_where(keep))
    }

    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.sup_norm())
    }
}

/// A 2x2 real matrix acting on pairs by `(m11 f1^T + m12 f2^T, m21 f1 + m22 f2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub m: [[f64; 2]; 2],
}

impl Matrix2 {
    pub fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Matrix2 { m: [[m11, m12], [m21, m22]] }
    }

    /// Intertwines the snapping cosine subspace with the subspace cut out by
    /// `phi1^o = (alpha + beta) e * phi1` and `phi2^o = (gamma^2 / 2) e * phi1`; requires `alpha != beta`.
    pub fn snapping_transform(params: &super::MembraneParams) -> Result<Self> {
        let (a, b) = (params.alpha(), params.beta());
        if a == b {
            return Err(Error::SingularMatrix);
        }
        let k = 1.0 / (a - b);
        Ok(Matrix2::new(k * b, -k, k * a, -k))
    }

    /// The matrix intertwining the skew and perpendicular conditions.
    pub fn sharp() -> Self {
        Matrix2::new(-0.5, 0.5, 0.5, 0.5)
    }

    pub fn determinant(&self) -> f64 {
        let [[a, b], [c, d]] = self.m;
        a * d - b * c
    }
}

pub fn matrix_apply(m: &Matrix2, p: &FunctionPair) -> FunctionPair {
    let [[m11, m12], [m21, m22]] = m.m;
    let (r1, r2) = (p.first.reflect(), p.second.reflect());
    let first = LineFunction::combine(&[(m11, &r1), (m12, &r2)]).expect("components share a grid");
    let second = LineFunction::combine(&[(m21, &p.first), (m22, &p.second)]).expect("components share a grid");
    FunctionPair::from_parts(first, second)
}

/// Solves `matrix_apply(m, phi) = psi` for `phi`.
pub fn matrix_preimage(m: &Matrix2, psi: &FunctionPair) -> Result<FunctionPair> {
    let det = m.determinant();
    if det == 0.0 {
        return Err(Error::SingularMatrix);
    }
    let [[a, b], [c, d]] = m.m;
    let r = psi.first.reflect();
    let first = LineFunction::combine(&[(d / det, &r), (-b / det, &psi.second)])?;
    let second = LineFunction::combine(&[(-c / det, &r), (a / det, &psi.second)])?;
    Ok(FunctionPair::from_parts(first, second))
}
