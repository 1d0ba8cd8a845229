use super::{FunctionPair, LineFunction, SharpFunction};
use crate::error::{Error, Result};
use crate::tolerances::EPS_ALG;

/// Negates the left branch of an opposite-valued function, producing a continuous one.
pub fn flip_j(f: &SharpFunction) -> Result<LineFunction> {
    if !f.has_opposite_values(EPS_ALG) {
        return Err(Error::OppositeValuesViolated { left: f.value_left_of_zero(), right: f.value_right_of_zero() });
    }
    let grid = *f.grid();
    let m = grid.center();
    let mut s = Vec::with_capacity(grid.n_points());
    s.extend(f.left()[..m].iter().map(|v| -v));
    s.extend_from_slice(f.right());
    Ok(LineFunction::from_parts(grid, s, -f.limit_neg(), f.limit_pos()))
}

/// Inverse of [`flip_j`]: `f(0-) = -g(0)`, `f(0+) = g(0)`.
pub fn flip_j_inverse(g: &LineFunction) -> SharpFunction {
    let grid = *g.grid();
    let m = grid.center();
    let s = g.samples();
    SharpFunction::from_parts(
        grid,
        s[..=m].iter().map(|v| -v).collect(),
        s[m..].to_vec(),
        -g.limit_neg(),
        g.limit_pos(),
    )
}

/// `(f1, f2) -> (-f1, f2)`.
pub fn flip_pair(p: &FunctionPair) -> FunctionPair {
    FunctionPair::from_parts(p.first().scale(-1.0), p.second().clone())
}
