//! Extension operators from functions with a jump at the origin to pairs of functions on
//! the whole line, and residual tests for membership in the four invariant subspaces.
//!
//! Every extension keeps the left branch of `f` as the first component on `x <= 0` and the
//! right branch as the second component on `x >= 0`, so `restrict` undoes it exactly.

use crate::error::{Error, Result};
use crate::function_space::{FunctionPair, LineFunction, MembraneParams, SharpFunction};
use crate::kernel::{convolve_from_origin, step_weights};
use crate::tolerances::EPS_ALG;

/// The four cosine-invariant subspaces of pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubspaceKind {
    /// Range of the snapping-out extension.
    SnappingC,
    /// Range of the opposite-values extension.
    PerpD,
    /// Range of the skew extension.
    SkewC,
    /// Range of the flipped skew extension.
    WeksD,
}

impl SubspaceKind {
    pub const ALL: [SubspaceKind; 4] =
        [SubspaceKind::SnappingC, SubspaceKind::PerpD, SubspaceKind::SkewC, SubspaceKind::WeksD];

    pub fn name(&self) -> &'static str {
        match self {
            SubspaceKind::SnappingC => "snapping",
            SubspaceKind::PerpD => "perp",
            SubspaceKind::SkewC => "skew",
            SubspaceKind::WeksD => "weks",
        }
    }
}

/// Named sup-norm residuals of the relations characterising a subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub kind: SubspaceKind,
    pub residuals: Vec<(&'static str, f64)>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl MembershipReport {
    fn new(kind: SubspaceKind, residuals: Vec<(&'static str, f64)>, tolerance: f64) -> Self {
        let max_residual = residuals.iter().map(|r| r.1).fold(0.0, f64::max);
        MembershipReport { kind, residuals, max_residual, tolerance, pass: max_residual <= tolerance }
    }
}

fn require_opposite(f: &SharpFunction) -> Result<()> {
    if f.has_opposite_values(EPS_ALG) {
        Ok(())
    } else {
        Err(Error::OppositeValuesViolated { left: f.value_left_of_zero(), right: f.value_right_of_zero() })
    }
}

fn require_continuous(f: &SharpFunction) -> Result<()> {
    if f.is_continuous(EPS_ALG) {
        Ok(())
    } else {
        Err(Error::JumpAtZero { left: f.value_left_of_zero(), right: f.value_right_of_zero() })
    }
}

/// Assembles a pair from the branches of `f` and the mirrored extension values.
/// `ext_left(j)` is the first component at `x = j h`, `ext_right(j)` the second at `x = -j h`, `j >= 1`.
fn assemble(
    f: &SharpFunction,
    ext_left: impl Fn(usize) -> f64,
    ext_right: impl Fn(usize) -> f64,
    left_limit_pos: f64,
    right_limit_neg: f64,
) -> FunctionPair {
    let grid = *f.grid();
    let m = grid.center();
    let n = grid.n_points();
    let mut first = Vec::with_capacity(n);
    first.extend_from_slice(f.left());
    first.extend((1..=m).map(&ext_left));
    let mut second = Vec::with_capacity(n);
    second.extend((1..=m).rev().map(&ext_right));
    second.extend_from_slice(f.right());
    FunctionPair::from_parts(
        LineFunction::from_parts(grid, first, f.limit_neg(), left_limit_pos),
        LineFunction::from_parts(grid, second, right_limit_neg, f.limit_pos()),
    )
}

/// Snapping-out extension: the first component continues `f(-x) + 2 alpha e * [f - f^T](x)`
/// to `x > 0` and the second continues `f(x) - 2 beta e * [f - f^T](x)` to `-x < 0`,
/// with `e` the exponential kernel of rate `alpha + beta`.
pub fn extend_snapping(params: &MembraneParams, f: &SharpFunction) -> FunctionPair {
    let (al, be, a) = (params.alpha(), params.beta(), params.sum());
    let m = f.grid().center();
    let jump: Vec<f64> = (0..=m).map(|j| f.pos(j) - f.neg(j)).collect();
    let k = convolve_from_origin(a, f.grid().spacing(), &jump);
    let (lo, hi) = (f.limit_neg(), f.limit_pos());
    assemble(
        f,
        |j| f.neg(j) + 2.0 * al * k[j],
        |j| f.pos(j) - 2.0 * be * k[j],
        (2.0 * al * hi + (be - al) * lo) / a,
        ((al - be) * hi + 2.0 * be * lo) / a,
    )
}

/// Opposite-values extension; requires `f(0-) = -f(0+)`.
pub fn extend_perp(params: &MembraneParams, f: &SharpFunction) -> Result<FunctionPair> {
    require_opposite(f)?;
    let (al, be, a) = (params.alpha(), params.beta(), params.sum());
    let grid = f.grid();
    let m = grid.center();
    let h = grid.spacing();
    let g: Vec<f64> = (0..=m).map(|j| be * f.pos(j) - al * f.neg(j)).collect();
    let k = convolve_from_origin(a, h, &g);
    let decay = step_weights(a, h).decay;
    let f0 = f.value_right_of_zero();
    let mut boundary = Vec::with_capacity(m + 1);
    let mut e = 2.0 * f0;
    for _ in 0..=m {
        boundary.push(e);
        e *= decay;
    }
    let (lo, hi) = (f.limit_neg(), f.limit_pos());
    Ok(assemble(
        f,
        |j| -f.neg(j) - boundary[j] - 2.0 * k[j],
        |j| -f.pos(j) + boundary[j] + 2.0 * k[j],
        ((al - be) * lo - 2.0 * be * hi) / a,
        ((be - al) * hi - 2.0 * al * lo) / a,
    ))
}

/// The pointwise skew extension, defined for any `f`; it coincides with [`extend_skew`]
/// when `f` is continuous at the origin and is the pointwise limit of the scaled
/// snapping-out extensions otherwise.
pub fn skew_limit_extension(params: &MembraneParams, f: &SharpFunction) -> FunctionPair {
    let (al, be, a) = (params.alpha(), params.beta(), params.sum());
    let (lo, hi) = (f.limit_neg(), f.limit_pos());
    assemble(
        f,
        |j| (be - al) / a * f.neg(j) + 2.0 * al / a * f.pos(j),
        |j| 2.0 * be / a * f.neg(j) + (al - be) / a * f.pos(j),
        ((be - al) * lo + 2.0 * al * hi) / a,
        (2.0 * be * lo + (al - be) * hi) / a,
    )
}

/// Skew extension; requires continuity at the origin.
pub fn extend_skew(params: &MembraneParams, f: &SharpFunction) -> Result<FunctionPair> {
    require_continuous(f)?;
    Ok(skew_limit_extension(params, f))
}

/// Flipped skew extension; requires `f(0-) = -f(0+)`.
pub fn extend_weks(params: &MembraneParams, f: &SharpFunction) -> Result<FunctionPair> {
    require_opposite(f)?;
    let (al, be, a) = (params.alpha(), params.beta(), params.sum());
    let (lo, hi) = (f.limit_neg(), f.limit_pos());
    Ok(assemble(
        f,
        |j| (al - be) / a * f.neg(j) - 2.0 * be / a * f.pos(j),
        |j| -2.0 * al / a * f.neg(j) + (be - al) / a * f.pos(j),
        ((al - be) * lo - 2.0 * be * hi) / a,
        (-2.0 * al * lo + (be - al) * hi) / a,
    ))
}

/// The extension whose range is `kind`.
pub fn extend(kind: SubspaceKind, params: &MembraneParams, f: &SharpFunction) -> Result<FunctionPair> {
    match kind {
        SubspaceKind::SnappingC => Ok(extend_snapping(params, f)),
        SubspaceKind::PerpD => extend_perp(params, f),
        SubspaceKind::SkewC => extend_skew(params, f),
        SubspaceKind::WeksD => extend_weks(params, f),
    }
}

/// Residuals of the relations defining `kind`, evaluated at the nodes of `[0, L]`.
pub fn membership(kind: SubspaceKind, params: &MembraneParams, p: &FunctionPair, tol: f64) -> MembershipReport {
    let (al, be, a) = (params.alpha(), params.beta(), params.sum());
    let grid = p.grid();
    let m = grid.center();
    let h = grid.spacing();
    let (u, v) = (p.first(), p.second());
    let at = |f: &LineFunction, j: usize, sign: isize| f.samples()[(m as isize + sign * j as isize) as usize];
    let even = |f: &LineFunction, j| 0.5 * (at(f, j, 1) + at(f, j, -1));
    let odd = |f: &LineFunction, j| 0.5 * (at(f, j, 1) - at(f, j, -1));
    let sup = |r: &dyn Fn(usize) -> f64| (0..=m).fold(0.0, |acc: f64, j| acc.max(r(j).abs()));
    let residuals = match kind {
        SubspaceKind::SnappingC => {
            let d: Vec<f64> = (0..=m).map(|j| at(v, j, 1) - at(u, j, -1)).collect();
            let k = convolve_from_origin(a, h, &d);
            vec![
                ("first odd part", sup(&|j| odd(u, j) - al * k[j])),
                ("second odd part", sup(&|j| odd(v, j) - be * k[j])),
            ]
        }
        SubspaceKind::PerpD => {
            let g: Vec<f64> = (0..=m).map(|j| be * at(v, j, 1) - al * at(u, j, -1)).collect();
            let k = convolve_from_origin(a, h, &g);
            let decay = step_weights(a, h).decay;
            let v0 = at(v, 0, 1);
            let boundary: Vec<f64> = std::iter::successors(Some(v0), |e| Some(e * decay)).take(m + 1).collect();
            vec![
                ("second even part", sup(&|j| even(v, j) - k[j] - boundary[j])),
                ("even parts cancel", sup(&|j| even(u, j) + even(v, j))),
            ]
        }
        SubspaceKind::SkewC => vec![
            ("even parts agree", sup(&|j| even(u, j) - even(v, j))),
            ("odd parts balance", sup(&|j| be * odd(u, j) - al * odd(v, j))),
        ],
        SubspaceKind::WeksD => vec![
            ("even parts cancel", sup(&|j| even(u, j) + even(v, j))),
            ("odd parts balance", sup(&|j| al * odd(u, j) + be * odd(v, j))),
        ],
    };
    MembershipReport::new(kind, residuals, tol)
}
