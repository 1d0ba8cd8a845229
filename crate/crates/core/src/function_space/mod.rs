//! Grids, sampled functions on the line, functions with a jump at the origin, pairs,
//! and the elementary operators between them.

mod flip;
mod grid;
pub mod io;
mod line;
mod pair;
mod params;
mod sharp;

pub use flip::{flip_j, flip_j_inverse, flip_pair};
pub use grid::Grid;
pub use line::LineFunction;
pub use pair::{matrix_apply, matrix_preimage, FunctionPair, Matrix2};
pub use params::MembraneParams;
pub use sharp::SharpFunction;

/// `x -> f(-x)`.
pub fn reflect(f: &LineFunction) -> LineFunction {
    f.reflect()
}

/// Even and odd parts of `f`.
pub fn parity_parts(f: &LineFunction) -> (LineFunction, LineFunction) {
    f.parity_parts()
}

/// Restriction of a pair to a function with a jump at the origin.
pub fn restrict(p: &FunctionPair) -> SharpFunction {
    p.restrict()
}
