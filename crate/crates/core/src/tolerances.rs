//! Numerical tolerances shared by tests, suites and the CLI.

use crate::function_space::Grid;

/// Identities that hold up to rounding.
pub const EPS_ALG: f64 = 1e-9;

/// Identities that hold up to the second-order quadrature error, `10 h^2`.
pub fn eps_disc(grid: &Grid) -> f64 {
    10.0 * grid.spacing() * grid.spacing()
}

/// Relative integer-offset tolerance below which a time is treated as a whole number of grid steps.
pub const SHIFT_SNAP: f64 = 1e-9;
