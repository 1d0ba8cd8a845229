//! Numerical toolkit for cosine families and semigroups on the line with a semi-permeable
//! membrane at the origin.
//!
//! Functions live on a uniform symmetric grid with explicit limits at `+-inf`. The crate
//! provides exact-kernel exponential convolutions, Kelvin-type extension operators for four
//! families of transmission conditions, complementary projections onto cosine-invariant
//! subspaces, the resulting cosine families and semigroups, and scaling-limit experiments.

pub mod corpus;
pub mod error;
pub mod evolution;
pub mod extensions;
pub mod function_space;
pub mod kernel;
pub mod projections;
pub mod scaling;
pub mod suites;
pub mod tolerances;

pub use error::{Error, Result};
