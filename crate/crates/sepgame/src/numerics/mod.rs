//! Exact-rational and floating-point linear algebra, univariate polynomial
//! utilities, and an LP feasibility solver. Everything else in the crate
//! builds on this module.

pub mod lp;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use lp::{lp_feasible, FeasibilityProgram, LpOutcome, VarBound};
pub use matrix::{
    affine_dependence_exact, affine_dependence_float, row_space_basis_exact, Field, Matrix,
};
pub use poly::UniPoly;
pub use rational::{format_exact, parse_decimal, Rat};

/// Default float comparison tolerance used across the crate.
pub const DEFAULT_TOL: f64 = 1e-9;
