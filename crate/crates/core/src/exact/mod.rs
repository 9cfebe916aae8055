//! Exact rational scalars and dense matrices.
//!
//! Every rank decision made elsewhere in the crate bottoms out in [`rref`].

mod elim;
mod matrix;
mod rational;
mod wire;

pub use elim::{
    column_echelon_basis, complete_to_basis, invert, mat_pow, nullspace_basis, primitive_columns,
    rank, row_reduce, rref, solve_linear, LinearSolution, Rref,
};
pub use matrix::RatMatrix;
pub use rational::{denominator_lcm, format_rational, gcd_all, parse_rational, rat, ratio, Rational};
pub use wire::{serde_opt_vector, serde_opt_vectors, serde_rational, serde_vector, serde_vectors};
