//! Exact integer and rational linear algebra.
//!
//! Nothing in this crate touches floating point: determinants use Bareiss
//! elimination, normal forms carry their unimodular transforms, and the
//! simplex works on a fraction-free integer tableau.

mod matrix;
mod minors;
mod normal_form;
mod simplex;
mod solve;

pub use matrix::{
    add_vec, content, dot, fmt_rational, int_vec, is_zero_vec, join, primitive, scale_vec, sub_vec,
    IntMatrix, IntVector, RatVector,
};
pub use minors::{delta_modulus, gcd_max_minors};
pub use normal_form::{hermite, smith, HermiteDecomposition, SmithDecomposition};
pub use simplex::{lp_max_sum, maximize, maximize_inequality, OptimalVertex};
pub use solve::{
    inverse_rational, inverse_unimodular, solve_in_span, solve_linear, LinearSolution,
};
