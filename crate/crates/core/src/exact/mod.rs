//! Exact scalars and exact linear algebra.
//!
//! Everything in this module is integer/rational arithmetic — no floating
//! point anywhere.  Rank and kernel computations run fraction-free (Bareiss)
//! over big integers after clearing denominators row by row; large
//! full-column-rank instances can instead be certified by elimination modulo
//! a 61-bit prime, which can only underestimate the rank, never overestimate
//! it.

mod dual;
mod matrix;
mod modular;
mod rational;
mod scalar;
mod small;
mod univariate;

pub use dual::DualScalar;
pub use matrix::ExactMatrix;
pub use modular::{inv_mod, mul_mod, rank_mod, reduce_rational, ModReduceError, PRIMES_61BIT};
pub use rational::{format_rational, parse_rational, rat, rat_i, ParseRationalError, Rational};
pub use scalar::ExactScalar;
pub use small::{det_small, invert_small};
pub use univariate::{
    poly_derivative, poly_eval, poly_gcd, poly_is_squarefree, poly_negate_variable, sign_variations,
};
