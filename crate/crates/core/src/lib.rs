//! Exact-arithmetic engine for the prolongation of vector fields to jet
//! bundles of pseudo-Riemannian metrics.
//!
//! The central object is the linear map that sends an `(r+1)`-jet of a vector
//! field on the base to the tangent vector its prolongation induces at a
//! fixed point of the metric jet bundle.  Everything downstream — ranks,
//! kernels, curvature normal forms, and the count of functionally independent
//! scalar differential invariants — is computed over arbitrary-precision
//! rationals, so every reported number is exact, not a floating-point
//! estimate.
//!
//! Module layout:
//! - [`multiindex`]: graded-lexicographic multi-index bookkeeping;
//! - [`exact`]: rationals, dual numbers, fraction-free linear algebra,
//!   modular rank certificates;
//! - [`jetspace`]: coordinates on metric jets and vector-field jets,
//!   row/column layouts, JSON interchange;
//! - [`prolong`]: the prolongation formula, its matrix, and Lie-algebraic
//!   consistency checks;
//! - [`geometry`]: Christoffel symbols, curvature, normal-coordinate jets,
//!   kernel equations;
//! - [`counting`]: closed-form and empirical invariant counts with
//!   certificates;
//! - [`acceptance`]: the end-to-end verification suite.

// Tensor and matrix routines index several parallel structures by dimension;
// explicit index loops mirror the formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod acceptance;
pub mod counting;
pub mod exact;
pub mod geometry;
pub mod jetspace;
pub mod multiindex;
pub mod prolong;

pub use exact::{DualScalar, ExactMatrix, ExactScalar, Rational};

pub use jetspace::{MetricJetPoint, TangentVector, VectorFieldJet};
pub use multiindex::MultiIndex;
