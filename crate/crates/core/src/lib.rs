//! Exact Newton potentials and forces between axis-parallel cuboids.
//!
//! The kernel is replaced by a Laplace-type σ-integral, the multiple
//! integral factorizes into one-dimensional σ-factors, their product is
//! renormalized by an exact rewrite rule, and the terminal terms are read off
//! an integral table. What the table does not cover is priced by quadrature.

pub mod closedform;
pub mod error;
pub mod exactnum;
pub mod moments;
pub mod pipeline;
pub mod problem;
pub mod quadrature;
pub mod reference;
pub mod renorm;
pub mod sigma;

pub use closedform::{ClosedExpr, Format, Status};
pub use error::{Error, Result};
pub use exactnum::Rational;
pub use pipeline::{dump_integrand, numeric_fallback, run, RunResult, Stage};
pub use problem::{CuboidSpec, Kind, ProblemSpec};

/// Exact bivariate polynomials, the default instantiation.
pub type RatPoly = exactnum::BiPoly<Rational>;
/// Floating-point bivariate polynomials, for quick evaluation.
pub type FloatPoly = exactnum::BiPoly<f64>;
