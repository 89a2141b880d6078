//! Exact arithmetic foundation for flat-connection calculus in
//! characteristic p: prime fields, dense univariate polynomials, reduced
//! rational functions, truncated rings F_p[x]/(x^N), and exact linear
//! algebra over the rational-function field.
//!
//! All values are immutable after construction and all operations are pure.

pub mod error;
pub mod fp;
pub mod json;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod truncring;

pub use error::ExactError;
pub use fp::{binomial_mod, FpElement, Prime};
pub use matrix::{clear_vector, in_span, MatrixRF};
pub use poly::DensePoly;
pub use ratfunc::RationalFunction;
pub use truncring::{TruncElem, TruncatedRing};
