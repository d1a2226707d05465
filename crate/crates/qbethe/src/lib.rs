//! Exact computation of off-shell Bethe vectors (modified weight functions) for
//! the quantum affine algebra of `gl(N)` in finite-dimensional modules.
//!
//! Three independent constructions are provided: the closed sum over admissible
//! matrices, the rank recurrence through embedded Gauss coordinates, and the
//! trace construction with an ordered R-matrix product. All rational-function
//! identities relating them are checked by exact evaluation at random rational
//! points; no floating point is used anywhere.
//!
//! Index conventions: matrix and type indices are 0-based in the API. Type `a`
//! here is the 1-based type `a + 1` of the usual notation.

pub mod combinat;
pub mod error;
pub mod linalg;
pub mod repr;
pub mod rmatrix;
pub mod scalar;
pub mod suites;
pub mod weightfn;

pub use error::{Error, Result};
pub use linalg::{AuxMatrix, Operator, VectorState};
pub use rmatrix::Variant;
pub use scalar::{Rational, ScalarContext};
