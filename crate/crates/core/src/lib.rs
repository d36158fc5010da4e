//! Trace identities of supermatrices with Grassmann coefficients.

pub mod error;
pub mod grassmann;
pub mod identity;
pub mod jpoly;
pub mod json;
pub mod lemmas;
pub mod linalg;
pub mod perm;
pub mod qschur;
pub mod random;
pub mod scalar;
pub mod sergeev;
pub mod supermatrix;

pub use error::{Error, Result};
pub use grassmann::{Blade, GrassmannElement, Parity};
pub use jpoly::{Factor, JTraceExpr, Letter, Value, Word};
pub use linalg::EchelonBasis;
pub use perm::Perm;
pub use scalar::{ExactScalar, Rational, Scalar};
pub use sergeev::{Monomial, SergeevElement};
pub use supermatrix::SuperMatrix;

/// Exact-coefficient instantiations.
pub type Grassmann = GrassmannElement<Rational>;
pub type Matrix = SuperMatrix<Rational>;
pub type Sergeev = SergeevElement<Rational>;
pub type Expr = JTraceExpr<Rational>;

/// Floating-point instantiations, for evaluation only.
pub type GrassmannF64 = GrassmannElement<f64>;
pub type MatrixF64 = SuperMatrix<f64>;
pub type SergeevF64 = SergeevElement<f64>;
pub type ExprF64 = JTraceExpr<f64>;
