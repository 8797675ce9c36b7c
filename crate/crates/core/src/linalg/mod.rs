//! Exact linear algebra over ℚ and GF(p).

mod echelon;
mod matrix;
mod scalar;

pub use echelon::Echelon;
pub use matrix::{axpy, quotient_basis, Matrix, QuotientBasis};
pub use scalar::{Field, Scalar, MAX_PRIME};
