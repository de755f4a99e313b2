//! Exact scalar arithmetic and dense linear algebra over ℚ and ℚ(i).

mod factor;
mod matrix;
mod poly;
mod rational;
mod scalar;
mod subspace;

pub use factor::{find_factor, FactorSearch};
pub use matrix::Matrix;
pub use poly::UniPoly;
pub use rational::{binomial, common_denominator, factorial, ParseRationalError, Rational};
pub use scalar::{Scalar, ScalarMode};
pub use subspace::{EchelonBuilder, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}
