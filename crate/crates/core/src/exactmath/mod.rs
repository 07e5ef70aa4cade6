//! Exact rational arithmetic, polynomials, closed-form summation and linear solving.

mod expr;
mod linsys;
mod poly;
mod rational;
mod sum;

use thiserror::Error;

pub use expr::AffineExpr;
pub use linsys::{positive_completion, solve_exact, Infeasibility, LinOutcome, LinSystem, SignTag};
pub use poly::UniPoly;
pub use rational::Rational;
pub use sum::{poly_sum_over_range, power_sum, sum_between, MAX_SUMMAND_DEGREE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("bound {0:?} is not affine in the summation variable")]
    NonAffine(String),
    #[error("variable {0:?} has no value")]
    UnboundVariable(String),
    #[error("value does not fit in 64 bits")]
    Overflow,
    #[error("summand degree {degree} exceeds the supported maximum {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
