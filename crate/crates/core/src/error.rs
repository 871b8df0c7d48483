use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operands belong to different algebras ({left} vs {right})")]
    SpecMismatch { left: String, right: String },

    #[error("element is not in the quadratic cone: {0}")]
    NotInCone(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("undefined at a real point: {0}")]
    RealPoint(String),

    #[error("point outside the admissible region: {0}")]
    OutsideRegion(String),

    #[error("not enough input terms: need {needed}, got {got}")]
    InsufficientTerms { needed: usize, got: usize },

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error("unsupported algebra: {0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
