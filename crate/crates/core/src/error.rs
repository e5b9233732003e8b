use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PowError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator is numerically too close to zero at the given lambda values")]
    NearSingularEvaluation,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("variety is empty")]
    EmptyVariety,
    #[error("subspace is not contained in L(0)")]
    NotContained,
    #[error("bad embedding: {0}")]
    BadEmbedding(String),
    #[error("point does not satisfy the configuration")]
    NotOnVariety,
    #[error("exponent field is not embedded in the reals (missing lambda values)")]
    NotRealEmbedded,
    #[error("margin {margin} is infeasible for radius {radius}")]
    MarginInfeasible { margin: f64, radius: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("parameter values are required when l > 0")]
    MissingParameters,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, PowError>;
