use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("matrix is not symmetric positive definite: {0}")]
    NotSpd(String),

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("empty direct sum")]
    EmptyDirectSum,

    #[error("Hadamard division by zero")]
    HadamardDivisionByZero,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("score undefined at origin")]
    ScoreUndefinedAtOrigin,

    #[error("quadrature did not converge: estimated error {0:.3e}")]
    QuadratureNonConvergence(f64),

    #[error("condition guard exhausted after {0} attempts")]
    ConditionGuardExhausted(usize),

    #[error("model mismatch: mean gradient departs from zero by {0:.1} sigma")]
    ModelMismatch(f64),

    #[error("unsupported model for this operation: {0}")]
    UnsupportedModel(String),

    #[error("problem too large: {0}")]
    TooLarge(String),

    #[error("missing pair ({0}, {1})")]
    MissingPair(usize, usize),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
