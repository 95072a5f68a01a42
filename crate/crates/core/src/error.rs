use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid level: {0}")]
    InvalidLevel(String),

    #[error("arity mismatch: polynomial has {expected} variables, point has {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("enumeration of {required} points exceeds the budget of {budget}")]
    BudgetExceeded { required: String, budget: u64 },

    #[error("precision mismatch: {0}")]
    PrecisionMismatch(String),

    #[error("rational fit failed: coefficient {index} does not match")]
    FitFailure { index: usize },

    #[error("rational fit is underdetermined: need {needed} coefficients, have {available}")]
    Ambiguous { needed: usize, available: usize },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid resolution data: {0}")]
    InvalidResolution(String),

    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("model inconsistency at m = {m}: predicted value {value} is not a nonnegative integer")]
    ModelInconsistency { m: usize, value: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl ZetaError {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        ZetaError::Parse {
            offset,
            message: message.into(),
        }
    }
}

pub type Result<T, E = ZetaError> = std::result::Result<T, E>;
