use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid simple type {series}{rank}: {reason}")]
    InvalidType {
        series: char,
        rank: usize,
        reason: &'static str,
    },

    #[error("parse error in {input:?} at position {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    #[error("{0} is not a root of the given system")]
    NotARoot(String),

    #[error("coordinate vector has length {got}, expected {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("weight is not integral")]
    NonIntegralWeight,

    #[error("level {0} is not an integer")]
    NonIntegralLevel(String),

    #[error("operation needs the positive normalization of the invariant form")]
    NegativeForm,

    #[error("highest weight is not dominant integral of positive level: {0}")]
    NotDominant(String),

    #[error("level must be positive, got {0}")]
    NonPositiveLevel(String),

    #[error("weight {0} is not in the support")]
    NotInSupport(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown superalgebra {0:?}")]
    UnknownSuperalgebra(String),

    #[error("hypothesis unmet: {0}")]
    Hypothesis(String),
}
