use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QqError {
    #[error("pole: {0}")]
    Pole(String),
    #[error("colliding arguments: {0}")]
    CollidingArguments(String),
    #[error("path inconsistency: {0}")]
    PathInconsistency(String),
    #[error("expansion did not terminate: {0}")]
    NonTermination(String),
    #[error("limit needs a factored coefficient: {0}")]
    NonFactoredLimit(String),
    #[error("classical coefficient is not an integer: {0}")]
    NonIntegerLimit(String),
    #[error("Y-monomials collide after specialization: {0}")]
    YCollision(String),
    #[error("pit not allowed: {0}")]
    InvalidPit(String),
    #[error("invalid input: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, QqError>;

impl QqError {
    /// Process exit code used by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            QqError::Pole(_) => 3,
            QqError::CollidingArguments(_) => 4,
            QqError::Validation(_) | QqError::InvalidPit(_) => 2,
            QqError::YCollision(_) => 5,
            QqError::NonFactoredLimit(_) | QqError::NonIntegerLimit(_) => 6,
            QqError::PathInconsistency(_) | QqError::NonTermination(_) => 7,
        }
    }
}
