use thiserror::Error;

pub type Result<T> = std::result::Result<T, DiscError>;

#[derive(Debug, Error)]
pub enum DiscError {
    /// An input violates an operation's precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The instance is larger than the desk-scale limit of an operation.
    #[error("instance too large: {0}")]
    Guard(String),

    #[error("base arrangement is not generic: {0}")]
    NotGeneric(String),

    #[error("could not generate generic normals after {rounds} resampling rounds")]
    GenerationFailed { rounds: usize },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl DiscError {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        DiscError::Precondition(msg.into())
    }

    pub(crate) fn guard(msg: impl Into<String>) -> Self {
        DiscError::Guard(msg.into())
    }
}
