use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The fixed point cannot be generated (e.g. the image of the start letter has length 1).
    #[error("generation failure: {0}")]
    GenerationFailure(String),

    #[error("resource limit exceeded: {what} (budget {budget})")]
    ResourceLimit { what: String, budget: usize },

    /// A word is not a concatenation of the known return words.
    #[error("word is not decomposable over the return words (failure at position {position})")]
    Decomposition { position: usize },

    /// A computation contradicted an identity that must hold; indicates a bug upstream.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("cancelled")]
    Cancelled,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
