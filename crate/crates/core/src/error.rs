use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A multiplication table failed one of the group axioms.
    #[error("invalid group table: {axiom} violated ({detail})")]
    Construction { axiom: &'static str, detail: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("{what} of size {size} exceeds the configured bound {bound}; raise the bound to proceed")]
    Capacity {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
