//! Error type shared by the whole crate.

use thiserror::Error;

/// Errors are split by who is at fault: bad input data, a violated operation
/// precondition (including refusals such as a nonsupersolvable group handed to
/// the closure pipeline or an oracle called above its degree guard), and
/// internal assertion failures, which indicate a bug rather than bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("precondition error: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
