use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller passed a value outside the operation's domain.
    #[error("invalid input: {0}")]
    Input(String),

    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Exhaustive routines refuse ground sets above their enumeration limit.
    #[error("ground set of size {size} exceeds the limit of {limit} for {what}")]
    Size {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// Internal state disagrees with itself; always a bug.
    #[error("internal invariant broken: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
