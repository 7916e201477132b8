use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An exponential oracle or enumeration was asked to run beyond the size
    /// it accepts.
    #[error("{what} = {got} exceeds the supported limit of {limit}")]
    ScaleLimit {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    /// A floating-point sanity check failed. This always indicates a bug.
    #[error("numerical check failed: {0}")]
    Numerical(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
