use std::fmt;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Recurrence coefficients violate the positivity requirements.
    InvalidSpec(String),
    /// A caller-supplied argument is out of the operation's domain.
    InvalidArgument(String),
    /// An exhaustive enumeration would exceed the configured cap.
    CapExceeded { cap: u64, detail: String },
    /// An iterative numeric routine failed to converge.
    NonConvergence(String),
    /// A sequence index falls outside the generated table.
    IndexOutOfRange(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSpec(msg) => write!(f, "invalid recurrence spec: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::CapExceeded { cap, detail } => {
                write!(f, "enumeration cap of {cap} candidates exceeded: {detail}")
            }
            Error::NonConvergence(msg) => write!(f, "failed to converge: {msg}"),
            Error::IndexOutOfRange(msg) => write!(f, "index out of range: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
