use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-side precondition was violated (index out of range, set
    /// outside its universe, vector of the wrong length).
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    /// Brute-force or symbolic enumeration refused because `n` exceeds the
    /// configured cap.
    #[error("{what}: n = {n} exceeds enumeration cap {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("thread pool: {0}")]
    ThreadPool(String),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Short machine-readable tag for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Contract(_) => "contract_violation",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::UnsupportedDimension(_) => "unsupported_dimension",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Parse { .. } => "parse_error",
            Error::ThreadPool(_) => "thread_pool",
        }
    }
}
