use thiserror::Error;

/// Crate-wide error type.
///
/// The variants are grouped by how the CLI reports them: input problems
/// (exit 2), unsupported requests (exit 3), and internal inconsistencies
/// (exit 4). A negative verification is not an error; commands report it
/// through their return value.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Exit code for the CLI contract: 2 input, 3 unsupported, 4 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Validation(_) | Error::Dimension(_) | Error::Io { .. } => 2,
            Error::Unsupported(_) => 3,
            Error::Internal(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
