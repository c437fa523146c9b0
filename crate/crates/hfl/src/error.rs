use thiserror::Error;

/// Errors raised by library operations.
///
/// `Validation` covers malformed or inconsistent inputs; `Invariant` covers
/// internal consistency checks that failed (for example a differential that
/// does not square to zero after assembly).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HflError {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl HflError {
    pub fn validation(msg: impl Into<String>) -> Self {
        HflError::Validation(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        HflError::Invariant(msg.into())
    }

    /// Process exit code associated with the error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            HflError::Validation(_) => 1,
            HflError::Invariant(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, HflError>;
