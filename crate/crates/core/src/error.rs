use thiserror::Error;

/// Errors raised by the calculus.
///
/// `Validation` covers malformed or inconsistent input data; `Unsupported`
/// marks well-formed models that fall outside what the calculus handles
/// (for instance a non-commutative endomorphism algebra).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("degenerate pairing: the pairing matrix is singular")]
    DegeneratePairing,
    #[error("action groups differ ({left} vs {right} generators)")]
    GroupMismatch { left: usize, right: usize },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("unsupported model: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn dim(context: &'static str, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            context,
            expected,
            found,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
