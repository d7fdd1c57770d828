use thiserror::Error;

/// Errors reported by the counting library.
///
/// `InternalInconsistency` signals an implementation bug (an exact division
/// that failed), never bad user input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violated a precondition (empty table, short sequence, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// The request exceeds a window a method is intentionally capped at.
    #[error("unsupported size: {0}")]
    UnsupportedSize(String),
    /// A division that must be exact left a remainder.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
