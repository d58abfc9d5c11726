use thiserror::Error;

/// Errors surfaced by the kernel. Validation *results* are not errors — they
/// come back as [`crate::certificate::Certificate`] values with witnesses —
/// but malformed inputs and rejected constructions are.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("malformed scalar: {0}")]
    Scalar(String),

    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown label {label:?} in {context}")]
    UnknownLabel { label: String, context: String },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("vector not in subspace: {0}")]
    NotInSubspace(String),

    #[error("construction rejected: {0}")]
    Rejected(String),

    #[error("validation failed for {subject}: {first_failure}")]
    Invalid { subject: String, first_failure: String },
}
