use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("not a hyperplane: all coefficients are zero")]
    ZeroFunctional,

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("duplicate hyperplanes: index {second} normalizes to the same functional as index {first}")]
    DuplicateHyperplane { first: usize, second: usize },

    #[error("hyperplane index {index} out of range (arrangement has {count} hyperplanes)")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("index set {{{0}}} is not a flat of the arrangement")]
    NotAFlat(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("invalid input certificate")]
    CertificateDoesNotVerify,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("arrangements with more than 64 hyperplanes are not supported (got {0})")]
    TooManyHyperplanes(usize),

    #[error("search budget exhausted after {0} nodes")]
    BudgetExhausted(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
