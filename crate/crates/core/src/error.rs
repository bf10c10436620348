use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("complex check failed at index {index}: {reason}")]
    InvalidComplex { index: i32, reason: String },

    #[error("not a chain map: square at index {index} does not commute")]
    NotChainMap { index: i32 },

    #[error("truncation insufficient: {0}")]
    TruncationInsufficient(String),

    #[error("ring is not Artinian")]
    NotArtinian,

    #[error("not Cohen-Macaulay: {0}")]
    NotCohenMacaulay(String),

    #[error("lifting failed at index {index}: {reason}")]
    LiftFailed { index: i32, reason: String },

    #[error("certificate could not be verified: {0}")]
    Unverified(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
        expected: Vec<String>,
    },

    #[error("statement {statement} (line {line}): {message}")]
    Runtime {
        statement: usize,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
