use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("arrows `{0}` and `{1}` do not compose (target of the first is not the source of the second)")]
    NotComposable(String, String),
    #[error("relation {index} is not uniform: {reason}")]
    NonUniform { index: usize, reason: String },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("arrow name `{0}` uses the reserved reversed-arrow suffix")]
    ReservedName(String),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("degree {requested} is beyond the certified range (exact through {certified})")]
    BeyondCertified { requested: u64, certified: u64 },
    #[error("algebra is not certified finite dimensional")]
    NotFinite,
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
