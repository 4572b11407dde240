use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid pair: {0}")]
    InvalidPair(String),
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("word is not reduced: {0}")]
    NotReduced(String),
    #[error("rank guard: {0}")]
    RankGuard(String),
    #[error("inadmissible: {0}")]
    Inadmissible(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
