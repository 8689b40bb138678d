use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("symbol {symbol} at position {position} is outside alphabet of size {alphabet}")]
    SymbolOutOfRange {
        symbol: usize,
        position: usize,
        alphabet: usize,
    },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("zero-probability node {0}")]
    ZeroProbabilityNode(usize),

    #[error("{0} is not prime")]
    NotPrime(usize),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),

    #[error("inconsistent structure parts: {0}")]
    InconsistentParts(String),

    #[error("output failed: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
