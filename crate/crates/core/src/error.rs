use thiserror::Error;

/// Errors produced by constellation, mapping, metric and simulation routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported constellation: {0}")]
    Constellation(String),

    #[error("label width mismatch: expected {expected} bits, got {got}")]
    WidthMismatch { expected: u32, got: u32 },

    #[error("invalid mapping: {0}")]
    InvalidMapping(String),

    #[error("size guard exceeded: {what} needs {bits} label bits, limit is {limit}")]
    Guard {
        what: &'static str,
        bits: u32,
        limit: u32,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("length mismatch: expected {expected}, got {got}")]
    Length { expected: usize, got: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
