use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain an operation accepts.
    #[error("invalid input: {0}")]
    InputDomain(String),

    /// A 1-based position lies outside the valid range.
    #[error("position {pos} out of range [{min}, {max}]")]
    OutOfBounds { pos: usize, min: usize, max: usize },

    /// The input is not a terminator-ended collection (or BWT thereof).
    #[error("malformed input: {0}")]
    Malformed(String),

    /// The operation does not support this kind of input.
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// An LCP value does not fit in the selected output width.
    #[error("LCP value {max} does not fit in {width} byte(s); use --lcp-bytes {required}")]
    LcpWidthOverflow {
        max: u64,
        width: usize,
        required: usize,
    },

    /// An output cell was written twice. Only happens on inputs that are not
    /// valid collection BWTs.
    #[error("cell {pos} of the {what} was written twice (input is not a valid collection BWT)")]
    WriteConflict { what: &'static str, pos: usize },

    /// An artifact disagrees with the recomputed reference.
    #[error("{artifact} mismatch at position {pos}: expected {expected}, found {found}")]
    Mismatch {
        artifact: String,
        pos: usize,
        expected: String,
        found: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error(transparent)]
    Stream(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
