use std::io;

use thiserror::Error;

use crate::descriptors::DescriptorKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed coordinate record at line {line}: {reason}")]
    MalformedRecord { line: usize, reason: String },

    #[error("no alpha-carbon atoms found{}", chain.map(|c| format!(" for chain '{c}'")).unwrap_or_default())]
    NoCaAtoms { chain: Option<char> },

    #[error("invalid trace: {0}")]
    InvalidTrace(String),

    #[error("grid of size {size} is below the minimum of {min}")]
    GridTooSmall { size: usize, min: usize },

    #[error("wavelet transform needs an even dimension, got {size}")]
    OddDimension { size: usize },

    #[error("descriptor kind mismatch: expected {expected}, found {found}")]
    KindMismatch {
        expected: DescriptorKind,
        found: DescriptorKind,
    },

    #[error("database parameters do not match the query: {0}")]
    ParamsMismatch(String),

    #[error("database is empty")]
    EmptyDatabase,

    #[error("not a feature database (bad magic)")]
    BadMagic,

    #[error("unsupported feature database version {0}")]
    UnsupportedVersion(u32),

    #[error("corrupt feature database: {0}")]
    CorruptRecord(String),

    #[error("malformed classification line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },

    #[error("no SCOP label for '{0}'")]
    MissingLabel(String),

    #[error("query '{query}' has {found} results, need at least {needed}")]
    InsufficientResults {
        query: String,
        found: usize,
        needed: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
