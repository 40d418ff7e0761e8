use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A problem with one data row of an input CSV file.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {message}")]
pub struct RowError {
    pub line: u64,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("interval endpoints must be finite with lo <= hi, got [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("malformed step function: {0}")]
    MalformedStepFunction(String),

    #[error("at least one interval is required")]
    NoIntervals,

    #[error("at least one group set is required")]
    NoGroupSets,

    #[error("alpha must lie in (0, 1], got {0}")]
    InvalidAlpha(f64),

    #[error("step must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("sampling range is empty: [{lo}, {hi}]")]
    InvalidRange { lo: f64, hi: f64 },

    #[error("fuzzy set has no recorded source count; agreement ratio needs an interval-built set")]
    UnknownSourceCount,

    #[error("inner set exceeds outer set by {excess} at x = {at}")]
    NestingViolation { excess: f64, at: f64 },

    #[error("{0} is undefined for a set with no membership mass")]
    EmptySet(&'static str),

    #[error("zSlice index {index} out of range 1..={count}")]
    ZSliceOutOfRange { index: usize, count: usize },

    #[error("invalid synthetic parameters: {0}")]
    InvalidSynthetic(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("invalid input: {0}")]
    Rows(RowErrors),

    #[error("no records")]
    NoRecords,

    #[error("missing or malformed header: expected `group,respondent,term,lo,hi`, found `{0}`")]
    BadHeader(String),

    #[error("term `{term}`: {source}")]
    Term {
        term: String,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Process exit code: 1 for validation failures, 2 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 2,
            Error::Term { source, .. } => source.exit_code(),
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

/// Every row-level failure found while reading a file.
#[derive(Debug, Clone, PartialEq)]
pub struct RowErrors(pub Vec<RowError>);

impl std::fmt::Display for RowErrors {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}
