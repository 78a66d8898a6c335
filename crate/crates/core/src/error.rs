use std::path::PathBuf;

use thiserror::Error;

/// Violations of the group axioms found while validating a multiplication table.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LawError {
    #[error("element 0 is not the identity")]
    NotIdentity,
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(u32),
    #[error("associativity fails at ({0}, {1}, {2})")]
    NotAssociative(u32, u32, u32),
}

/// Problems reading or writing a GTBL multiplication-table file.
#[derive(Error, Debug)]
pub enum GtblError {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("table must end with a trailing newline")]
    MissingTrailingNewline,
    #[error("non-square table: expected {expected} rows, found {found}")]
    RowCount { expected: usize, found: usize },
    #[error("non-square table: row {row} has {found} entries, expected {expected}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error("row {row} column {col}: invalid integer {token:?}")]
    BadInteger { row: usize, col: usize, token: String },
    #[error("row {row} column {col}: entry {value} out of range for order {order}")]
    EntryOutOfRange { row: usize, col: usize, value: u64, order: usize },
    #[error(transparent)]
    Law(#[from] LawError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Errors from parsing group specifications.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("{0}")]
    Constraint(String),
}

#[derive(Error, Debug)]
pub enum Error {
    #[error("element index {index} out of range for group of order {order}")]
    OutOfRange { index: usize, order: usize },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("group order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: u128, max: u64 },
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown suite {name:?}; valid suites: {valid}")]
    UnknownSuite { name: String, valid: String },
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Gtbl(#[from] GtblError),
    #[error(transparent)]
    Law(#[from] LawError),
    #[error("report serialization: {0}")]
    Serialize(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
