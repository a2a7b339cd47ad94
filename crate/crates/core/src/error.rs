use thiserror::Error;

/// Errors raised by construction, simulation and analysis routines.
///
/// Condition violations found by [`crate::pda::Pda::validate`] are not errors;
/// they are reported as data in a [`crate::pda::ValidationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ragged grid: row {row} has {found} cells, expected {expected}")]
    RaggedGrid {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("grid must have at least one row and one column")]
    Empty,
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("array is not regular: integer occurrence counts differ")]
    NotRegular,
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("unsupported memory ratio {0}")]
    UnsupportedRatio(String),
    #[error("K*M/N = {0} is not an integer")]
    NonCornerPoint(String),
    #[error("K = {k} is not of the form q(m+1) for q = {q}")]
    NonConformingK { k: usize, q: u64 },
    #[error("array is not a valid placement delivery array: {0}")]
    InvalidPda(String),
    #[error("file count N = {n} is smaller than user count K = {k}")]
    NTooSmall { n: usize, k: usize },
    #[error("bad demand: {0}")]
    BadDemand(String),
    #[error("user {user} lacks side information W({file},{packet}) for slot {slot}")]
    MissingSideInfo {
        user: usize,
        slot: usize,
        file: usize,
        packet: usize,
    },
    #[error("exhaustive verification needs {needed} demands, cap is {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("search budget of {budget} nodes exhausted")]
    SearchBudgetExceeded { budget: u64 },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
