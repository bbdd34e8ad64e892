use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("target column '{0}' not found in header")]
    MissingTarget(String),

    #[error("row {row}: expected {expected} fields, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("cell at row {row}, column '{column}' is not numeric: '{value}'")]
    BadNumericCell {
        row: usize,
        column: String,
        value: String,
    },

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("bin count must be at least 2, got {0}")]
    BadBinCount(usize),

    #[error("joint distribution needs {cells} cells, budget is {budget}")]
    CellBudgetExceeded { cells: usize, budget: usize },

    #[error("zero total variance; explained variance ratio is undefined")]
    ZeroVariance,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("cardinality k={k} out of range [1, {n}]")]
    CardinalityOutOfRange { k: usize, n: usize },

    #[error("bitstring length {found} does not match problem size {expected}")]
    BitstringLength { expected: usize, found: usize },

    #[error("problem size n={n} exceeds exhaustive-solver cap of {cap}")]
    ExhaustiveCapExceeded { n: usize, cap: usize },

    #[error("no feasible weight-{k} sample found; retry with a larger search budget")]
    NoFeasibleSample { k: usize },

    #[error("svr did not converge after {iterations} pair updates (kkt violation {violation:.3e})")]
    SvrNonConvergence { iterations: usize, violation: f64 },

    #[error("r2 score is undefined for a constant target")]
    ConstantTarget,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("synthetic profile infeasible after {attempts} attempts: {reason}")]
    SyntheticInfeasible { attempts: usize, reason: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    /// True for errors caused by user input (bad config, bad files) rather
    /// than internal failures. The CLI maps these to exit status 2.
    pub fn is_user_error(&self) -> bool {
        matches!(
            self,
            Error::Io { .. }
                | Error::Csv(_)
                | Error::MissingTarget(_)
                | Error::RaggedRow { .. }
                | Error::BadNumericCell { .. }
                | Error::InvalidDataset(_)
                | Error::BadBinCount(_)
                | Error::CardinalityOutOfRange { .. }
                | Error::Config(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
