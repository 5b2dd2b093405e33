use alloc::string::String;
use thiserror::Error;

/// Problems with the historical input data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DatasetError {
    #[error("missing data: {0}")]
    MissingState(String),
    #[error("share {value} for {state} in {year} is outside (0, 1)")]
    ShareOutOfRange { state: String, year: u16, value: f64 },
    #[error("house electors sum to {found}, expected {expected}")]
    ElectorSumMismatch { found: u32, expected: u32 },
    #[error("malformed row: {0}")]
    MalformedRow(String),
    #[error("degenerate vote: both parties need a positive count (dem {dem}, rep {rep})")]
    DegenerateVote { dem: u64, rep: u64 },
}

impl DatasetError {
    /// Variant name, used as the diagnostic tag on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            DatasetError::MissingState(_) => "MissingState",
            DatasetError::ShareOutOfRange { .. } => "ShareOutOfRange",
            DatasetError::ElectorSumMismatch { .. } => "ElectorSumMismatch",
            DatasetError::MalformedRow(_) => "MalformedRow",
            DatasetError::DegenerateVote { .. } => "DegenerateVote",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("sample covariance needs at least 2 observations, got {0}")]
    DegenerateSample(usize),
    #[error("expected {expected} nonzero eigenvalues, found {found}")]
    RankDeficient { expected: usize, found: usize },
    #[error("index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("model has no eigenpairs")]
    Empty,
}

impl ModelError {
    pub fn name(&self) -> &'static str {
        match self {
            ModelError::DegenerateSample(_) => "DegenerateSample",
            ModelError::RankDeficient { .. } => "RankDeficient",
            ModelError::IndexOutOfRange { .. } => "IndexOutOfRange",
            ModelError::DimensionMismatch { .. } => "DimensionMismatch",
            ModelError::Empty => "Empty",
        }
    }
}

/// Outcomes the tally refuses to resolve silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum TallyError {
    #[error("state {0} is tied at exactly one half")]
    TiedState(usize),
    #[error("national popular vote is exactly tied")]
    ExactPopularTie,
    #[error("share vector has {found} states, structure has {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("no records to emit")]
    EmptyInput,
}
