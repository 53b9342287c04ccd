use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for length {bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("index {0} appears more than once")]
    DuplicateIndex(usize),

    #[error("matrix is not full row rank (rank {rank}, {rows} rows)")]
    NotFullRank { rank: usize, rows: usize },

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{what} of size {size} exceeds the limit of {limit}")]
    TooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("C2 is not a subcode of C1: generator row {row} of C2 is not in C1")]
    NotSubcode { row: String },

    #[error("factor for site {site} is not unitary")]
    NotUnitary { site: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An internal cross-check between two independent routes disagreed.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

impl Error {
    /// True for failures caused by the input rather than by a failed
    /// verification.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::CrossCheck(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
