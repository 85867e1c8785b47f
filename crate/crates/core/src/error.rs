use std::fmt;

/// Errors surfaced by the summarization pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// No sentence survived preprocessing (empty or whitespace-only input).
    EmptyDocument,
    /// Requested cluster count is outside `[1, n]` for `n` points, or an
    /// elbow search range is malformed.
    InvalidK { requested: usize, n_points: usize },
    /// ROUGE-W weight exponent must be strictly greater than 1.
    InvalidAlpha(f64),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyDocument => write!(f, "document contains no sentences"),
            Error::InvalidK { requested, n_points } => {
                write!(f, "invalid cluster count {requested} for {n_points} points")
            }
            Error::InvalidAlpha(a) => {
                write!(f, "ROUGE-W alpha must be > 1, got {a}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
