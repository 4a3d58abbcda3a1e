use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two objects that must share a ground set and uniformity do not.
    #[error("context mismatch: (n={left_n}, k={left_k}) vs (n={right_n}, k={right_k})")]
    ContextMismatch {
        left_n: u32,
        left_k: u32,
        right_n: u32,
        right_k: u32,
    },

    #[error("{what} out of range: {detail}")]
    Range { what: &'static str, detail: String },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("not a cover: set {uncovered} meets no cover element")]
    NotACover { uncovered: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Range {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
