use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Broad classes of failure, used by the command line to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Domain,
    Capacity,
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {point} is degenerate for path reduction: {reason}")]
    Degenerate { point: String, reason: &'static str },

    #[error("point {point} is not supported: {reason}")]
    UnsupportedPoint { point: String, reason: &'static str },

    #[error("clone multiset {spec} is not compatible with x = {point}")]
    Incompatible { point: String, spec: String },

    #[error("quadratic field mismatch: discriminants {lhs} and {rhs}")]
    DiscriminantMismatch { lhs: String, rhs: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid formula: {0}")]
    InvalidFormula(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("duplicate interpolation point {0}")]
    DuplicatePoint(String),

    #[error("capacity exceeded: {what} is {actual}, limit {limit}")]
    Capacity {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("oracle failed on clone {index}: {source}")]
    Oracle {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("oracle protocol violation: {message} (line: {line:?})")]
    Protocol { message: String, line: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Capacity { .. } => ErrorKind::Capacity,
            Error::Protocol { .. } | Error::Io(_) => ErrorKind::Io,
            Error::Oracle { source, .. } => source.kind(),
            _ => ErrorKind::Domain,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
