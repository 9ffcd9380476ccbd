use thiserror::Error;

/// Input and precondition errors, distinguished from property failures
/// (which are carried by [`crate::report::Report`] instead).
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("not a loop: {0}")]
    NotALoop(String),

    #[error("element {0} out of range for order {1}")]
    OutOfRange(usize, usize),

    #[error("point count mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("closure cap {0} exceeded")]
    CapExceeded(usize),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
