use thiserror::Error;

/// Errors raised while constructing or loading domain records.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("material catalog: {0}")]
    MaterialCatalog(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Parse(#[from] RecordParseError),
}

/// A malformed line in a record file, with its 1-based line number.
#[derive(Debug, Error)]
#[error("parse error at line {line}: {reason}")]
pub struct RecordParseError {
    pub line: usize,
    pub reason: String,
}
