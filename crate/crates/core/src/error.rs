use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("generator name clash: {0}")]
    NameClash(String),
    #[error("element is not in the cyclic subgroup generated by the base")]
    NotInSubgroup,
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("symbol {0} is not declared by the presentation")]
    UndeclaredSymbol(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    /// A quantity the theory guarantees came out wrong; always a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("canonical marking failed verification: {0}")]
    VerificationFailed(String),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}
