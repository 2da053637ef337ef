use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid simple type ({series}, {rank})")]
    InvalidType { series: char, rank: usize },
    #[error("cannot parse type label `{0}`")]
    BadTypeLabel(String),
    #[error("unknown real form label `{0}`")]
    UnknownLabel(String),
    #[error("unknown label token `{0}`")]
    LabelToken(String),
    #[error("root subset is not closed: {0}")]
    NotClosed(String),
    #[error("root subset is not symmetric")]
    NotSymmetric,
    #[error("elements belong to different algebras (dimension {left} vs {right})")]
    Mismatch { left: usize, right: usize },
    #[error("no census entry for k_type {k_type} with character {character}")]
    NoCensusMatch { k_type: String, character: i64 },
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("A-space is zero: the embedding and involution are inconsistent")]
    EmptyASpace,
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("embedding data: {0}")]
    Embedding(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// A budget-limited computation that stopped early, carrying what it found.
#[derive(Debug)]
pub struct Partial<T> {
    pub found: T,
    pub reason: String,
}

impl<T> std::fmt::Display for Partial<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "budget exceeded: {}", self.reason)
    }
}

impl<T: std::fmt::Debug> std::error::Error for Partial<T> {}
