use thiserror::Error;

/// Errors raised while building or comparing graded structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not a Latin square: {0}")]
    NotLatin(String),

    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: String, b: String, c: String },

    #[error("no two-sided identity element")]
    NoIdentity,

    #[error("{what} of size {size} exceeds the cap of {cap}")]
    SizeCap {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("length mismatch: expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("unknown element {0:?}")]
    UnknownElement(String),

    #[error("support mismatch: {0}")]
    SupportMismatch(String),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("invalid witness data: {0}")]
    InvalidWitness(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("search budget exceeded: {needed} candidates, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
}

pub type Result<T> = std::result::Result<T, Error>;
