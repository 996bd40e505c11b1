use thiserror::Error;

use crate::tableaux::TableauError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cell {cell} lies outside shape ({shape})")]
    CellOutsideShape { cell: String, shape: String },

    #[error("cell {cell} is not a corner of shape ({shape})")]
    NotACorner { cell: String, shape: String },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(#[from] TableauError),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("permutation {0} is not an involution")]
    NotAnInvolution(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("invalid cell assignment: {0}")]
    InvalidAssignment(String),

    #[error("not an antichain: {smaller} is contained in {larger}")]
    NotAnAntichain { smaller: String, larger: String },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    /// Refused enumeration; `estimate` is the number of items that would
    /// have been visited.
    #[error("{what}: size {requested} exceeds cap {cap} (estimated cost: {estimate} items)")]
    CapExceeded {
        what: &'static str,
        requested: usize,
        cap: usize,
        estimate: String,
    },

    #[error("family {family} has no members of size {n}")]
    EmptyFamily { family: String, n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("family {0} has no sampler")]
    NoSampler(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
