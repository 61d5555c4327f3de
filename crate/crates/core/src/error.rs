use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("subgroup closure exceeded the bound of {bound} elements")]
    SubgroupTooLarge { bound: usize },

    #[error("expected a homogeneous symmetric function of degree {expected}, found a term of degree {found}")]
    NotHomogeneous { expected: usize, found: usize },

    #[error("plethystic exponential needs a zero constant term")]
    NonzeroConstantTerm,

    #[error("inexact division, remainder {remainder}")]
    InexactDivision { remainder: String },

    #[error("{what} exceeds the configured bound of {bound}")]
    BoundExceeded { what: &'static str, bound: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
