use thiserror::Error;

/// Errors shared by all engine operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("elements belong to different groups")]
    MixedGroups,

    #[error("not a subsequence: {0}")]
    NotASubsequence(String),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: String, limit: usize },

    #[error("operation requires a dihedral presentation")]
    UnsupportedPresentation,

    #[error("the given pair commutes, no witness exists")]
    NoWitness,

    #[error("element admits no factorization (not product-one)")]
    NoFactorization,

    #[error("atom does not match any classified form: {0}")]
    ClassificationFailure(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed table file: {0}")]
    Table(String),
}

pub type Result<T> = std::result::Result<T, Error>;
