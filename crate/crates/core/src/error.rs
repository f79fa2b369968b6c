use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid digit string {text:?} in base {base}: {reason}")]
    InvalidDigits {
        text: String,
        base: u32,
        reason: String,
    },

    #[error("table of {kind} values up to n = {n} needs about {needed} bytes, budget is {budget}")]
    ResourceLimit {
        kind: &'static str,
        n: u64,
        needed: u64,
        budget: u64,
    },

    #[error("no n <= {limit} found")]
    NotFound { limit: u64 },

    #[error("membership of n = {n} undecidable at {precision} bits")]
    Undecidable { n: u64, precision: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("recurrence check failed at n = {n}: {reason}")]
    Recurrence { n: u64, reason: String },

    #[error("cache file {path}: {reason}")]
    CacheFormat { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
