use thiserror::Error;

use crate::group::Element;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("element {element} is not valid for {group}")]
    InvalidElement { element: Element, group: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("group of order {order} exceeds the size cap of {cap} for {operation}")]
    SizeCap {
        operation: &'static str,
        order: usize,
        cap: usize,
    },

    #[error("multiplication table is not closed: entry {entry} has value {value} >= {order}")]
    NotClosed {
        entry: usize,
        value: u64,
        order: usize,
    },

    #[error("table has {found} entries, expected {expected}")]
    TableShape { found: usize, expected: usize },

    #[error("{0} is not a two-sided multiplicative identity")]
    InvalidIdentity(Element),

    #[error("nearring has no multiplicative identity")]
    NoIdentity,

    #[error("nearring is not local")]
    NotLocal,

    #[error("element set is not a subgroup of the additive group")]
    NotASubgroup,

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("census timed out after {completed} of {total} root branches; checkpoint written to {checkpoint}")]
    Timeout {
        completed: usize,
        total: usize,
        checkpoint: String,
    },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
