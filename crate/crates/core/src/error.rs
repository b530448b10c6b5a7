use thiserror::Error;

use crate::graph::{VertexSet, MAX_VERTICES};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} vertices exceeds the capacity of {MAX_VERTICES}")]
    Capacity(usize),

    #[error("{what} exceeds the limit of {limit}")]
    Limit { what: String, limit: usize },

    #[error("{0}")]
    Domain(String),

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("vertex set {0} is not a clique")]
    NotClique(VertexSet),

    #[error("clique {set} is not tight for degree cap {cap}")]
    NotTight { set: VertexSet, cap: usize },

    #[error("maximum degree {max} exceeds the cap {cap}")]
    DegreeCap { max: usize, cap: usize },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("checkpoint: {0}")]
    Checkpoint(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
