use std::time::Duration;

use thiserror::Error;

use crate::graph::EdgeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),

    #[error("unknown ground element {0}")]
    UnknownElement(u32),

    #[error("edge {0} is negative; only positive edges may be contracted")]
    NegativeContraction(EdgeId),

    #[error("contraction creates negative self-loop(s) on edge(s) {0:?}")]
    NegativeSelfLoop(Vec<EdgeId>),

    #[error("self-loop on vertex {0} is not allowed")]
    SelfLoop(usize),

    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("size limit exceeded: {what} ({actual} > {limit})")]
    SizeLimit {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("deadline of {0:?} exceeded")]
    Deadline(Duration),

    #[error("invalid clutter: {0}")]
    InvalidClutter(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid multicut: {0}")]
    InvalidMulticut(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("index mismatch: {0}")]
    IndexMismatch(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// A structural lemma was contradicted by computation. `bundle` holds a
    /// serialized counterexample.
    #[error("falsification event ({claim}): {bundle}")]
    Falsification { claim: String, bundle: String },
}

impl Error {
    /// Cap or deadline exhaustion: the question was not answered.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::SizeLimit { .. } | Error::Deadline(_) | Error::Overflow(_)
        )
    }

    pub(crate) fn size_limit(what: &'static str, actual: usize, limit: usize) -> Self {
        Error::SizeLimit {
            what,
            actual,
            limit,
        }
    }
}
