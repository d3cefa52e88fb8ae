use thiserror::Error;

/// Errors produced by graph loading, parameter validation and the exact oracle.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: duplicate directed edge {u} -> {v}")]
    DuplicateEdge { line: usize, u: u64, v: u64 },

    #[error("line {line}: activation weight {p} outside [0, 1]")]
    WeightOutOfRange { line: usize, p: f64 },

    #[error("edge list contains no edges or nodes")]
    EmptyGraph,

    #[error("graph is not LT-compatible: incoming weights of node {node} sum to {sum}")]
    LtIncompatible { node: u32, sum: f64 },

    #[error("invalid parameter {name}: {msg}")]
    InvalidParameter { name: &'static str, msg: String },

    #[error("exact oracle limit exceeded: {limit} (allowed {allowed}, instance has {actual})")]
    LimitExceeded {
        limit: &'static str,
        allowed: u64,
        actual: u64,
    },

    #[error("operation requires a non-empty RR-set collection")]
    EmptyCollection,

    #[error("{algo} requires a uniform cost model")]
    NonUniformCosts { algo: &'static str },

    #[error("wall-clock limit reached before the solver finished")]
    Timeout,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("corrupt graph cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(name: &'static str, msg: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            msg: msg.into(),
        }
    }
}
