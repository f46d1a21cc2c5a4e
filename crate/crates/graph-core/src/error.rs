use thiserror::Error;

/// Errors raised while building, loading, or querying graphs.
#[derive(Debug, Error)]
pub enum GraphError {
    /// A vertex would exceed the declared degree bound.
    #[error("vertex {vertex} has degree {degree}, exceeding bound {bound}")]
    DegreeExceeded {
        vertex: u32,
        degree: usize,
        bound: usize,
    },

    /// An edge is malformed: endpoint out of range, self-loop, or duplicate.
    #[error("invalid edge ({u}, {v}): {reason}")]
    InvalidEdge { u: u32, v: u32, reason: String },

    /// A vertex id or neighbor slot outside the valid range.
    #[error("out of range: {what}")]
    OutOfRange { what: String },

    /// A generator spec that cannot be realized.
    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),

    /// Edge-list text that does not parse; `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
