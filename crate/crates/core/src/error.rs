use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("order {requested} exceeds the supported maximum of {max}")]
    Capacity { requested: usize, max: usize },

    #[error("self-loop at vertex {0} is not allowed")]
    Loop(usize),

    #[error("vertex {vertex} is out of range for a digraph of order {order}")]
    OutOfRange { vertex: usize, order: usize },

    #[error("vertex set must be nonempty")]
    EmptySet,

    /// A precondition of a graph-theoretic operation does not hold.
    #[error("{0}")]
    Domain(String),

    /// A result that should be guaranteed by construction failed its runtime check.
    /// `instance` is the offending digraph in edge-list form so it can be replayed.
    #[error("internal invariant violated: {detail}\n{instance}")]
    Invariant { detail: String, instance: String },

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
