use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// An exhaustive or dense routine was asked to run beyond its size guard.
    #[error("capability guard exceeded: {0}")]
    Capability(String),

    #[error("vertex {0} has already been deleted")]
    DeadVertex(usize),

    /// Power iteration hit its iteration cap. Carries the best estimate so
    /// callers can still report it.
    #[error(
        "power iteration did not converge after {iterations} iterations \
         (estimate {estimate}, residual {residual:e})"
    )]
    NonConvergence {
        estimate: f64,
        residual: f64,
        iterations: usize,
    },
}
