use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A row in a nodes/edges file could not be parsed.
    #[error("{path}:{line}: {msg}")]
    Malformed {
        path: PathBuf,
        line: u64,
        msg: String,
    },

    /// An edge references a node id that is absent from the nodes file.
    #[error("{path}:{line}: dangling endpoint: node id {id} absent from nodes file")]
    DanglingEndpoint { path: PathBuf, line: u64, id: u64 },

    /// Input vector length does not match what a model was fit on.
    #[error("arity mismatch: expected {expected} features, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    /// A model of the wrong kind was passed to an inference routine.
    #[error("wrong model kind: expected {expected}, got {got}")]
    WrongModelKind { expected: &'static str, got: String },

    /// The synthetic generator could not reach the requested edge correlation.
    #[error(
        "edge correlation target {target} unreachable: best achieved r = {best} after {rounds} smoothing rounds"
    )]
    CorrelationUnreachable {
        target: f64,
        best: f64,
        rounds: usize,
    },

    #[error("{0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
