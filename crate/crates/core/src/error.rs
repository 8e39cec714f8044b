use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("size error: {0}")]
    Size(String),

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitIndex { index: usize, n_qubits: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{}:{line}: {message}", path.display())]
    FileParse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("pauli string length mismatch at line {line}: expected {expected}, found {found}")]
    LengthMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("graph error: {0}")]
    Graph(String),

    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("unknown gene id {0}")]
    UnknownGene(u64),

    #[error("invalid gene layout: {0}")]
    Layout(String),

    #[error("objective returned non-finite value {value} at evaluation {evaluation}")]
    NonFinite { value: f64, evaluation: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("generation {generation}: {source}")]
    Generation {
        generation: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
