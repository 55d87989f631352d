//! Crate-wide error type and result alias.

use thiserror::Error;

/// Errors reported by the simulation library and the CLI plumbing.
///
/// Domain errors (bad indices, mismatched dimensions, non-unitary inputs)
/// indicate caller mistakes. `InternalConsistency` signals a bug in the
/// library itself: a closed-form prediction violated one of its own
/// invariants. Parse and config errors carry enough position information to
/// point at the offending line.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("qubit index {index} out of range for {num_qubits}-qubit state")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("basis index {index} out of range for {num_qubits} qubits")]
    BasisIndexOutOfRange { index: usize, num_qubits: usize },

    #[error("matrix is not unitary within {tolerance:e}")]
    NotUnitary { tolerance: f64 },

    #[error("amplitudes are not unit-normalized: |sum - 1| = {deviation:e}")]
    NotNormalized { deviation: f64 },

    #[error("shots must be at least 1")]
    ZeroShots,

    #[error("{0}")]
    Domain(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
