use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} index {index} out of range (valid: {valid})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        valid: String,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("system size n={n} exceeds the configured cap of {cap} qubits")]
    SizeCap { n: usize, cap: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid phase-shift spec: {0}")]
    InvalidMSpec(String),
    #[error("matrix is not a valid {kind}: {detail}")]
    Structure { kind: &'static str, detail: String },
    #[error("readout requires a purged (diagonal) state; largest off-diagonal magnitude {max_offdiag:e}")]
    NotDiagonal { max_offdiag: f64 },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
