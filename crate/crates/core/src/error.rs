use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{what} {index} out of range (limit {limit})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("{n} qubits exceeds the dense-simulation cap of {cap} (set GAUSS_QEC_MAX_QUBITS to raise it)")]
    CapacityExceeded { n: usize, cap: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("term {term} anticommutes with stabilizer {generator}")]
    GaugeViolation { term: String, generator: usize },

    #[error("operator is not Hermitian: {0}")]
    NonHermitian(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("config error: {0}")]
    Config(String),
}
