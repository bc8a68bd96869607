use thiserror::Error;

/// Errors produced by circuit construction, simulation and readout.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register width {width} outside supported range 1..={max}")]
    WidthOutOfRange { width: usize, max: usize },

    #[error("basis index {index} out of range for {num_qubits} qubits")]
    BasisOutOfRange { index: usize, num_qubits: usize },

    #[error("qubit {qubit} out of range for {num_qubits} qubits")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("qubit {0} used more than once in a single gate")]
    DuplicateQubit(usize),

    #[error("width mismatch: circuit has {circuit} qubits, state has {state}")]
    WidthMismatch { circuit: usize, state: usize },

    #[error(
        "no outcome reaches probability {threshold} (best index {best} at {best_probability})"
    )]
    NotDeterministic {
        threshold: f64,
        best: usize,
        best_probability: f64,
    },

    #[error("value {value} out of range (must be below {bound})")]
    ValueOutOfRange { value: u64, bound: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("malformed array at index {index}: {reason}")]
    MalformedArray { index: usize, reason: String },

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A circuit text parse failure, pointing at the offending line (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

impl ParseError {
    pub fn new(line: usize, reason: impl Into<String>) -> Self {
        Self {
            line,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
