use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("amplitude vector length {0} is not a power of two >= 2")]
    NotPowerOfTwo(usize),

    #[error("amplitude vector is identically zero")]
    ZeroVector,

    #[error("amplitude vector has norm {norm} (deviation {deviation:e} exceeds tolerance); pass the normalize flag to rescale")]
    NotNormalized { norm: f64, deviation: f64 },

    #[error("amplitude {index} is not finite")]
    NonFinite { index: usize },

    #[error("declared qubit count {declared} does not match {len} amplitudes")]
    LengthMismatch { declared: usize, len: usize },

    #[error("degenerate gate: both amplitudes of a two-level unitary are zero")]
    DegenerateGate,

    #[error("gate parameter is not finite")]
    NonFiniteParameter,

    #[error("qubit {qubit} is outside the register 1..={n}")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("qubit {0} appears more than once among a gate's control and target qubits")]
    DuplicateQubit(usize),

    #[error("{n} qubits exceeds the configured limit of {max}")]
    WidthLimit { n: usize, max: usize },

    #[error("size mismatch: {left} vs {right} qubits")]
    SizeMismatch { left: usize, right: usize },

    #[error("matrix is not unitary (deviation {0:e})")]
    NonUnitary(f64),

    #[error("GHZ state needs at least 2 qubits, got {0}")]
    GhzTooSmall(usize),

    #[error("marked bitstring has length {len}, expected {n}")]
    MarkedLength { len: usize, n: usize },

    #[error("invalid bitstring {0:?}")]
    InvalidBits(String),

    #[error("omega is undefined when cos(theta) = 0")]
    OmegaUndefined,

    #[error("layer {layer} is outside 1..={max}")]
    LayerOutOfRange { layer: usize, max: usize },

    #[error("prefix length {got} does not match layer (expected {expected})")]
    PrefixLength { got: usize, expected: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("gate {index} has {controls} controls; export requires a lowered circuit")]
    NotLowered { index: usize, controls: usize },

    #[error("invalid state file: {0}")]
    Json(#[from] serde_json::Error),
}
