use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian within tolerance")]
    NonHermitian,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("error-per-gate noise is not a coefficient scaling; use the error-per-gate channel")]
    ErrorPerGateNotScaling,

    #[error("root not bracketed: criterion is {at_low} at {low} and {at_high} at {high}")]
    NotBracketed {
        low: f64,
        high: f64,
        at_low: bool,
        at_high: bool,
    },

    #[error("linear program failed numerically after exact fallback: {0}")]
    LpNumerical(String),

    #[error("center lies on a cube face; separable radius is zero")]
    OnCubeFace,

    #[error("gate {gate} is not cube-separable on input vertices {u:?} x {v:?}")]
    GateNotCubeSeparable { gate: usize, u: [i8; 3], v: [i8; 3] },

    #[error("preparation on qubit {qubit} is outside the Bloch sphere; dense simulation undefined")]
    NonQuantumPreparation { qubit: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
