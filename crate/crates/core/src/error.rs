use thiserror::Error;

pub type Result<T> = std::result::Result<T, QrtError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QrtError {
    #[error("qubit {qubit} out of range for register width {width}")]
    QubitOutOfRange { qubit: usize, width: usize },

    #[error("gate {kind} has overlapping operands")]
    OperandOverlap { kind: String },

    #[error("gate {kind} expects {controls} control(s) and {targets} target(s), got {got_controls} and {got_targets}")]
    BadArity {
        kind: String,
        controls: usize,
        targets: usize,
        got_controls: usize,
        got_targets: usize,
    },

    #[error("non-finite angle {0}")]
    NonFiniteAngle(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("register width {width} exceeds the simulation cap of {cap} qubits")]
    WidthAboveCap { width: usize, cap: usize },

    #[error("{what} requires n >= {min}, got n = {n}")]
    InvalidSize {
        what: &'static str,
        n: usize,
        min: usize,
    },

    #[error("state is not normalized: |norm - 1| = {0:e}")]
    NotNormalized(f64),

    #[error("matrix is not unitary: max |U^dag U - I| = {0:e}")]
    NotUnitary(f64),

    #[error("invalid relabeling: {0}")]
    InvalidRelabeling(String),

    #[error("transform size {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("ambiguous embedding for the {block} block: {solutions} oracle columns fit one circuit column")]
    AmbiguousEmbedding {
        block: &'static str,
        solutions: usize,
    },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown transform '{0}'")]
    UnknownTransform(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
