use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree {d} out of range for {n} leaves")]
    DegreeOutOfRange { n: usize, d: usize },
    #[error("index {i} out of range 1..={n}")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("not solvable; residual has {residual_terms} terms")]
    NotSolvable { residual_terms: usize },
    #[error("missing lower arity {0}")]
    MissingLowerArity(usize),
    #[error("endpoints differ in arity 2")]
    EndpointMismatch,
    #[error("edge {0} is a loop")]
    IsLoop(usize),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("diagonal covers arity {have}, need {need}")]
    DiagonalArityTooSmall { have: usize, need: usize },
    #[error("orientation regime does not match pairing parity")]
    ParityMismatch,
    #[error("pairing matrix is singular")]
    NonInvertiblePairing,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
