use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid polynomial string {input:?}: {reason}")]
    ParsePoly { input: String, reason: &'static str },

    #[error("invalid rule vector {input:?}: {reason}")]
    ParseRuleVector { input: String, reason: &'static str },

    #[error("invalid state {input:?}: {reason}")]
    ParseState { input: String, reason: &'static str },

    #[error("polynomial degree {degree} exceeds the supported maximum {max}")]
    Capacity { degree: usize, max: usize },

    #[error("modulus must be nonzero")]
    ZeroModulus,

    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,

    #[error("{what} = {value} is out of range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("length mismatch: rule vector has {rules} cells, state has {state}")]
    LengthMismatch { rules: usize, state: usize },

    #[error("seed state must be nonzero")]
    ZeroSeed,

    #[error("seed state is not on a cycle (transition matrix is singular)")]
    SeedNotOnCycle,

    #[error("tap cell {tap} out of range for {n} cells")]
    TapOutOfRange { tap: usize, n: usize },

    #[error("polynomial {0} is not primitive")]
    NotPrimitive(String),

    #[error("malformed table row at line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
