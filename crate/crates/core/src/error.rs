use thiserror::Error;

/// Errors raised by the library.
///
/// Axiom violations of fusion rings and failed table claims are reported as
/// data, not as errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cyclic factor orders must be >= 1, got {0:?}")]
    InvalidGroup(Vec<u64>),

    #[error("element {element:?} does not belong to group with factors {factors:?}")]
    ElementMismatch { element: Vec<u64>, factors: Vec<u64> },

    #[error("quadratic form is defined on {found:?}, expected {expected:?}")]
    GroupMismatch { expected: Vec<u64>, found: Vec<u64> },

    #[error("invalid quadratic form: {0}")]
    InvalidForm(String),

    #[error("quadratic form is degenerate")]
    DegenerateForm,

    #[error("Jacobi symbol needs an odd positive modulus, got {0}")]
    EvenModulus(i64),

    #[error("invalid rational phase {0:?}")]
    InvalidPhase(String),

    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("malformed fusion ring: {0}")]
    InvalidRing(String),

    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),

    #[error("Perron-Frobenius iteration did not converge after {0} steps")]
    NoConvergence(usize),

    #[error("specs do not share the requested fusion ring (spec #{0} differs)")]
    RingMismatch(usize),

    #[error("unknown report format {0:?}")]
    UnknownFormat(String),

    #[error("unknown table id {0:?}")]
    UnknownTable(String),

    #[error("serialization failed: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
