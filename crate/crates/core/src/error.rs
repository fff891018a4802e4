use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("invalid field parameters: {0}")]
    FieldParams(String),

    #[error("field of order {order} exceeds the supported maximum of 2^20")]
    FieldTooLarge { order: u64 },

    #[error("modulus is reducible over GF({p}): divisible by {factor:?} (low-to-high)")]
    ReducibleModulus { p: u32, factor: Vec<u32> },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("element {elem:?} has multiplicative order {order}, not {expected}")]
    NotPrimitive {
        elem: u32,
        order: u64,
        expected: u64,
    },

    #[error("element value {0} is outside the field")]
    ElementOutOfRange(u32),

    #[error("elements are linearly dependent over the subfield: element {index} lies in the span of the previous ones (rank {rank})")]
    Dependent { index: usize, rank: usize },

    #[error("expected {expected} elements, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("zero is not allowed here: {0}")]
    ZeroElement(&'static str),

    #[error("subspaces belong to different fields")]
    MixedFields,

    #[error("matrix is not a canonical reduced row-echelon basis: {0}")]
    NonCanonical(String),

    #[error("dimension {dim} out of range 0..={max}")]
    DimensionOutOfRange { dim: usize, max: usize },

    #[error("enumeration of {count} items exceeds the budget of {budget}")]
    OverBudget { count: u128, budget: u128 },

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("message polynomial has degree {degree}, must be below k = {k}")]
    MessageDegree { degree: usize, k: usize },

    #[error("position {pos} out of range for length {n} (0-based)")]
    PositionOutOfRange { pos: usize, n: usize },

    #[error("dual word {index} is not a codeword of the dual code")]
    NotDual { index: usize },

    #[error("values at the target span a space of rank {rank}, need {needed}")]
    RankDeficient { rank: usize, needed: usize },

    #[error("repair target {scheme} does not match erased position(s) {holes:?}")]
    HoleMismatch { scheme: usize, holes: Vec<usize> },

    #[error("sub-symbol read from unavailable node {0}")]
    NodeUnavailable(usize),

    #[error("r = {r} is not a power of q = {q}")]
    RedundancyNotPowerOfQ { r: usize, q: u32 },

    #[error("subspace W has dimension {got}, expected {expected}")]
    WrongSubspaceDim { expected: usize, got: usize },

    #[error("repair transcript disagrees with the analytic cost report: {0}")]
    TranscriptMismatch(String),

    #[error("parse error at line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },

    #[error("unsupported format_version {0}")]
    FormatVersion(u32),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        }
    }
}
