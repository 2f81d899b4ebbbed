use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("wrong degree: expected homogeneous of degree {expected}, got {got}")]
    WrongDegree { expected: u32, got: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix needs at least two columns, has {0}")]
    TooFewColumns(usize),
    #[error("positive-dimensional solution set: {0}")]
    PositiveDimensional(String),
    #[error("point with all coordinates zero")]
    ZeroPoint,
    #[error("enumeration of {needed} subsets exceeds the cap {cap}")]
    EnumerationCap { cap: u128, needed: u128 },
    #[error("{got} points exceed the bound: bound is {bound}")]
    BoundViolated { bound: u64, got: usize },
    #[error("expected {expected} points, got {got}")]
    Cardinality { expected: u64, got: usize },
    #[error("all retries failed: {0}")]
    RetriesExhausted(String),
    #[error("Betti table is malformed: {0}")]
    MalformedBetti(String),
    #[error("class is not representable: (K + C).C = {0} is odd")]
    Parity(i64),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = core::result::Result<T, Error>;
