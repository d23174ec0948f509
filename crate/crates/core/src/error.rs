use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring exponent k={0} outside supported range 1..=16")]
    InvalidRing(u32),

    #[error("variable count n={n} outside supported range 0..={max}")]
    TooManyVars { n: u32, max: u32 },

    #[error("mask {mask:#x} has popcount {popcount}, above the degree bound {d}")]
    MaskAboveDegree { mask: u32, popcount: u32, d: u32 },

    #[error("mask or point {value:#x} does not fit in {n} variables")]
    OutOfRange { value: u64, n: u32 },

    #[error("interpolated polynomial has degree {actual}, above the bound {bound}")]
    DegreeExceeded { actual: u32, bound: u32 },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("ring mismatch: k={left} vs k={right}")]
    RingMismatch { left: u32, right: u32 },

    #[error("vector length {0} is not a power of two")]
    NotPowerOfTwoLength(usize),

    #[error("{0} is not a power of two")]
    NotPowerOfTwo(u64),

    #[error("underflow: {m} > {n}")]
    Underflow { n: u64, m: u64 },

    #[error("table of 2^{n} entries exceeds the memory budget of {budget} entries")]
    Capacity { n: u32, budget: u64 },

    #[error("matrix of {rows}x{cols} entries exceeds the budget of {budget} entries")]
    MatrixCapacity { rows: usize, cols: usize, budget: u64 },

    #[error("search space of size {size} exceeds the budget {budget}")]
    BudgetExceeded { size: BigUint, budget: u128 },

    #[error("invalid agreement {matches}/{total}: {reason}")]
    InvalidAgreement {
        matches: BigUint,
        total: BigUint,
        reason: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
