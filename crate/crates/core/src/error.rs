use thiserror::Error;

use crate::interval::Decision;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a = 0: x^3 - t x^2 is not an irreducible cubic")]
    ZeroConstant,
    #[error("t = 0 is outside the supported family x^3 - t x^2 - a")]
    ZeroQuadratic,
    #[error("q = 0 in the depressed cubic x^3 + p x + q")]
    ZeroDepressedConstant,
    #[error("continued fraction requires |t|^3 > 12a (t = {t}, a = {a})")]
    CfDomain { t: i64, a: i64 },
    #[error("bound machinery requires 12 a* <= |t1 t2| (t = {t}, a = {a})")]
    BoundsDomain { t: i64, a: i64 },
    #[error("block coefficients d, b_k21, b_k22 are undefined for k = 0")]
    BlockIndexZero,
    #[error("index {0} is not a multiple of 4")]
    NotBlockIndex(usize),
    #[error("gamma window r = {r} is outside -1..={k}")]
    GammaRange { k: usize, r: i64 },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("sieve limit {limit} is below the minimum {min}")]
    SieveTooSmall { limit: u64, min: u64 },
    #[error("series length {terms} is below the minimum {min}")]
    SeriesTooShort { terms: u64, min: u64 },
    #[error("precision exhausted at {bits} bits while {what}")]
    PrecisionExhausted { bits: u32, what: String },
    #[error("condition c7 > e^(1/4) is {0}")]
    C7NotOk(Decision),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
