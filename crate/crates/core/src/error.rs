use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero vector has no ±-class")]
    ZeroVector,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("vectors do not form a basis")]
    NotABasis,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is not supported here: {1}")]
    UnsupportedPrime(u64, &'static str),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("simplex {0:?} is not in the complex")]
    NotASimplex(Vec<u32>),
    #[error("malformed complex: {0}")]
    MalformedComplex(String),
    #[error("{what} too large: projected {projected} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        projected: u128,
        cap: u128,
    },
    #[error("not a closed orientable surface: {0}")]
    NotAClosedSurface(String),
    #[error("matrix is not in SL_n(F_p): determinant {0}")]
    NotSpecialLinear(u32),
    #[error("matrix determinant {0} is not ±1")]
    NotUnimodular(u32),
    #[error("modular ranks disagree across primes: {0:?}")]
    RankDisagreement(Vec<usize>),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("assertion failed: {0}")]
    AssertionFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
