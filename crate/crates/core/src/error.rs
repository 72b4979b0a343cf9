use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("expected a positive integer, got {0}")]
    NonPositive(String),
    #[error("invalid range: lo = {lo} exceeds hi = {hi}")]
    InvalidRange { lo: u64, hi: u64 },
    #[error("indices ({n}, {m}) require n >= m and n = m (mod 2)")]
    ParityMismatch { n: u64, m: u64 },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("period search for modulus {modulus} exceeded the bound {bound}")]
    PeriodBoundExceeded { modulus: u64, bound: u128 },
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("oracle bound exceeded: max_index {0} > 40")]
    OracleBound(u64),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("inexact division while extracting Binet coordinates at n = {0}")]
    InexactBinet(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
