use thiserror::Error;

/// Everything that can go wrong across the library.
///
/// Values that may be large (rationals, moduli) are carried as strings so the
/// enum stays cheap to clone and compare in tests.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not {p}-integral (negative {p}-adic valuation)")]
    NotPIntegral { p: u64, value: String },

    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: String, m: String },

    #[error("residue context mismatch: {left} vs {right}")]
    ContextMismatch { left: String, right: String },

    #[error("{p} is not an odd prime")]
    NotAnOddPrime { p: u64 },

    #[error("precision exponent must be at least 1")]
    ZeroPrecision,

    #[error("Pochhammer factor {a} + {offset} is divisible by p = {p}")]
    PochhammerHitsPZp { p: u64, a: String, offset: u64 },

    #[error("Gamma ratio at {a} is not 1 mod {p}; no linear term to extract")]
    PrecisionFailure { p: u64, a: String },

    #[error("prime {p} lies in the wrong class: need p = {expected} mod 4")]
    WrongResidueClass { p: u64, expected: u64 },

    #[error("prime {p} is below the minimum {min} for this check")]
    PrimeTooSmall { p: u64, min: u64 },

    #[error("truncation order n = {n} must be odd here")]
    EvenParameter { n: u64 },

    #[error("denominator Pochhammer factor vanishes at term {k}")]
    DegenerateDenominator { k: u64 },

    #[error("fast and exact summation paths disagree at p = {p}, k = {k}")]
    PathMismatch { p: u64, k: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
