use thiserror::Error;

/// Errors produced by state construction, measurement and analysis routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a physical state: {0}")]
    NotPhysical(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("prime-power MUBs not implemented (d = {d} is not prime)")]
    NotPrime { d: usize },

    #[error("no bound available for q = {q}; supported range is q = 1 or q in (1, 2]")]
    NoBound { q: f64 },

    #[error("criterion never violated for d = {d}, m = {m}, q = {q}")]
    NeverViolated { d: usize, m: usize, q: f64 },

    #[error("relative entropy undefined: reference vanishes at index {index} where p = {p} > 0")]
    SupportViolation { index: usize, p: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
