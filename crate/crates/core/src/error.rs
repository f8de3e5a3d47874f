use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("search space of 2^{bits} exceeds the exhaustion guard of 2^{limit}")]
    ExhaustionGuard { bits: usize, limit: usize },

    #[error("generator matrix is not delay-free (G_0 does not have full row rank)")]
    NotDelayFree,

    #[error(
        "code is catastrophic; the column distances need not converge to a finite codeword weight"
    )]
    Catastrophic,

    #[error("declared degree {declared} does not match measured degree {measured}")]
    DegreeMismatch { declared: usize, measured: usize },

    #[error("generator matrix does not have full row rank over GF(2)[z]")]
    RankDeficient,

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
