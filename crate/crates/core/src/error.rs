use std::path::PathBuf;

use crate::exactalg::UniPoly;

/// Every failure the library can report.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("index {index} out of range [{lo}, {hi}]")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,

    #[error("element is not invertible; gcd with the modulus is {gcd}")]
    NotInvertible { gcd: UniPoly },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("trace {value} is not an integer for (p,q)=({p},{q}), g={g}")]
    IntegralityViolation { p: i64, q: i64, g: u32, value: String },

    #[error("condition (H) fails for M=({a},{b};{c},{d})")]
    ConditionHFails { a: i64, b: i64, c: i64, d: i64 },

    #[error("specialization mismatch at n={n} for {which}: residual {residual}")]
    SpecializationMismatch { n: i64, which: String, residual: String },

    #[error("precision exhausted after {bits} bits")]
    PrecisionExhausted { bits: usize },

    #[error("color {color} out of range 0..={max}")]
    ColorOutOfRange { color: i64, max: i64 },

    #[error("malformed data: {0}")]
    Malformed(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Errors caused by the caller's input rather than by a failed invariant.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidParams(_)
                | Error::IndexOutOfRange { .. }
                | Error::ColorOutOfRange { .. }
                | Error::Malformed(_)
                | Error::Io { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
