//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the working range or other precondition violation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Requested quantity has a pole at or too close to the argument.
    #[error("pole error: {0}")]
    Pole(String),

    /// Root bracket endpoints do not have opposite signs.
    #[error("invalid bracket: [{lo}, {hi}] does not straddle a sign change")]
    InvalidBracket { lo: f64, hi: f64 },

    /// Zero table does not cover the range a sum or check needs.
    #[error("incomplete zero table: {0}")]
    IncompleteTable(String),

    /// Sum parameter coincides with a zero ordinate.
    #[error("coincidence error: t = {t} is within {dist:e} of a zero ordinate")]
    Coincidence { t: f64, dist: f64 },

    /// Text ingestion failed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Ingested ordinates are not strictly increasing.
    #[error("monotonicity error at line {line}: ordinates must be strictly increasing")]
    Monotonicity { line: usize },

    /// Sign-change scan could not isolate the expected count.
    #[error("scan failure: {0}")]
    ScanFailure(String),

    /// Pressure is negative at the expansion seed point.
    #[error("no nonnegative-pressure interval: p(t0) < 0 at t0 = {t0}")]
    NoInterval { t0: f64 },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
