//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A configuration value violates its documented invariant.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// An operation precondition was violated (bad lengths, ranges, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// No range bin stands out against the others; there is no clear subject.
    #[error("ambiguous subject detection: score {score:.3} below threshold {threshold:.3}")]
    AmbiguousDetection { score: f64, threshold: f64 },

    /// The signal is shorter than the processing window requires.
    #[error("signal too short: need at least {needed} samples, got {got}")]
    SignalTooShort { needed: usize, got: usize },

    /// The (window, hop) pair does not satisfy constant overlap-add.
    #[error("window/hop violates constant overlap-add: {0}")]
    NonColaWindow(String),

    /// A frequency band is empty, inverted, or beyond Nyquist.
    #[error("invalid band: {0}")]
    InvalidBand(String),

    /// No spectral peak rises above the noise floor in the analyzed band.
    #[error("no spectral peak above the noise floor")]
    EmptyBand,

    /// Every rate candidate was excluded (guard bands, out of range).
    #[error("no usable rate candidates")]
    NoCandidates,

    /// A data file does not match the expected layout.
    #[error("file format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
