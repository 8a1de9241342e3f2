use std::path::PathBuf;

use chrono::NaiveDate;
use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("ingestion error at line {line}: {message}")]
    Ingestion { line: u64, message: String },

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("unsupported downsampling: series step {from_minutes} min is finer than target {to_minutes} min")]
    UnsupportedDownsampling { from_minutes: i64, to_minutes: i64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("series `{series}` does not cover {missing}")]
    Coverage { series: String, missing: String },

    #[error("daylight-saving transition on {0} falls inside the requested window")]
    DaylightSaving(NaiveDate),

    #[error("numerical blow-up at step {step} (parameters: {params})")]
    NumericalBlowup { step: usize, params: String },

    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),

    #[error("degenerate range: {0}")]
    DegenerateRange(String),

    #[error("degenerate baseline: forecast non-optimized energy sums to zero over the window")]
    DegenerateBaseline,

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("insufficient history: calibration needs {needed} steps, bundle has {available}")]
    InsufficientHistory { needed: usize, available: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
