//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by mask, metric, ranking, robustness and schema operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Two masks (or tables) that must share grid dimensions do not.
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch { left: [usize; 3], right: [usize; 3] },

    /// Two masks that must share voxel spacing do not.
    #[error("spacing mismatch: {left:?} vs {right:?}")]
    SpacingMismatch { left: [f64; 3], right: [f64; 3] },

    /// A distance metric was asked for on an empty point set.
    #[error("metric undefined: {0}")]
    MetricUndefined(String),

    /// An aggregate was requested over an empty value list; a missing-data
    /// policy must intervene upstream.
    #[error("aggregation undefined: {0}")]
    AggregationUndefined(String),

    /// Rank correlation is undefined (zero rank variance in one input).
    #[error("rank correlation undefined: {0}")]
    TauUndefined(String),

    /// A ranking scheme violates its own constraints (e.g. last-rank policy
    /// outside case-based aggregation).
    #[error("invalid ranking scheme: {0}")]
    InvalidScheme(String),

    /// A task fails the robustness-analysis inclusion criteria.
    #[error("task not eligible: {0}")]
    NotEligible(String),

    /// Malformed input document.
    #[error("parse error: {0}")]
    Parse(String),

    /// A challenge description used a key the parameter registry does not define.
    #[error("unknown parameter key: {0}")]
    UnknownParameter(String),

    /// Catch-all for violated operation preconditions.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable class name, used by the CLI for exit reporting.
    pub fn class(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::SpacingMismatch { .. } => "spacing-mismatch",
            Error::MetricUndefined(_) => "metric-undefined",
            Error::AggregationUndefined(_) => "aggregation-undefined",
            Error::TauUndefined(_) => "tau-undefined",
            Error::InvalidScheme(_) => "invalid-scheme",
            Error::NotEligible(_) => "not-eligible",
            Error::Parse(_) => "parse-error",
            Error::UnknownParameter(_) => "unknown-parameter",
            Error::InvalidInput(_) => "invalid-input",
            Error::Io(_) => "io-error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
