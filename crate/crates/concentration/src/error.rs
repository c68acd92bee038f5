//! Error types, one enum per subsystem.

use std::path::PathBuf;

use thiserror::Error;

use crate::dataset::QuarterId;

/// Errors from the pure index computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConcentrationError {
    #[error("share {0} is not a fraction in [0, 1]")]
    InvalidShare(f64),

    #[error("shares plus residual sum to {sum}, expected 1 within 1e-9")]
    ShareSumMismatch { sum: f64 },

    #[error("duplicate firm name {0:?}")]
    DuplicateName(String),

    #[error("exact HHI is undefined under truncation; use hhi_bounds")]
    ResidualPresent,

    #[error("residual mass present but the smallest named share is 0")]
    DegenerateTruncation,

    #[error("top-{k} not identifiable: only {named} named firms and a residual bucket")]
    InsufficientFirms { named: usize, k: usize },

    #[error("snapshot has no named firms")]
    EmptySnapshot,

    #[error("k must be at least 1")]
    InvalidK,

    #[error("value {0} is outside [0, 1]")]
    OutOfRange(f64),

    #[error("firm {0:?} not present in the snapshot")]
    UnknownFirm(String),
}

/// Errors from CSV ingestion and per-quarter snapshot extraction.
#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("read failed: {0}")]
    Io(#[from] std::io::Error),

    #[error("input is not valid UTF-8")]
    NotUtf8,

    #[error("missing header row `quarter,vendor,units`")]
    MissingHeader,

    #[error("line {line}: bad header {found:?}, expected `quarter,vendor,units`")]
    BadHeader { line: usize, found: String },

    #[error("line {line}: {reason}")]
    MalformedRow { line: usize, reason: String },

    #[error("line {line}: duplicate row for vendor {vendor:?} in quarter {quarter}")]
    DuplicateKey {
        line: usize,
        quarter: QuarterId,
        vendor: String,
    },

    #[error("line {line}: second residual row in quarter {quarter}")]
    MultipleResiduals { line: usize, quarter: QuarterId },

    #[error("quarter {quarter} has no non-residual vendor with positive units")]
    NoNamedUnits { quarter: QuarterId },

    #[error("quarter {0} not present in the dataset")]
    UnknownQuarter(QuarterId),

    #[error("quarter {0} has zero total units")]
    ZeroTotal(QuarterId),

    #[error(transparent)]
    Snapshot(#[from] ConcentrationError),
}

/// Errors from series analysis, annotated with the offending quarter.
#[derive(Debug, Error)]
pub enum SeriesError {
    #[error("dataset contains no quarters")]
    EmptyDataset,

    #[error(transparent)]
    Dataset(#[from] DatasetError),

    #[error("quarter {quarter}: {source}")]
    Quarter {
        quarter: QuarterId,
        source: ConcentrationError,
    },
}

/// Errors from chart rendering.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RenderError {
    #[error("cannot plot an empty series")]
    EmptySeries,
}

/// Top-level CLI errors; `Display` names the failing stage and location.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("plot metric and plot path must be provided together")]
    PlotConfig,

    #[error("cannot read input {path:?}: {source}")]
    Input {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("parse error in input: {0}")]
    Parse(#[from] DatasetError),

    #[error("analysis failed: {0}")]
    Analysis(#[from] SeriesError),

    #[error("plot failed: {0}")]
    Render(#[from] RenderError),

    #[error("cannot write plot {path:?}: {source}")]
    PlotOutput {
        path: PathBuf,
        source: std::io::Error,
    },
}
