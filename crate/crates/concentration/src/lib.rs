//! Market concentration analytics.
//!
//! Computes the Herfindahl-Hirschman index (HHI), k-firm concentration
//! ratios, and rigorous HHI lower/upper bounds when only the largest
//! market shares are known and the rest is an unattributed "others"
//! bucket. Index values are classified against the standard regulatory
//! ladders, and quarterly datasets can be analyzed as a series: per-quarter
//! index records, bound-gap statistics, and dominance-crossover events.
//!
//! ```
//! use concentration::{hhi, hhi_bounds, MarketSnapshot};
//!
//! let complete = MarketSnapshot::complete(vec![
//!     ("alpha".to_string(), 0.7),
//!     ("beta".to_string(), 0.3),
//! ]).unwrap();
//! assert!((hhi(&complete).unwrap() - 0.58).abs() < 1e-12);
//!
//! // Truncated data: only the top two vendors are named, 20% is "others".
//! let truncated = MarketSnapshot::new(vec![
//!     ("alpha".to_string(), 0.5),
//!     ("beta".to_string(), 0.3),
//! ], 0.2).unwrap();
//! let bounds = hhi_bounds(&truncated).unwrap();
//! assert!((bounds.lower - 0.34).abs() < 1e-12);
//! assert!((bounds.upper - 0.38).abs() < 1e-12);
//! ```

pub mod bounds;
pub mod classify;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod indices;
pub mod report;
pub mod series;
pub mod snapshot;
pub mod svg;

pub use bounds::{bounds_oracle, hhi_bounds, residual_completions, BoundsBranch, HhiBounds};
pub use classify::{classify_cr4, classify_hhi, CompetitionClass, ConcentrationClass};
pub use dataset::{parse_csv, QuarterId, QuarterlyDataset, SalesRecord};
pub use error::{ConcentrationError, DatasetError, RenderError, SeriesError};
pub use indices::{cr_k, hhi, merger_delta, top_share};
pub use series::{
    analyze_series, analyze_series_with, detect_crossovers, gap_stats, CrossoverEvent, GapStats,
    IndexRecord, SeriesReport,
};
pub use snapshot::{MarketSnapshot, Share};
pub use svg::{render_svg, PlotMetric};

/// Tolerance on `sum(shares) + residual = 1` when validating a snapshot.
pub const SUM_TOLERANCE: f64 = 1e-9;
