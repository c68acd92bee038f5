//! Quarter-by-quarter series analysis: per-quarter index records,
//! bound-gap statistics, and dominance-crossover detection.

use crate::bounds::{hhi_bounds, HhiBounds};
use crate::classify::{classify_cr4, classify_hhi, CompetitionClass, ConcentrationClass};
use crate::dataset::{QuarterId, QuarterlyDataset};
use crate::error::{ConcentrationError, SeriesError};
use crate::indices::{cr_k, top_share};
use crate::snapshot::MarketSnapshot;

pub const DEFAULT_K: usize = 4;

/// Every index computed for one quarter.
///
/// `cr4` (and its class) are absent when the top-k sum is not
/// identifiable: a residual bucket is present and fewer than `k` vendors
/// are named. Both HHI bounds are classified; when the two classes differ
/// the quarter's concentration level is only known as an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexRecord {
    pub quarter: QuarterId,
    pub snapshot: MarketSnapshot,
    pub bounds: HhiBounds,
    pub cr4: Option<f64>,
    pub top_vendor: String,
    pub top_share: f64,
    pub hhi_class_lower: ConcentrationClass,
    pub hhi_class_upper: ConcentrationClass,
    pub cr4_class: Option<CompetitionClass>,
}

impl IndexRecord {
    /// Relative bound gap in percent: `(upper - lower) / lower * 100`
    /// (0 when both bounds are 0).
    pub fn gap_pct(&self) -> f64 {
        if self.bounds.lower > 0.0 {
            (self.bounds.upper - self.bounds.lower) / self.bounds.lower * 100.0
        } else {
            0.0
        }
    }
}

/// Distribution of the per-quarter relative bound gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct GapStats {
    gaps_pct: Vec<f64>,
    pub max_gap_pct: f64,
}

impl GapStats {
    /// Fraction of quarters whose relative gap is strictly below
    /// `threshold_pct` percent.
    pub fn fraction_below(&self, threshold_pct: f64) -> f64 {
        if self.gaps_pct.is_empty() {
            return 0.0;
        }
        let below = self.gaps_pct.iter().filter(|g| **g < threshold_pct).count();
        below as f64 / self.gaps_pct.len() as f64
    }

    pub fn gaps_pct(&self) -> &[f64] {
        &self.gaps_pct
    }
}

/// The leader changed between two consecutive records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossoverEvent {
    /// Quarter in which the new leader first appears.
    pub quarter: QuarterId,
    pub previous_leader: String,
    pub new_leader: String,
}

/// Full analysis of a quarterly dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesReport {
    pub records: Vec<IndexRecord>,
    pub gap_stats: GapStats,
    pub crossovers: Vec<CrossoverEvent>,
    /// The `k` used for the concentration-ratio column.
    pub k: usize,
}

/// Analyzes every quarter with the standard four-firm ratio.
pub fn analyze_series(dataset: &QuarterlyDataset) -> Result<SeriesReport, SeriesError> {
    analyze_series_with(dataset, DEFAULT_K)
}

/// Analyzes every quarter, using the `k` largest firms for the
/// concentration-ratio column.
pub fn analyze_series_with(
    dataset: &QuarterlyDataset,
    k: usize,
) -> Result<SeriesReport, SeriesError> {
    let quarters = dataset.quarters();
    if quarters.is_empty() {
        return Err(SeriesError::EmptyDataset);
    }

    let mut records = Vec::with_capacity(quarters.len());
    for quarter in quarters {
        let snapshot = dataset.to_snapshot(quarter)?;
        records.push(index_record(quarter, snapshot, k)?);
    }

    let gap_stats = gap_stats(&records);
    let crossovers = detect_crossovers(&records);
    Ok(SeriesReport {
        records,
        gap_stats,
        crossovers,
        k,
    })
}

/// Computes one record from a quarter's snapshot.
pub fn index_record(
    quarter: QuarterId,
    snapshot: MarketSnapshot,
    k: usize,
) -> Result<IndexRecord, SeriesError> {
    let annotate = |source: ConcentrationError| SeriesError::Quarter { quarter, source };

    let bounds = hhi_bounds(&snapshot).map_err(annotate)?;
    let cr4 = match cr_k(&snapshot, k) {
        Ok(value) => Some(value),
        Err(ConcentrationError::InsufficientFirms { .. }) => None,
        Err(other) => return Err(annotate(other)),
    };
    let (top_vendor, top) = top_share(&snapshot)
        .map(|(name, share)| (name.to_string(), share))
        .map_err(annotate)?;
    let hhi_class_lower = classify_hhi(bounds.lower).map_err(annotate)?;
    let hhi_class_upper = classify_hhi(bounds.upper).map_err(annotate)?;
    let cr4_class = match cr4 {
        Some(value) => Some(classify_cr4(value).map_err(annotate)?),
        None => None,
    };

    Ok(IndexRecord {
        quarter,
        snapshot,
        bounds,
        cr4,
        top_vendor,
        top_share: top,
        hhi_class_lower,
        hhi_class_upper,
        cr4_class,
    })
}

/// Gap statistics over a set of records.
pub fn gap_stats(records: &[IndexRecord]) -> GapStats {
    let gaps_pct: Vec<f64> = records.iter().map(IndexRecord::gap_pct).collect();
    let max_gap_pct = gaps_pct.iter().copied().fold(0.0, f64::max);
    GapStats {
        gaps_pct,
        max_gap_pct,
    }
}

/// One event for every consecutive pair of records whose leaders differ.
/// Gaps in the quarter sequence do not suppress events: the series is
/// whatever data exist.
pub fn detect_crossovers(records: &[IndexRecord]) -> Vec<CrossoverEvent> {
    records
        .windows(2)
        .filter(|w| w[0].top_vendor != w[1].top_vendor)
        .map(|w| CrossoverEvent {
            quarter: w[1].quarter,
            previous_leader: w[0].top_vendor.clone(),
            new_leader: w[1].top_vendor.clone(),
        })
        .collect()
}
