//! Text report emitters. Numbers are printed with 6 decimal places and
//! the layouts are fixed, so identical inputs produce identical bytes.

use std::fmt::Write;

use crate::series::{IndexRecord, SeriesReport};

pub const CSV_HEADER: &str =
    "quarter,hhi_lower,hhi_upper,gap_pct,cr4,top_vendor,top_share,hhi_class,cr4_class";

fn fmt6(x: f64) -> String {
    format!("{x:.6}")
}

/// `lower..upper` when the two bound classes differ, one name otherwise.
fn hhi_class_field(record: &IndexRecord) -> String {
    if record.hhi_class_lower == record.hhi_class_upper {
        record.hhi_class_lower.to_string()
    } else {
        format!("{}..{}", record.hhi_class_lower, record.hhi_class_upper)
    }
}

/// Machine-readable CSV report. Summary lines follow the data rows as
/// `#` comment lines so the output stays parseable by CSV readers with
/// comment support.
pub fn render_csv(report: &SeriesReport, gap_thresholds_pct: &[f64]) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for record in &report.records {
        let cr4 = record.cr4.map(fmt6).unwrap_or_default();
        let cr4_class = record.cr4_class.map(|c| c.to_string()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            record.quarter,
            fmt6(record.bounds.lower),
            fmt6(record.bounds.upper),
            fmt6(record.gap_pct()),
            cr4,
            record.top_vendor,
            fmt6(record.top_share),
            hhi_class_field(record),
            cr4_class,
        )
        .unwrap();
    }

    writeln!(out, "# max_gap_pct,{}", fmt6(report.gap_stats.max_gap_pct)).unwrap();
    for &threshold in gap_thresholds_pct {
        writeln!(
            out,
            "# fraction_below,{},{}",
            threshold,
            fmt6(report.gap_stats.fraction_below(threshold))
        )
        .unwrap();
    }
    writeln!(out, "# crossovers,{}", report.crossovers.len()).unwrap();
    for event in &report.crossovers {
        writeln!(
            out,
            "# crossover,{},{},{}",
            event.quarter, event.previous_leader, event.new_leader
        )
        .unwrap();
    }
    out
}

/// Human-readable table with the same columns and summary.
pub fn render_table(report: &SeriesReport, gap_thresholds_pct: &[f64]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<8} {:>10} {:>10} {:>10} {:>10}  {:<12} {:>10}  {:<24} cr4_class",
        "quarter",
        "hhi_lower",
        "hhi_upper",
        "gap_pct",
        "cr4",
        "top_vendor",
        "top_share",
        "hhi_class",
    )
    .unwrap();
    for record in &report.records {
        let cr4 = record.cr4.map(fmt6).unwrap_or_else(|| "-".to_string());
        let cr4_class = record
            .cr4_class
            .map(|c| c.to_string())
            .unwrap_or_else(|| "-".to_string());
        writeln!(
            out,
            "{:<8} {:>10} {:>10} {:>10} {:>10}  {:<12} {:>10}  {:<24} {}",
            record.quarter.to_string(),
            fmt6(record.bounds.lower),
            fmt6(record.bounds.upper),
            fmt6(record.gap_pct()),
            cr4,
            record.top_vendor,
            fmt6(record.top_share),
            hhi_class_field(record),
            cr4_class,
        )
        .unwrap();
    }

    out.push('\n');
    writeln!(out, "max_gap_pct: {}", fmt6(report.gap_stats.max_gap_pct)).unwrap();
    for &threshold in gap_thresholds_pct {
        writeln!(
            out,
            "fraction_below({}%): {}",
            threshold,
            fmt6(report.gap_stats.fraction_below(threshold))
        )
        .unwrap();
    }
    writeln!(out, "crossovers: {}", report.crossovers.len()).unwrap();
    for event in &report.crossovers {
        writeln!(
            out,
            "  {}: {} -> {}",
            event.quarter, event.previous_leader, event.new_leader
        )
        .unwrap();
    }
    out
}
