//! CLI orchestration: read a CSV, analyze it, emit the report (and
//! optionally an SVG chart).

use std::fs;
use std::path::PathBuf;

use crate::error::CliError;
use crate::report::{render_csv, render_table};
use crate::series::analyze_series_with;
use crate::svg::{render_svg, PlotMetric};
use crate::{dataset, series};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Csv,
}

/// One `analyze` invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input_path: PathBuf,
    pub output_format: OutputFormat,
    /// Set together with `plot_path`, or not at all.
    pub plot_metric: Option<PlotMetric>,
    pub plot_path: Option<PathBuf>,
    pub k: usize,
    pub gap_thresholds_pct: Vec<f64>,
}

impl RunConfig {
    pub fn new(input_path: impl Into<PathBuf>) -> Self {
        RunConfig {
            input_path: input_path.into(),
            output_format: OutputFormat::Table,
            plot_metric: None,
            plot_path: None,
            k: series::DEFAULT_K,
            gap_thresholds_pct: vec![1.0, 3.5],
        }
    }
}

/// Runs one analysis and returns the report text destined for stdout.
/// Warnings (quarters whose residual bucket outweighs the smallest named
/// share) are returned separately for the caller to surface on stderr.
pub fn run_to_string(config: &RunConfig) -> Result<(String, Vec<String>), CliError> {
    if config.plot_metric.is_some() != config.plot_path.is_some() {
        return Err(CliError::PlotConfig);
    }

    let bytes = fs::read(&config.input_path).map_err(|source| CliError::Input {
        path: config.input_path.clone(),
        source,
    })?;
    let dataset = dataset::parse_csv(bytes.as_slice())?;
    let report = analyze_series_with(&dataset, config.k)?;

    let warnings = report
        .records
        .iter()
        .filter(|r| r.snapshot.residual_exceeds_smallest())
        .map(|r| {
            format!(
                "warning: quarter {}: residual bucket exceeds the smallest named share",
                r.quarter
            )
        })
        .collect();

    if let (Some(metric), Some(path)) = (config.plot_metric, config.plot_path.as_ref()) {
        let svg = render_svg(&report, metric)?;
        fs::write(path, svg).map_err(|source| CliError::PlotOutput {
            path: path.clone(),
            source,
        })?;
    }

    let text = match config.output_format {
        OutputFormat::Table => render_table(&report, &config.gap_thresholds_pct),
        OutputFormat::Csv => render_csv(&report, &config.gap_thresholds_pct),
    };
    Ok((text, warnings))
}

/// Runs one analysis, printing the report to stdout and warnings to
/// stderr.
pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let (text, warnings) = run_to_string(config)?;
    for warning in warnings {
        eprintln!("{warning}");
    }
    print!("{text}");
    Ok(())
}
