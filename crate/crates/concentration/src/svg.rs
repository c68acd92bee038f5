//! Deterministic SVG 1.1 line charts for a [`SeriesReport`].
//!
//! Fixed 800x500 canvas, quarters along the x axis, the `[0, 1]`
//! fraction scale on the y axis. Quarters where a metric is undefined
//! break the polyline; isolated points are drawn as circle markers.
//! Colors come from a fixed palette assigned by first appearance, so
//! identical inputs produce identical bytes. No external resources are
//! referenced.

use std::fmt::Write;

use crate::error::RenderError;
use crate::series::SeriesReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlotMetric {
    /// One line per named vendor plus the residual bucket.
    Shares,
    /// Lower and upper HHI bound lines.
    Hhi,
    /// The k-firm concentration ratio (breaks where undefined).
    Cr4,
    /// The leading firm's share.
    TopShare,
}

impl PlotMetric {
    fn title(self) -> &'static str {
        match self {
            PlotMetric::Shares => "market shares",
            PlotMetric::Hhi => "hhi bounds",
            PlotMetric::Cr4 => "concentration ratio",
            PlotMetric::TopShare => "top share",
        }
    }
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 60.0;
const PLOT_W: f64 = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
const PLOT_H: f64 = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

/// One plotted series: a label and one optional value per record.
struct Series {
    label: String,
    values: Vec<Option<f64>>,
}

fn collect_series(report: &SeriesReport, metric: PlotMetric) -> Vec<Series> {
    let records = &report.records;
    match metric {
        PlotMetric::Hhi => vec![
            Series {
                label: "hhi_lower".into(),
                values: records.iter().map(|r| Some(r.bounds.lower)).collect(),
            },
            Series {
                label: "hhi_upper".into(),
                values: records.iter().map(|r| Some(r.bounds.upper)).collect(),
            },
        ],
        PlotMetric::Cr4 => vec![Series {
            label: "cr4".into(),
            values: records.iter().map(|r| r.cr4).collect(),
        }],
        PlotMetric::TopShare => vec![Series {
            label: "top_share".into(),
            values: records.iter().map(|r| Some(r.top_share)).collect(),
        }],
        PlotMetric::Shares => {
            // named vendors in first-appearance order
            let mut vendors: Vec<String> = Vec::new();
            for record in records {
                for (name, _) in record.snapshot.entries() {
                    if !vendors.iter().any(|v| v == name) {
                        vendors.push(name.clone());
                    }
                }
            }
            let mut series: Vec<Series> = vendors
                .into_iter()
                .map(|vendor| Series {
                    values: records
                        .iter()
                        .map(|r| r.snapshot.share_of(&vendor).map(|s| s.value()))
                        .collect(),
                    label: vendor,
                })
                .collect();
            series.push(Series {
                label: "residual".into(),
                values: records
                    .iter()
                    .map(|r| Some(r.snapshot.residual().value()))
                    .collect(),
            });
            series
        }
    }
}

fn x_pos(i: usize, n: usize) -> f64 {
    if n <= 1 {
        MARGIN_LEFT + PLOT_W / 2.0
    } else {
        MARGIN_LEFT + PLOT_W * i as f64 / (n - 1) as f64
    }
}

fn y_pos(value: f64) -> f64 {
    MARGIN_TOP + PLOT_H * (1.0 - value)
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Renders one metric of a series report as a standalone SVG document.
pub fn render_svg(report: &SeriesReport, metric: PlotMetric) -> Result<String, RenderError> {
    if report.records.is_empty() {
        return Err(RenderError::EmptySeries);
    }
    let n = report.records.len();
    let series = collect_series(report, metric);

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    )
    .unwrap();
    writeln!(
        svg,
        "  <rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"#ffffff\"/>"
    )
    .unwrap();
    writeln!(
        svg,
        "  <text class=\"title\" x=\"{:.2}\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{}</text>",
        MARGIN_LEFT + PLOT_W / 2.0,
        metric.title()
    )
    .unwrap();

    // axes
    let x0 = MARGIN_LEFT;
    let x1 = MARGIN_LEFT + PLOT_W;
    let y0 = MARGIN_TOP + PLOT_H;
    writeln!(
        svg,
        "  <line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y0:.2}\" stroke=\"#000000\" stroke-width=\"1\"/>"
    )
    .unwrap();
    writeln!(
        svg,
        "  <line x1=\"{x0:.2}\" y1=\"{:.2}\" x2=\"{x0:.2}\" y2=\"{y0:.2}\" stroke=\"#000000\" stroke-width=\"1\"/>",
        MARGIN_TOP
    )
    .unwrap();

    // y ticks on the [0, 1] fraction scale
    for i in 0..=4 {
        let value = i as f64 * 0.25;
        let y = y_pos(value);
        writeln!(
            svg,
            "  <line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{x0:.2}\" y2=\"{y:.2}\" stroke=\"#000000\" stroke-width=\"1\"/>",
            x0 - 4.0
        )
        .unwrap();
        writeln!(
            svg,
            "  <text class=\"y-label\" x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{value:.2}</text>",
            x0 - 8.0,
            y + 4.0
        )
        .unwrap();
        if i > 0 {
            writeln!(
                svg,
                "  <line x1=\"{x0:.2}\" y1=\"{y:.2}\" x2=\"{x1:.2}\" y2=\"{y:.2}\" stroke=\"#dddddd\" stroke-width=\"1\"/>"
            )
            .unwrap();
        }
    }

    // one x label per year, at its first quarter in the series
    let mut last_year = None;
    for (i, record) in report.records.iter().enumerate() {
        let year = record.quarter.year();
        if last_year == Some(year) {
            continue;
        }
        last_year = Some(year);
        let x = x_pos(i, n);
        writeln!(
            svg,
            "  <line x1=\"{x:.2}\" y1=\"{y0:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#000000\" stroke-width=\"1\"/>",
            y0 + 4.0
        )
        .unwrap();
        writeln!(
            svg,
            "  <text class=\"year-label\" x=\"{x:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{year}</text>",
            y0 + 18.0
        )
        .unwrap();
    }

    // series: polylines for runs of at least two points, markers for
    // isolated points
    for (s_idx, s) in series.iter().enumerate() {
        let color = PALETTE[s_idx % PALETTE.len()];
        let label = escape(&s.label);
        let mut run: Vec<(f64, f64)> = Vec::new();
        let flush = |run: &mut Vec<(f64, f64)>, svg: &mut String| {
            if run.len() >= 2 {
                let points: Vec<String> =
                    run.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
                writeln!(
                    svg,
                    "  <polyline class=\"series\" data-series=\"{label}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>",
                    points.join(" ")
                )
                .unwrap();
            } else if run.len() == 1 {
                let (x, y) = run[0];
                writeln!(
                    svg,
                    "  <circle class=\"marker\" data-series=\"{label}\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"{color}\"/>"
                )
                .unwrap();
            }
            run.clear();
        };
        for (i, value) in s.values.iter().enumerate() {
            match value {
                Some(v) => run.push((x_pos(i, n), y_pos(*v))),
                None => flush(&mut run, &mut svg),
            }
        }
        flush(&mut run, &mut svg);
    }

    // legend
    for (s_idx, s) in series.iter().enumerate() {
        let color = PALETTE[s_idx % PALETTE.len()];
        let y = MARGIN_TOP + 14.0 + 18.0 * s_idx as f64;
        writeln!(
            svg,
            "  <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" stroke-width=\"3\"/>",
            x1 + 10.0,
            y - 4.0,
            x1 + 30.0,
            y - 4.0
        )
        .unwrap();
        writeln!(
            svg,
            "  <text class=\"legend-label\" x=\"{:.2}\" y=\"{y:.2}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>",
            x1 + 36.0,
            escape(&s.label)
        )
        .unwrap();
    }

    svg.push_str("</svg>\n");
    Ok(svg)
}
