//! End-to-end CLI tests: golden outputs, diagnostics, exit codes, and
//! the structure of emitted SVG documents.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use concentration::{analyze_series, parse_csv};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concentration"))
        .args(args)
        .output()
        .expect("failed to spawn binary")
}

fn run_on_fixture(name: &str, extra: &[&str]) -> Output {
    let input = fixture(name);
    let mut args = vec!["analyze", "--input", input.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

// ── golden outputs ─────────────────────────────────────────────────────

#[test]
fn csv_report_matches_golden_bytes() {
    let output = run_on_fixture("duopoly_flip.csv", &["--format", "csv"]);
    assert!(output.status.success());
    let golden = std::fs::read(fixture("duopoly_flip_report.csv")).unwrap();
    assert_eq!(output.stdout, golden);
}

#[test]
fn table_report_matches_golden_bytes() {
    let output = run_on_fixture("duopoly_flip.csv", &[]);
    assert!(output.status.success());
    let golden = std::fs::read(fixture("duopoly_flip_report.txt")).unwrap();
    assert_eq!(output.stdout, golden);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let first = run_on_fixture("demo_mobile_os.csv", &["--format", "csv"]);
    let second = run_on_fixture("demo_mobile_os.csv", &["--format", "csv"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

// ── report round trip ──────────────────────────────────────────────────

#[test]
fn dataset_round_trip_preserves_index_values() {
    let bytes = std::fs::read(fixture("demo_mobile_os.csv")).unwrap();
    let dataset = parse_csv(bytes.as_slice()).unwrap();
    let report = analyze_series(&dataset).unwrap();

    // serialize-and-reparse must reproduce every index value bit-for-bit
    let reparsed = parse_csv(dataset.to_csv().as_bytes()).unwrap();
    let re_report = analyze_series(&reparsed).unwrap();
    assert_eq!(report.records.len(), re_report.records.len());
    for (a, b) in report.records.iter().zip(re_report.records.iter()) {
        assert_eq!(a.quarter, b.quarter);
        assert_eq!(a.bounds.lower.to_bits(), b.bounds.lower.to_bits());
        assert_eq!(a.bounds.upper.to_bits(), b.bounds.upper.to_bits());
        assert_eq!(a.cr4.map(f64::to_bits), b.cr4.map(f64::to_bits));
        assert_eq!(a.top_vendor, b.top_vendor);
        assert_eq!(a.top_share.to_bits(), b.top_share.to_bits());
    }
}

// ── diagnostics and exit codes ─────────────────────────────────────────

#[test]
fn missing_input_exits_one_and_names_the_path() {
    let output = run(&["analyze", "--input", "no/such/file.csv"]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("no/such/file.csv"), "stderr: {stderr}");
}

#[test]
fn malformed_row_diagnostic_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "quarter,vendor,units\n2015Q1,a,100\n2015Q5,b,50\n").unwrap();
    let output = run(&["analyze", "--input", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("line 3"), "stderr: {stderr}");
    assert!(stderr.contains("2015Q5"), "stderr: {stderr}");
}

#[test]
fn plot_flag_requires_plot_path() {
    let output = run_on_fixture("duopoly_flip.csv", &["--plot", "hhi"]);
    assert!(!output.status.success());
}

#[test]
fn residual_heavier_than_smallest_named_warns_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("warn.csv");
    std::fs::write(
        &path,
        "quarter,vendor,units\n2015Q1,a,500\n2015Q1,b,100\n2015Q1,others,400\n",
    )
    .unwrap();
    let output = run(&["analyze", "--input", path.to_str().unwrap()]);
    assert!(output.status.success(), "warning must not fail the run");
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("warning"), "stderr: {stderr}");
    assert!(stderr.contains("2015Q1"), "stderr: {stderr}");
}

// ── flags ──────────────────────────────────────────────────────────────

#[test]
fn custom_k_changes_the_ratio_column() {
    let output = run_on_fixture("duopoly_flip.csv", &["--format", "csv", "--k", "1"]);
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    // with k = 1 the ratio equals the top share and is defined everywhere
    let row = stdout.lines().nth(1).unwrap();
    assert_eq!(
        row,
        "2013Q1,0.482500,0.485000,0.518135,0.600000,alpha,0.600000,highly_concentrated,loose_oligopoly"
    );
}

#[test]
fn gap_thresholds_are_repeatable_and_replace_defaults() {
    let output = run_on_fixture(
        "duopoly_flip.csv",
        &[
            "--format",
            "csv",
            "--gap-threshold",
            "0.55",
            "--gap-threshold",
            "5",
        ],
    );
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    // gaps strictly below 0.55%: q1/q7 (0.518135), q2/q6 (0.540541),
    // q3 (0.549089), q8 (0.487805) -> 6 of 8
    assert!(
        stdout.contains("# fraction_below,0.55,0.750000"),
        "{stdout}"
    );
    assert!(stdout.contains("# fraction_below,5,1.000000"), "{stdout}");
    assert!(!stdout.contains("# fraction_below,3.5"), "{stdout}");
}

// ── SVG output ─────────────────────────────────────────────────────────

fn render_plot(metric: &str) -> String {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plot.svg");
    let output = run_on_fixture(
        "duopoly_flip.csv",
        &["--plot", metric, "--plot-path", path.to_str().unwrap()],
    );
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    std::fs::read_to_string(&path).unwrap()
}

#[test]
fn hhi_plot_is_wellformed_svg_with_two_polylines_and_year_labels() {
    let svg = render_plot("hhi");
    let doc = roxmltree::Document::parse(&svg).expect("well-formed XML");
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    assert_eq!(root.attribute("version"), Some("1.1"));
    assert_eq!(root.attribute("width"), Some("800"));
    assert_eq!(root.attribute("height"), Some("500"));

    let polylines: Vec<_> = doc
        .descendants()
        .filter(|n| n.tag_name().name() == "polyline")
        .collect();
    assert_eq!(polylines.len(), 2, "lower and upper bound lines");

    // one x-axis label per year in the fixture (2013, 2014)
    let year_labels: Vec<_> = doc
        .descendants()
        .filter(|n| n.attribute("class") == Some("year-label"))
        .collect();
    assert_eq!(year_labels.len(), 2);

    // self-contained: no external resource references anywhere
    for node in doc.descendants().filter(|n| n.is_element()) {
        for attr in node.attributes() {
            assert!(
                !["href", "src", "xlink:href"].contains(&attr.name()),
                "external reference via {}",
                attr.name()
            );
        }
    }
}

#[test]
fn all_plot_metrics_render_wellformed_documents() {
    for metric in ["shares", "hhi", "cr4", "top-share"] {
        let svg = render_plot(metric);
        roxmltree::Document::parse(&svg).unwrap_or_else(|e| panic!("{metric}: {e}"));
    }
}

#[test]
fn plot_output_is_deterministic() {
    assert_eq!(render_plot("shares"), render_plot("shares"));
}
