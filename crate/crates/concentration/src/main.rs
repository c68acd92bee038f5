use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use concentration::cli::{run, OutputFormat, RunConfig};
use concentration::PlotMetric;

#[derive(Parser)]
#[command(
    name = "concentration",
    version,
    about = "Market concentration analytics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a quarterly unit-sales CSV (`quarter,vendor,units`)
    Analyze {
        /// Input CSV path
        #[arg(long)]
        input: PathBuf,

        /// Report format on stdout
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,

        /// Metric to plot as SVG (requires --plot-path)
        #[arg(long, value_enum, requires = "plot_path")]
        plot: Option<PlotArg>,

        /// Where to write the SVG
        #[arg(long, requires = "plot")]
        plot_path: Option<PathBuf>,

        /// How many top firms the concentration-ratio column sums
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        k: u64,

        /// Gap threshold in percent for the summary (repeatable)
        #[arg(long = "gap-threshold", value_name = "PCT", default_values_t = [1.0, 3.5])]
        gap_threshold: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlotArg {
    Shares,
    Hhi,
    Cr4,
    TopShare,
}

impl From<PlotArg> for PlotMetric {
    fn from(arg: PlotArg) -> Self {
        match arg {
            PlotArg::Shares => PlotMetric::Shares,
            PlotArg::Hhi => PlotMetric::Hhi,
            PlotArg::Cr4 => PlotMetric::Cr4,
            PlotArg::TopShare => PlotMetric::TopShare,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Analyze {
        input,
        format,
        plot,
        plot_path,
        k,
        gap_threshold,
    } = cli.command;

    let config = RunConfig {
        input_path: input,
        output_format: match format {
            FormatArg::Table => OutputFormat::Table,
            FormatArg::Csv => OutputFormat::Csv,
        },
        plot_metric: plot.map(PlotMetric::from),
        plot_path,
        k: k as usize,
        gap_thresholds_pct: gap_threshold,
    };

    match run(&config) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
