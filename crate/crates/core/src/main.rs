//! `iaa` command-line interface.
//!
//! Exit codes: 0 success, 1 validation failure, 2 I/O failure.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use iaa_core::dataset::{default_scale, parse_inline_intervals};
use iaa_core::report::{Fixed4, LevelReport};
use iaa_core::{
    build_t1, export_samples, gamma_t1, generate_synthetic, ingest_csv, run_report, Error, IngestOptions, Interval,
    Mode, OutputFormat, RunConfig, SynthSpec,
};

#[derive(Parser)]
#[command(
    name = "iaa",
    version,
    about = "Interval Agreement Approach fuzzy set agreement analysis"
)]
struct Cli {
    /// Worker threads for per-term computation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Per-term intra- and inter-group agreement report.
    Report {
        /// Survey CSV with header group,respondent,term,lo,hi.
        csv: PathBuf,
        /// Response scale; intervals outside it are rejected [default: 0 10].
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        scale: Option<Vec<f64>>,
        /// Measure on a sampled grid with this step instead of exactly.
        #[arg(long, value_name = "STEP")]
        discretize: Option<f64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Drop invalid rows with a warning instead of failing.
        #[arg(long)]
        skip_invalid: bool,
    },
    /// Sampled membership functions of every group set and zSlice (long CSV).
    Samples {
        /// Survey CSV with header group,respondent,term,lo,hi.
        csv: PathBuf,
        /// Grid step; defaults to 1% of the scale span.
        #[arg(long)]
        step: Option<f64>,
        /// Response scale; intervals outside it are rejected [default: 0 10].
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        scale: Option<Vec<f64>>,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        skip_invalid: bool,
    },
    /// Seeded synthetic dataset with controllable inter-group overlap.
    Synth {
        #[arg(long)]
        groups: usize,
        /// Respondents per group, one interval each.
        #[arg(long)]
        respondents: usize,
        /// Shared-opinion weight in [0, 1]; 1 makes all groups identical.
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        seed: u64,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Agreement ratio of one inline set of intervals, e.g. "2,5;4,5;3,6".
    #[command(name = "gamma-t1")]
    GammaT1 {
        #[arg(long)]
        intervals: String,
        #[arg(long, value_name = "STEP")]
        discretize: Option<f64>,
        /// Response scale; intervals outside it are rejected [default: 0 10].
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        scale: Option<Vec<f64>>,
    },
}

#[derive(Serialize)]
struct GammaT1Output {
    n_intervals: usize,
    gamma_t1: Fixed4,
    degenerate: bool,
    per_level: Vec<LevelReport>,
    mode: &'static str,
}

fn scale_arg(scale: Option<Vec<f64>>) -> Result<Interval, Error> {
    match scale.as_deref() {
        None => Ok(default_scale()),
        Some([lo, hi]) if lo < hi => Interval::new(*lo, *hi),
        Some(v) => Err(Error::InvalidArgument(format!("invalid scale {v:?}"))),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            source: e,
        }),
        None => io::stdout().write_all(text.as_bytes()).map_err(|e| Error::Io {
            path: "<stdout>".into(),
            source: e,
        }),
    }
}

fn ingest(path: &Path, scale: Interval, skip_invalid: bool) -> Result<iaa_core::SurveyDataset, Error> {
    let ingested = ingest_csv(path, &IngestOptions { scale, skip_invalid })?;
    for row in &ingested.skipped {
        eprintln!("warning: {}: skipped {row}", path.display());
    }
    Ok(ingested.dataset)
}

fn run(cli: Cli) -> Result<(), Error> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Report {
            csv,
            scale,
            discretize,
            format,
            out,
            skip_invalid,
        } => {
            let scale = scale_arg(scale)?;
            let data = ingest(&csv, scale, skip_invalid)?;
            let config = RunConfig {
                scale,
                discretize,
                format: match format {
                    Format::Json => OutputFormat::Json,
                    Format::Csv => OutputFormat::Csv,
                },
            };
            emit(out.as_deref(), &run_report(&data, &config)?)
        }
        Command::Samples {
            csv,
            step,
            scale,
            out,
            skip_invalid,
        } => {
            let data = ingest(&csv, scale_arg(scale)?, skip_invalid)?;
            emit(out.as_deref(), &export_samples(&data, step)?)
        }
        Command::Synth {
            groups,
            respondents,
            theta,
            seed,
            out,
        } => {
            let data = generate_synthetic(&SynthSpec {
                groups,
                respondents,
                theta,
                seed,
            })?;
            emit(out.as_deref(), &data.to_csv_string()?)
        }
        Command::GammaT1 {
            intervals,
            discretize,
            scale,
        } => {
            let intervals = parse_inline_intervals(&intervals)?;
            let mode = match discretize {
                None => Mode::Exact,
                Some(step) => Mode::discretized(scale_arg(scale)?, step)?,
            };
            let report = gamma_t1(&build_t1(&intervals)?, mode)?;
            let output = GammaT1Output {
                n_intervals: intervals.len(),
                gamma_t1: Fixed4(report.gamma),
                degenerate: report.degenerate,
                per_level: report.per_level.iter().map(LevelReport::from).collect(),
                mode: mode.name(),
            };
            let mut text = serde_json::to_string_pretty(&output).expect("serializable");
            text.push('\n');
            emit(None, &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
