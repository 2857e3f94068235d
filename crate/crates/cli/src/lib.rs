//! Library behind the `sas-privacy` command-line tool.
//!
//! Every subcommand returns a [`Report`] that is rendered as CSV or JSON, so
//! the same code paths serve the binary and the tests.

mod commands;
mod config;
pub mod figures;
pub mod report;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sas_privacy::error::Error;

pub use commands::execute;
pub use config::{load_eval_config, QUAD_TOL_ENV};
pub use report::{Field, Format, Report};

#[derive(Debug, Parser)]
#[command(
    name = "sas-privacy",
    version,
    about = "Differential privacy with symmetric alpha-stable noise"
)]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Significant digits in printed numbers.
    #[arg(long, global = true, default_value_t = 9, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub precision: u8,
    /// key=value file overriding quadrature and series settings.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
#[command(rename_all = "kebab-case")]
pub enum Command {
    /// Stable density on points or a grid: columns x,pdf.
    #[command(allow_negative_numbers = true)]
    Density {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 0.0)]
        mu: f64,
        /// Evaluation point; may be repeated.
        #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
        x: Vec<f64>,
        /// Inclusive grid lo:hi:n.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Privacy loss between locations `sensitivity` and 0 on a grid: columns x,loss.
    #[command(allow_negative_numbers = true)]
    Losscurve {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 1.0)]
        sensitivity: f64,
        /// Inclusive grid lo:hi:n.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
    },
    /// Pure-DP budget of the stable mechanism.
    #[command(allow_negative_numbers = true)]
    Epsilon {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 1.0)]
        sensitivity: f64,
    },
    /// Noise scale meeting a target budget.
    #[command(allow_negative_numbers = true)]
    Calibrate {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 1.0)]
        sensitivity: f64,
        /// Use bisection even where a closed form exists.
        #[arg(long)]
        numeric: bool,
    },
    /// Noise draws, one per line.
    #[command(allow_negative_numbers = true)]
    Sample {
        #[command(flatten)]
        mech: MechOpts,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Location added to stable draws.
        #[arg(long, default_value_t = 0.0)]
        mu: f64,
    },
    /// Mean absolute deviation of stable noise: columns alpha,distortion.
    Distortion {
        #[arg(long, value_delimiter = ',', default_value = "2,1.999,1.99,1.95,1.9,1.8,1")]
        alpha_list: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
    },
    /// Hypothesis-testing and posterior bounds implied by a budget.
    Bounds {
        #[arg(long)]
        epsilon: f64,
        /// Prior probability of the alternative hypothesis.
        #[arg(long)]
        prior: Option<f64>,
    },
    /// Noisy answer to a query over a CSV file.
    #[command(allow_negative_numbers = true)]
    PrivateQuery {
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_enum)]
        query: QueryArg,
        #[arg(long)]
        column: Option<String>,
        /// Lower clipping bound (count: lower bound on the count).
        #[arg(long)]
        lo: Option<f64>,
        /// Upper clipping bound (count: upper bound on the count).
        #[arg(long)]
        hi: Option<f64>,
        #[command(flatten)]
        mech: MechOpts,
        /// Target budget; sets the noise scale when none is given.
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Data series behind a figure.
    Figure {
        #[arg(long, value_enum)]
        name: FigureName,
    },
}

#[derive(Debug, Args)]
pub struct MechOpts {
    #[arg(long, value_enum, default_value_t = MechArg::Sas)]
    pub mech: MechArg,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Stable scale.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Laplace scale.
    #[arg(long)]
    pub b: Option<f64>,
    /// Gaussian standard deviation.
    #[arg(long)]
    pub sigma: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MechArg {
    Sas,
    Laplace,
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QueryArg {
    Count,
    Sum,
    Mean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureName {
    Fig2,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

/// Failure with its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or input data; exit code 2.
    Usage(String),
    /// Numerical failure; exit code 3.
    Numeric(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::QuadratureNotConverged { .. } | Error::MaxNotBracketed { .. } | Error::CalibrationFailed(_) => {
                CliError::Numeric(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Runs a parsed command line, writing to `--output` or `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cfg = load_eval_config(
        cli.output.config.as_deref(),
        std::env::var(QUAD_TOL_ENV).ok().as_deref(),
    )?;
    let report = execute(&cli.command, &cfg)?;
    let precision = cli.output.precision as usize;
    match &cli.output.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            report.write(&mut w, cli.output.format, precision)?;
            w.flush()?;
        }
        None => report.write(stdout, cli.output.format, precision)?,
    }
    Ok(())
}
