//! `brody`: sample catalogued random-matrix models, check their constraints,
//! trace the law of large numbers and tabulate the reference spacing laws.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

mod commands;
mod settings;

pub use settings::{parse_config, parse_constants, Settings};

#[derive(Debug, Parser)]
#[command(name = "brody", version, about = "Monte Carlo spacing statistics of 2x2 random-matrix models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a model, write histogram, law curve, summary and manifest.
    Sample(RunArgs),
    /// Check a model's constraints and its discriminant condition.
    Validate(RunArgs),
    /// Running mean spacing over the population mean at checkpoints.
    Lln(LlnArgs),
    /// Tabulate a reference spacing law.
    Pdf(PdfArgs),
    /// List the catalogued model ids.
    Catalog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DriverKind {
    Exp,
    Gamma2,
    NormalSquares,
}

impl DriverKind {
    pub fn name(self) -> &'static str {
        match self {
            DriverKind::Exp => "exp",
            DriverKind::Gamma2 => "gamma2",
            DriverKind::NormalSquares => "normal-squares",
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Catalogued model id (see `brody catalog`).
    #[arg(long)]
    pub model: Option<String>,
    /// Brody parameter in [0, 1].
    #[arg(long)]
    pub q: Option<f64>,
    /// Number of realizations.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub driver: Option<DriverKind>,
    #[arg(long = "sigma-e")]
    pub sigma_e: Option<f64>,
    #[arg(long = "sigma-g")]
    pub sigma_g: Option<f64>,
    #[arg(long = "sigma-r")]
    pub sigma_r: Option<f64>,
    /// Comma-separated complex constants replacing the model defaults, e.g. `1+2i,1+i,1-i,1-2i`.
    #[arg(long, allow_hyphen_values = true)]
    pub constants: Option<String>,
    /// Reference law for the goodness-of-fit test (default: the model's target law).
    #[arg(long)]
    pub law: Option<String>,
    #[arg(long)]
    pub bins: Option<usize>,
    #[arg(long)]
    pub zmax: Option<f64>,
    /// Worker threads; never changes results.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long = "out-dir")]
    pub out_dir: Option<PathBuf>,
    /// Exit with status 5 when the goodness-of-fit test fails.
    #[arg(long)]
    pub gate: bool,
    /// `key=value` file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct LlnArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Largest checkpoint.
    #[arg(long)]
    pub max: Option<usize>,
    /// Comma-separated checkpoints (default 1e4, 1e5, 1e6, 1e7 up to --max).
    #[arg(long)]
    pub checkpoints: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct PdfArgs {
    /// poisson, wigner, brody, semi-poisson, ginibre, brody2 or weibull.
    #[arg(long)]
    pub law: String,
    #[arg(long, default_value_t = 0.0)]
    pub q: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 1.0)]
    pub tau: f64,
    #[arg(long, default_value_t = 4.0)]
    pub zmax: f64,
    /// Grid points on [0, zmax].
    #[arg(long, default_value_t = 401)]
    pub points: usize,
    /// Write `pdf.csv` here instead of standard output.
    #[arg(long = "out-dir")]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("unknown model `{id}`; known models: {known}")]
    UnknownModel { id: String, known: String },
    #[error("validation failed for `{model}`: {report}")]
    Validation { model: String, report: String },
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("goodness of fit failed: ks {ks:e} vs threshold {threshold:e}, {violations} discriminant violations")]
    Gof { ks: f64, threshold: f64, violations: usize },
    #[error(transparent)]
    Core(#[from] brody_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Threads(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use brody_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::UnknownModel { .. } => 2,
            CliError::Validation { .. } => 3,
            CliError::Verification(_) => 4,
            CliError::Gof { .. } => 5,
            CliError::Core(E::InvalidParameter(_) | E::UnknownLaw(_) | E::UnknownModel(_)) => 2,
            CliError::Core(E::Validation { .. }) => 3,
            CliError::Core(E::KUndefined(_)) => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Runs one parsed command.
pub fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sample(args) => commands::sample(&args),
        Command::Validate(args) => commands::validate(&args),
        Command::Lln(args) => commands::lln(&args),
        Command::Pdf(args) => commands::pdf(&args),
        Command::Catalog => commands::catalog(),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
