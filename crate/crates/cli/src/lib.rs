//! Command-line front end for `tbl_drag`.
//!
//! Exit codes: 0 success, 1 usage, 2 data error, 3 inconsistent Re
//! estimates under `--strict`.

// `!(x > 0)` is used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

mod commands;
pub mod files;
pub mod format;
pub mod report;

pub use commands::{parse_correlation, AnalysisReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Inconsistent(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) | CliError::Inconsistent(m) => m,
        }
    }
}

impl From<tbl_drag::Error> for CliError {
    fn from(e: tbl_drag::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

/// Turbulent boundary layer drag analysis.
#[derive(Debug, Parser)]
#[command(name = "tbl-drag", version)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Write the primary output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for the generator (required by `synth`).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Exit with code 3 when the two Re estimates disagree.
    #[arg(long, global = true)]
    pub strict: bool,

    /// Worker threads across independent input files.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit profile files and report Re, Λ, θ and drag.
    Fit(FitArgs),
    /// Evaluate one drag correlation.
    Drag(DragArgs),
    /// Fit C in c'_f = C/ln²Re to a summary CSV.
    FitConstant(FitConstantArgs),
    /// Compare summary samples against correlations.
    Compare(CompareArgs),
    /// Write a synthetic profile or drag data set.
    #[command(subcommand)]
    Synth(SynthKind),
    /// Tangency map between log-square and power-law forms.
    Approx(ApproxArgs),
    /// Tabulate Λ against θ for profile files.
    Theta(ThetaArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ProfileFitArgs {
    /// Lower wall-unit cutoff excluding the viscous sublayer.
    #[arg(long, default_value_t = 30.0)]
    pub eta_min: f64,
    /// Minimum points per power-law segment.
    #[arg(long, default_value_t = 5)]
    pub min_seg: usize,
    /// Tolerance on |Δ ln Re| between the two Re estimates.
    #[arg(long, default_value_t = 0.1)]
    pub tol_ln: f64,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(required = true)]
    pub profiles: Vec<PathBuf>,
    #[command(flatten)]
    pub fit: ProfileFitArgs,
    /// Correlations to predict with: logsq[:C], langley, power:G:gamma,
    /// pipe-exact, pipe-asym. Defaults to logsq and langley.
    #[arg(long = "corr")]
    pub corrs: Vec<String>,
}

#[derive(Debug, Args)]
pub struct DragArgs {
    /// logsq | langley | power | pipe-exact | pipe-asym
    #[arg(long)]
    pub corr: String,
    #[arg(long)]
    pub re: Option<f64>,
    #[arg(long)]
    pub re_theta: Option<f64>,
    /// Log-square constant C.
    #[arg(long, default_value_t = 0.26)]
    pub constant: f64,
    /// Power-law prefactor G.
    #[arg(long)]
    pub prefactor: Option<f64>,
    /// Power-law exponent γ.
    #[arg(long)]
    pub exponent: Option<f64>,
}

#[derive(Debug, Args)]
pub struct FitConstantArgs {
    pub summary: PathBuf,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    pub summary: PathBuf,
    /// Correlation spec, repeatable. Defaults to logsq.
    #[arg(long = "corr")]
    pub corrs: Vec<String>,
    #[arg(long, default_value_t = 0.05)]
    pub significance: f64,
    /// Write the figure table CSV here.
    #[arg(long)]
    pub figure_out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SynthKind {
    /// Profile following the wall-layer scaling law.
    Profile(SynthProfileArgs),
    /// Drag samples following C/ln²Re.
    Dragset(SynthDragArgs),
}

#[derive(Debug, Args)]
pub struct SynthProfileArgs {
    #[arg(long)]
    pub re: f64,
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    #[arg(long, default_value_t = 30.0)]
    pub eta_lo: f64,
    #[arg(long, default_value_t = 1000.0)]
    pub eta_hi: f64,
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    #[arg(long, default_value_t = 10.0)]
    pub u_inf: f64,
    #[arg(long, default_value_t = 1.5e-5)]
    pub nu: f64,
    #[arg(long, default_value = "synth")]
    pub name: String,
}

#[derive(Debug, Args)]
pub struct SynthDragArgs {
    #[arg(long, default_value_t = 0.26)]
    pub constant: f64,
    #[arg(long, default_value_t = 40)]
    pub n: usize,
    #[arg(long, default_value_t = 1e5)]
    pub re_lo: f64,
    #[arg(long, default_value_t = 1e8)]
    pub re_hi: f64,
    #[arg(long, default_value_t = 0.03)]
    pub noise: f64,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[arg(long, conflicts_with = "gamma", required_unless_present = "gamma")]
    pub x0: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub constant: f64,
    #[arg(long, requires = "hi")]
    pub lo: Option<f64>,
    #[arg(long, requires = "lo")]
    pub hi: Option<f64>,
    #[arg(long, default_value_t = 1001)]
    pub n_grid: usize,
}

#[derive(Debug, Args)]
pub struct ThetaArgs {
    #[arg(required = true)]
    pub profiles: Vec<PathBuf>,
    #[command(flatten)]
    pub fit: ProfileFitArgs,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                1
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    match commands::execute(&cfg, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.exit_code()
        }
    }
}
