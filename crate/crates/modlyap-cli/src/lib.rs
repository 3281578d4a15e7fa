//! Command line front end: argument parsing, run configuration, and the CSV, JSON and SVG
//! writers.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod plot;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modlyap::cfword::TvWord;
use modlyap::farey::FareyFraction;

pub use config::{Format, RunConfig};
pub use error::{CliError, CliResult};
pub use plot::{emit_plot, PlotOptions};

#[derive(Debug, Parser)]
#[command(
    name = "modlyap",
    version,
    about = "Lyapunov exponents of modular functions along Farey paths",
    after_help = "Set MODLYAP_THREADS to fix the number of worker threads (0 or unset: automatic).\n\
                  Exit codes: 0 success, 1 computation failure, 2 usage error, 3 verification failure."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Function on the arc: `j`, `one`, or `file:<path>` with a q-expansion.
    #[arg(long, global = true, default_value = "j")]
    pub f: String,
    /// Gauss-Legendre order on the arc (4..=512).
    #[arg(long, global = true, default_value_t = 64)]
    pub quad_order: usize,
    /// Truncation order N of the j expansion (1..=200).
    #[arg(long, global = true, default_value_t = 24)]
    pub truncation: usize,
    /// Number of Gauss-Legendre points in the t grid of the scans (8..=4096).
    #[arg(long, global = true, default_value_t = 64)]
    pub tgrid: usize,
    /// Level of level based commands (at most 14; scans have lower caps).
    #[arg(long, global = true)]
    pub level: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub out: Format,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed of the random streams.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// JSON run configuration; its fields override the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

impl GlobalArgs {
    pub fn run_config(&self) -> CliResult<RunConfig> {
        let cfg = RunConfig {
            f: self.f.clone(),
            quad_order: self.quad_order,
            truncation: self.truncation,
            t_grid: self.tgrid,
            level: self.level,
            out: self.out,
            output: self.output.clone(),
            seed: self.seed,
        };
        let cfg = match &self.config {
            Some(path) => cfg.overlay_file(path)?,
            None => cfg,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lyapunov exponents: periodic points, the Markov parametrization, val, estimates and
    /// points with a prescribed exponent.
    Lyap {
        #[command(subcommand)]
        command: LyapCommand,
    },
    /// Cycle integral of the matrix of a strict word.
    Cycint {
        /// Exponents of the word, e.g. `2,2,1,1`.
        #[arg(long, value_parser = parse_strict_word)]
        word: TvWord,
        #[arg(long, value_enum, default_value_t = Method::S)]
        method: Method,
        /// Base point of the direct method, e.g. `0+1i`.
        #[arg(long, value_parser = parse_complex)]
        tau0: Option<num_complex::Complex<f64>>,
    },
    /// Fractions of a Farey tree level as CSV `level,p,q,word`.
    Farey {
        #[arg(long, value_enum, default_value_t = Tree::Full)]
        tree: Tree,
    },
    /// Markov words of the half tree, or of one fraction.
    Markov {
        /// A fraction of [0, 1/2], e.g. `2/5`.
        #[arg(long, value_parser = parse_fraction)]
        fraction: Option<FareyFraction>,
    },
    /// Inequality scans and exact identity checks.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Upper end of the x range of the kernel scans.
        #[arg(long, default_value_t = 40.0)]
        x_max: f64,
        /// Largest k of the triangle scan.
        #[arg(long, default_value_t = 4)]
        k_max: usize,
    },
    /// SVG plot of a `p,q,x,value` dataset, or of a freshly computed level.
    Plot {
        /// CSV with `x` and `value` columns; without it the level is computed.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Fit the axes to the data instead of the default window.
        #[arg(long)]
        fit: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum LyapCommand {
    /// Exponent at the purely periodic point of a word.
    Periodic {
        #[arg(long, value_parser = parse_word_or_period)]
        word: TvWord,
    },
    /// Exponents over a level of the half tree, sorted by x.
    Tilde,
    /// Re val of a word, the cycle integral over the hyperbolic length.
    Val {
        #[arg(long, value_parser = parse_word_or_period)]
        word: TvWord,
    },
    /// Running ratios along the path of a number and their limsup estimate.
    Estimate {
        /// `rational:p/q`, `periodic:pre;period`, `quotients:a1,a2,...` or `random:max`.
        #[arg(long)]
        cf: String,
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
    },
    /// Word whose running ratio oscillates around a target.
    Attain {
        #[arg(long)]
        target: f64,
        #[arg(long, default_value_t = modlyap::lyap::DEFAULT_SWITCHES)]
        switches: usize,
        #[arg(long, default_value_t = modlyap::lyap::DEFAULT_A_MAX)]
        a_max: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    S,
    K,
    Direct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Tree {
    Full,
    Half,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Poly,
    Flemmas,
    Bounds,
    Triangle,
    Convexity,
}

fn parse_strict_word(s: &str) -> Result<TvWord, String> {
    let w: TvWord = s.parse().map_err(|e: modlyap::Error| e.to_string())?;
    w.require_strict().map_err(|e| e.to_string())?;
    Ok(w)
}

/// A strict word, or an odd period of positive quotients which is doubled.
fn parse_word_or_period(s: &str) -> Result<TvWord, String> {
    let exps = s
        .split(',')
        .map(|a| a.trim().parse::<u64>().map_err(|e| format!("{a:?}: {e}")))
        .collect::<Result<Vec<u64>, String>>()?;
    modlyap::lyap::period_word(&exps).map_err(|e| e.to_string())
}

fn parse_fraction(s: &str) -> Result<FareyFraction, String> {
    s.parse().map_err(|e: modlyap::Error| e.to_string())
}

fn parse_complex(s: &str) -> Result<num_complex::Complex<f64>, String> {
    s.parse().map_err(|e| format!("{s:?} is not a complex number: {e}"))
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { error::EXIT_USAGE } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> CliResult<()> {
    config::init_threads()?;
    let cfg = cli.global.run_config()?;
    let outcome = commands::dispatch(&cli.command, &cfg)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, &outcome.body)?,
        None => print!("{}", outcome.body),
    }
    match outcome.failure {
        Some(why) => Err(CliError::Verification(why)),
        None => Ok(()),
    }
}
