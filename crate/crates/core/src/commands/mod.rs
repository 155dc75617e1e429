//! Command-line front end: argument types and the command implementations
//! behind the `qsurgery` binary.

mod format;
mod run;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use format::Format;
pub use run::{dict_verify, execute, DictRow, Report};

use crate::lattice::DEFAULT_BUDGET;

/// Every flag can also be set through an environment variable named
/// `QSURGERY_<FLAG>`, e.g. `QSURGERY_BUDGET`.
#[derive(Debug, Parser)]
#[command(name = "qsurgery", version, about = "Qudit lattice surgery: patches, logical maps and ZX diagrams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Largest state vector, in amplitudes.
    #[arg(long, global = true, env = "QSURGERY_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long, global = true, env = "QSURGERY_TOL", default_value_t = 1e-9)]
    pub tol: f64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, env = "QSURGERY_OUT")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, env = "QSURGERY_FORMAT", value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Patch checks.
    #[command(subcommand)]
    Patch(PatchCommand),
    /// Logical maps of surgery scripts.
    #[command(subcommand)]
    Map(MapCommand),
    /// The surgery/diagram dictionary.
    #[command(subcommand)]
    Dict(DictCommand),
    /// Diagram evaluation and rewriting.
    #[command(subcommand)]
    Zx(ZxCommand),
}

#[derive(Debug, Subcommand)]
pub enum PatchCommand {
    Validate(PatchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PatchArgs {
    #[arg(long, env = "QSURGERY_D")]
    pub d: Option<usize>,
    #[arg(long, env = "QSURGERY_ROWS", default_value_t = 0)]
    pub rows: usize,
    #[arg(long, env = "QSURGERY_COLS", default_value_t = 1)]
    pub cols: usize,
    /// JSON patch description; overrides the grid flags.
    #[arg(long, env = "QSURGERY_PATCH_FILE")]
    pub patch_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RunMode {
    Enumerate,
    Sample,
}

#[derive(Debug, Subcommand)]
pub enum MapCommand {
    Extract(MapArgs),
}

#[derive(Debug, Clone, Args)]
pub struct MapArgs {
    #[arg(long, env = "QSURGERY_SCRIPT")]
    pub script: PathBuf,
    /// Overrides the dimension given in the script.
    #[arg(long, env = "QSURGERY_D")]
    pub d: Option<usize>,
    #[arg(long, env = "QSURGERY_MODE", value_enum, default_value_t = RunMode::Enumerate)]
    pub mode: RunMode,
    /// Required in sample mode.
    #[arg(long, env = "QSURGERY_SEED")]
    pub seed: Option<u64>,
    /// Sample mode: also write the final state for the all-zero input here.
    #[arg(long, env = "QSURGERY_DUMP")]
    pub dump: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum DictCommand {
    Verify {
        #[arg(long, env = "QSURGERY_D", default_value_t = 2)]
        d: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZxCommand {
    /// Print the tensor of a diagram.
    Eval {
        #[arg(long, env = "QSURGERY_DIAGRAM")]
        diagram: PathBuf,
    },
    /// Apply rewrites in order and print the resulting diagram.
    Rewrite {
        #[arg(long, env = "QSURGERY_DIAGRAM")]
        diagram: PathBuf,
        /// A rewrite as JSON, e.g. `{"rule":"spider_fuse","a":0,"b":1}`.
        #[arg(long)]
        rule: Vec<String>,
        /// Finish with a greedy fusion pass of at most this many steps.
        #[arg(long)]
        fuse: Option<usize>,
    },
    /// Compare two diagrams.
    Equal {
        #[arg(long, num_args = 2, required = true)]
        diagram: Vec<PathBuf>,
        /// Require equality including the scalar.
        #[arg(long)]
        exact: bool,
    },
}

/// Parses `args`, runs the command and writes the report. Exit code 0 iff
/// every check passed, 1 on a failed check and 2 on an error.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(report) => {
            if let Err(e) = report.write(cli.common.out.as_deref()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
