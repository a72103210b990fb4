//! The `zamen` command line.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 usage or input
//! error.

pub mod cache;
mod commands;
pub mod manifest;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;

pub use commands::{am_row, AmRow, CheckRow, AMCONST_CSV_HEADER, AMCONST_CSV_VERSION};

#[derive(Parser, Debug)]
#[command(name = "zamen", version, about = "Amenability constants of centres of finite group algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Write the result here instead of stdout (a run manifest goes next to it).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Emit JSON instead of text/CSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for batch commands.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Character-table cache directory.
    #[arg(long, global = true, env = cache::CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Residual tolerance for table certification and diagonal checks
    /// (for `hypergroup run`, overrides the quadrature tolerance).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Largest group order any constructor may build.
    #[arg(long, global = true)]
    pub max_order: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite group commands.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Amenability constant of one group spec or of the fixture zoo.
    Amconst(AmArgs),
    /// Quadrature experiments on class hypergroups.
    Hypergroup {
        #[command(subcommand)]
        cmd: HypergroupCmd,
    },
    /// Exact verifications.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Order, classes, centre size and abelian flag.
    Info { spec: PathBuf },
    /// Character table JSON (cached by content hash).
    Chartable {
        spec: PathBuf,
        /// Print only the canonical value matrix (column and row order fixed
        /// by values, entries on a 1e-9 grid).
        #[arg(long)]
        canonical: bool,
    },
    /// Same as the top-level `amconst`.
    Amconst(AmArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct AmArgs {
    pub spec: Option<PathBuf>,
    /// Run every shipped fixture plus product, quotient and growth checks.
    #[arg(long)]
    pub zoo: bool,
}

#[derive(Subcommand, Debug)]
pub enum HypergroupCmd {
    /// Run an experiment spec and emit a results CSV.
    Run { spec: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Check μ̂(π×ρ) = δ on all pairs from {1, σ, π_1..π_N}.
    Tz2 {
        #[arg(long, default_value_t = 20)]
        n: u32,
        #[arg(long, hide = true)]
        mutate: bool,
    },
}

/// Outcome of a command that ran to completion.
pub(crate) struct Report {
    pub output: Vec<u8>,
    pub passed: bool,
    pub manifest: manifest::RunManifest,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NumericDegeneracy { .. } => 1,
        _ => 2,
    }
}

/// Parses `args`, runs the command, and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    // Diagnostics are buffered so the command can run inside a thread pool.
    let mut diag: Vec<u8> = Vec::new();
    let result = match cli.global.jobs {
        Some(0) => {
            let _ = writeln!(stderr, "error: --jobs must be at least 1");
            return 2;
        }
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| commands::dispatch(&cli, &mut diag)),
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
        },
        None => commands::dispatch(&cli, &mut diag),
    };
    let _ = stderr.write_all(&diag);
    match result {
        Ok(report) => {
            let written = match &cli.global.out {
                Some(path) => std::fs::write(path, &report.output)
                    .map_err(Error::from)
                    .and_then(|_| report.manifest.write(&manifest_path(path))),
                None => stdout.write_all(&report.output).map_err(Error::from),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            if report.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// `results.csv` → `results.csv.manifest.json`.
pub fn manifest_path(out: &std::path::Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    out.with_file_name(name)
}
