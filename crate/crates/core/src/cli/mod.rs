//! Command-line front end.
//!
//! ```text
//! geophase run --config <path> [--report <path>] [--samples <path>] [--seed <int>]
//! geophase validate --config <path>
//! geophase --version
//! ```
//!
//! Exit status: 0 on success, 1 on a computational error (its category goes
//! to stderr), 2 on a configuration or usage error. Without a report path the
//! report is printed to stdout.

pub mod config;
pub mod output;
pub mod tasks;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use config::{load_config, parse_config, ConfigError, RunConfig, Task};
pub use output::{format_float, samples_csv, Report};
pub use tasks::{run_task, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "geophase",
    version,
    about = "Geometric and Pancharatnam phases of finite-dimensional quantum systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the task described by a config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides `output.report_path`.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Overrides `output.samples_path`.
        #[arg(long)]
        samples: Option<PathBuf>,
        /// Overrides `seed`.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Load and validate a config file without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

/// Parse `args` (program name first) and execute; returns the exit status.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match cli.command {
        Command::Validate { config } => match load_config(&config) {
            Ok(cfg) => {
                println!("ok: {} (dimension {})", cfg.task.as_str(), cfg.dimension);
                EXIT_OK
            }
            Err(e) => {
                eprintln!("config error: {e}");
                EXIT_CONFIG
            }
        },
        Command::Run {
            config,
            report,
            samples,
            seed,
        } => {
            let mut cfg = match load_config(&config) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("config error: {e}");
                    return EXIT_CONFIG;
                }
            };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let resolve = |p: &Option<PathBuf>| p.as_ref().map(|p| cfg.base_dir.join(p));
            let report_path = report.or_else(|| resolve(&cfg.output.report_path));
            let samples_path = samples.or_else(|| resolve(&cfg.output.samples_path));
            execute(&cfg, report_path.as_deref(), samples_path.as_deref())
        }
    }
}

fn fail(category: &str, message: impl std::fmt::Display) -> i32 {
    eprintln!("error[{category}]: {message}");
    EXIT_COMPUTE
}

/// Run a validated config and write its outputs.
pub fn execute(cfg: &RunConfig, report_path: Option<&Path>, samples_path: Option<&Path>) -> i32 {
    let outcome = match run_task(cfg) {
        Ok(o) => o,
        Err(e) => return fail(e.category(), e),
    };
    let json = match outcome.report.to_json() {
        Ok(j) => j,
        Err(e) => return fail(e.category(), e),
    };
    // render everything before touching the filesystem
    let csv = match (samples_path, &outcome.samples) {
        (Some(_), Some(traj)) => match samples_csv(traj) {
            Ok(c) => Some(c),
            Err(e) => return fail(e.category(), e),
        },
        _ => None,
    };
    if let (Some(path), Some(csv)) = (samples_path, csv) {
        if let Err(e) = std::fs::write(path, csv) {
            return fail("io", format!("{}: {e}", path.display()));
        }
    }
    match report_path {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                return fail("io", format!("{}: {e}", path.display()));
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = out.write_all(json.as_bytes()) {
                return fail("io", e);
            }
        }
    }
    EXIT_OK
}
