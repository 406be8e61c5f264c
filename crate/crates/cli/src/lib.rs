//! `sectoria` command-line front end.
//!
//! Exit codes: 0 success or the check holds, 1 usage or parse error,
//! 2 failed precondition, 3 the check is violated.

pub mod checks;
pub mod error;
pub mod io;
pub mod suites;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sectoria_core::claim2;
use sectoria_core::generators::{self, TrialConfig};
use sectoria_core::inequalities::DEFAULT_TOL;
use sectoria_core::{sector, SectorAngle};

use checks::{CheckName, CheckOptions, Operands};
use error::{CliError, CliResult, EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE, EXIT_VIOLATED};

/// Overrides the default tolerance; `--tol` overrides this.
pub const TOL_ENV: &str = "SECTORIA_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "sectoria",
    version,
    about = "Sectorial matrix inequalities: checks, suites, numerical ranges"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sector angle and angle vector of a matrix whose real part is positive definite.
    Angle { file: PathBuf },
    /// Run one check on matrix files (or a sequence file for claim2).
    Check {
        name: CheckName,
        file_a: PathBuf,
        file_b: Option<PathBuf>,
        /// Sector half-angle in radians; defaults to the operands' own angle.
        #[arg(long)]
        alpha: Option<f64>,
        /// Block split index p (det-step: the step k; all steps when absent).
        #[arg(long)]
        partition: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run a check over seeded random operands and summarize the slacks.
    Trials {
        name: CheckName,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        partition: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Sample the boundary of the numerical range.
    Boundary {
        file: PathBuf,
        #[arg(long, default_value_t = 360)]
        points: usize,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a seeded random matrix file.
    Generate {
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    PositiveDefinite,
    Sectorial,
    AccretiveDissipative,
}

#[derive(Serialize)]
struct AngleOutput {
    alpha: f64,
    alpha_degrees: f64,
    thetas: Vec<f64>,
}

fn resolve_tol(flag: Option<f64>) -> CliResult<f64> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_ENV) {
            Ok(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|e| CliError::usage(format!("{TOL_ENV}={s}: {e}")))?,
            Err(_) => DEFAULT_TOL,
        },
    };
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(CliError::usage(format!(
            "tolerance must be finite and >= 0, got {tol}"
        )));
    }
    Ok(tol)
}

fn print_json<T: Serialize>(value: &T) -> CliResult<()> {
    let json = serde_json::to_string_pretty(value).map_err(|e| CliError::usage(e.to_string()))?;
    match writeln!(std::io::stdout().lock(), "{json}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::usage(e.to_string())),
        _ => Ok(()),
    }
}

fn cmd_angle(file: &Path) -> CliResult<i32> {
    let a = io::read_matrix(file)?;
    let d = sector::sectorial_decompose(&a)?;
    let alpha = sector::sector_angle(&a)?;
    print_json(&AngleOutput {
        alpha: alpha.radians(),
        alpha_degrees: alpha.degrees(),
        thetas: d.thetas,
    })?;
    Ok(EXIT_OK)
}

fn cmd_check(
    name: CheckName,
    file_a: &Path,
    file_b: Option<&Path>,
    opts: CheckOptions,
) -> CliResult<i32> {
    let report = if name.operands() == Operands::Sequences {
        if file_b.is_some() {
            return Err(CliError::usage("claim2 takes one sequence file"));
        }
        claim2::check_claim2(&io::read_sequences(file_a)?, opts.tol)
    } else {
        let a = io::read_matrix(file_a)?;
        let b = file_b.map(io::read_matrix).transpose()?;
        checks::check_matrices(name, &a, b.as_ref(), &opts)?
    };
    print_json(&report)?;
    Ok(if report.holds { EXIT_OK } else { EXIT_VIOLATED })
}

fn cmd_boundary(file: &Path, points: usize, out: Option<&Path>) -> CliResult<i32> {
    let a = io::read_matrix(file)?;
    let boundary = sector::numerical_range_boundary(&a, points)?;
    match out {
        Some(path) => {
            let f = std::fs::File::create(path)
                .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
            io::write_boundary_csv(f, &boundary)?;
        }
        None => io::write_boundary_csv(std::io::stdout().lock(), &boundary)?,
    }
    Ok(EXIT_OK)
}

fn cmd_generate(
    family: Family,
    n: usize,
    alpha: f64,
    seed: u64,
    out: Option<&Path>,
) -> CliResult<i32> {
    if n == 0 {
        return Err(CliError::usage("n must be at least 1"));
    }
    let a = match family {
        Family::PositiveDefinite => generators::gen_positive_definite(n, seed),
        Family::Sectorial => generators::gen_sectorial(n, alpha, seed)?,
        Family::AccretiveDissipative => generators::gen_accretive_dissipative(n, seed),
    };
    match out {
        Some(path) => io::write_matrix(path, &a)?,
        None => print_json(&io::MatrixFile::from_matrix(&a)?)?,
    }
    Ok(EXIT_OK)
}

fn angle_flag(alpha: Option<f64>) -> CliResult<Option<SectorAngle>> {
    Ok(alpha.map(SectorAngle::new).transpose()?)
}

pub fn execute(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::Angle { file } => cmd_angle(&file),
        Command::Check {
            name,
            file_a,
            file_b,
            alpha,
            partition,
            tol,
        } => {
            let opts = CheckOptions {
                alpha: angle_flag(alpha)?,
                partition,
                tol: resolve_tol(tol)?,
            };
            cmd_check(name, &file_a, file_b.as_deref(), opts)
        }
        Command::Trials {
            name,
            seed,
            n,
            alpha,
            trials,
            partition,
            tol,
        } => {
            let cfg = TrialConfig {
                seed,
                n,
                alpha,
                trials,
                partition,
            };
            let summary = suites::run_suite(name, &cfg, resolve_tol(tol)?)?;
            print_json(&summary)?;
            let missed = summary.failures > 0 || summary.counterexample_found == Some(false);
            Ok(if summary.succeeded() {
                EXIT_OK
            } else if missed {
                EXIT_VIOLATED
            } else {
                EXIT_PRECONDITION
            })
        }
        Command::Boundary { file, points, out } => cmd_boundary(&file, points, out.as_deref()),
        Command::Generate {
            family,
            n,
            alpha,
            seed,
            out,
        } => cmd_generate(family, n, alpha, seed, out.as_deref()),
    }
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            e.exit_code()
        }
    }
}
