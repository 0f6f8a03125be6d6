//! File formats and subcommands behind the `ssr` binary.

pub mod bench;
pub mod commands;
pub mod files;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use ssr_core::rational;

use crate::commands::{OracleOptions, SolveOptions};
use crate::files::{InputError, Instance, SolutionFile, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ssr",
    version,
    about = "Approximate and exact solvers for subset sum ratio problems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Approximate an instance within a factor (1 + epsilon).
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "1/10")]
        epsilon: String,
        /// Write the solution here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Include the per-pivot log.
        #[arg(long)]
        trace: bool,
        /// Evaluate pivots in parallel (same output).
        #[arg(long)]
        parallel: bool,
        /// Record wall time in the stats block.
        #[arg(long)]
        timing: bool,
    },
    /// Exact optimum by exhaustive search.
    Oracle {
        instance: PathBuf,
        /// Only solutions whose smaller set maximum equals the weight of this
        /// element (1..=n first sides, n+1..=2n second sides).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = ssr_core::oracle::DEFAULT_LIMIT)]
        max_n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Seeded random sweep, one CSV row per run.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "4,6,8")]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1/2")]
        epsilons: Vec<String>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        max_weight: u64,
        /// Compute the exact optimum up to this many pairs.
        #[arg(long, default_value_t = 10)]
        oracle_max_n: usize,
        /// Leave wall_time_ms empty so the report is reproducible.
        #[arg(long)]
        no_timing: bool,
        /// Write the report here instead of standard output.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Validate a solution file against its instance.
    Check {
        instance: PathBuf,
        solution: PathBuf,
    },
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), InputError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| InputError(format!("cannot write {}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| InputError(format!("cannot write output: {e}"))),
    }
}

fn finish(
    file: &SolutionFile,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, InputError> {
    emit(&file.to_json(), path, out)?;
    Ok(if file.status == Status::Infeasible {
        EXIT_INFEASIBLE
    } else {
        EXIT_OK
    })
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, InputError> {
    match command {
        Command::Solve {
            instance,
            epsilon,
            output,
            trace,
            parallel,
            timing,
        } => {
            let instance = Instance::load(&instance)?;
            let mut opts = SolveOptions::new(rational::parse(&epsilon)?);
            opts.trace = trace;
            opts.parallel = parallel;
            opts.timing = timing;
            finish(&commands::solve(&instance, &opts)?, output.as_deref(), out)
        }
        Command::Oracle {
            instance,
            m,
            max_n,
            output,
        } => {
            let instance = Instance::load(&instance)?;
            let file = commands::oracle(&instance, &OracleOptions { pivot: m, max_n })?;
            finish(&file, output.as_deref(), out)
        }
        Command::Bench {
            sizes,
            epsilons,
            trials,
            seed,
            max_weight,
            oracle_max_n,
            no_timing,
            csv,
        } => {
            let cfg = bench::BenchConfig {
                sizes,
                epsilons: epsilons
                    .iter()
                    .map(|e| rational::parse(e))
                    .collect::<Result<_, _>>()?,
                trials,
                seed,
                max_weight,
                oracle_max_n,
                timing: !no_timing,
            };
            let rows = bench::run(&cfg)?;
            let mut buf = Vec::new();
            bench::write_csv(&rows, &mut buf)
                .map_err(|e| InputError(format!("cannot write report: {e}")))?;
            emit(
                &String::from_utf8(buf).expect("csv is utf-8"),
                csv.as_deref(),
                out,
            )?;
            Ok(EXIT_OK)
        }
        Command::Check { instance, solution } => {
            let instance = Instance::load(&instance)?;
            let file = SolutionFile::load(&solution)?;
            let summary = commands::check(&instance, &file)?;
            emit(&format!("{summary}\n"), None, out)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
