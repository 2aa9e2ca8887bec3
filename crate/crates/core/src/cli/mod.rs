//! Command-line front end: problem files, instance generators and the
//! `check`, `solve`, `gen` and `bench` commands.
//!
//! Exit codes: 0 when a solution exists (or was computed), 2 when the
//! problem provably has no optimal solution, 1 for usage and input errors.

pub mod commands;
pub mod format;
pub mod generate;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use commands::{CheckMethod, Family, OutputFormat, SolveMethod};
pub use format::{ProblemFile, RecordStatus, ResultRecord, CSV_HEADER};

#[derive(Debug, Parser)]
#[command(name = "polydc", version, about = "Exact existence tests and solvers for polyhedral d.c. problems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether an optimal solution exists.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = CheckMethod::Both)]
        method: CheckMethod,
    },
    /// Compute an optimal solution or a certificate that none exists.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SolveMethod::Primal)]
        method: SolveMethod,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        output: OutputFormat,
    },
    /// Write a problem file of one of the built-in families.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Columns of G (ex1).
        #[arg(long, default_value_t = 1)]
        mg: usize,
        /// Columns of H (ex1).
        #[arg(long, default_value_t = 1)]
        mh: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a range of instances and write per-phase timings as CSV.
    Bench {
        #[arg(value_enum)]
        family: Family,
        /// Inclusive range such as `2..5`.
        #[arg(long)]
        sizes: String,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "primal,dual")]
        methods: Vec<SolveMethod>,
        #[arg(long, default_value_t = 3)]
        mg: usize,
        #[arg(long, default_value_t = 2)]
        mh: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

pub fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<i32> {
    match cli.command {
        Command::Check { file, method } => commands::cmd_check(&file, method, out),
        Command::Solve { file, method, output } => commands::cmd_solve(&file, method, output, out),
        Command::Gen {
            family,
            n,
            mg,
            mh,
            out: path,
        } => {
            let file = commands::generate(family, n, mg, mh)?;
            commands::cmd_gen(&file, path.as_deref(), out)
        }
        Command::Bench {
            family,
            sizes,
            methods,
            mg,
            mh,
            out: path,
        } => commands::cmd_bench(family, &sizes, &methods, mg, mh, &path, out),
    }
}

/// Parse arguments, run, and map every failure to exit code 1.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 1;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match run(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}
