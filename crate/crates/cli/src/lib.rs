//! Command-line front end: matrix files, solver runs, benchmark tables and
//! the pentagon check.

pub mod commands;
pub mod matrix_file;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{cmd_bench, cmd_pentagon, cmd_solve, BenchArgs, PentagonArgs, SolveArgs};
pub use matrix_file::{read_matrix, write_matrix, MatrixFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NO_CONVERGENCE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error(transparent)]
    Solver(#[from] dqeig::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Eddcam,
    Dcama,
    Dcam,
    Adcam,
    Pm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchChoice {
    Aitken,
    Laplacian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PentagonAlgorithm {
    Eddcam,
    Pm,
}

#[derive(Debug, Parser)]
#[command(
    name = "dqeig",
    version,
    about = "Eigenpairs of dual quaternion Hermitian matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the eigenvalue problem for a matrix file.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum)]
        alg: Algorithm,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 5000)]
        max_iter: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the result document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a benchmark and write its summary table as CSV.
    Bench {
        #[arg(value_enum)]
        kind: BenchChoice,
        #[arg(long, value_delimiter = ',', default_value = "10")]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.3,0.4,0.5,0.6")]
        sparsities: Vec<f64>,
        /// Trials per cell [default: 100 for aitken, 10 for laplacian].
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Stopping tolerance [default: 1e-6 for aitken, 1e-10 for laplacian].
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = commands::BENCH_MAX_ITER)]
        max_iter: usize,
        #[arg(long)]
        csv: PathBuf,
    },
    /// Solve the five-agent pentagon formation and compare with the known spectrum.
    Pentagon {
        #[arg(long, value_enum, default_value = "eddcam")]
        alg: PentagonAlgorithm,
        #[arg(long)]
        json: bool,
    },
}

/// Parses `args` and runs one command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let out = match cli.command {
        Command::Solve {
            file,
            alg,
            tol,
            max_iter,
            seed,
            out,
        } => cmd_solve(&SolveArgs {
            file,
            alg,
            tol,
            max_iter,
            seed,
            out,
        }),
        Command::Bench {
            kind,
            sizes,
            sparsities,
            trials,
            seed,
            tol,
            max_iter,
            csv,
        } => commands::threads_from_env().and_then(|threads| {
            cmd_bench(&BenchArgs {
                kind,
                sizes,
                sparsities,
                trials,
                seed,
                tol,
                max_iter,
                csv,
                threads,
            })
        }),
        Command::Pentagon { alg, json } => cmd_pentagon(&PentagonArgs { alg, json }),
    };
    match out {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}
