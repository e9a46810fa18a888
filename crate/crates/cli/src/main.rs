//! `rotexp`: exponentials, logarithms, and decompositions of small
//! rotations from the command line.
//!
//! Matrices come in and go out as JSON documents; see `docs.rs` for the
//! schema. Exit codes: 0 success, 1 invalid input, 2 internal numerical
//! failure.

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use rotexp_cli::commands;
use rotexp_cli::docs::{self, parse_matrix_document, read_input, write_output, CliError};

#[derive(Parser)]
#[command(
    name = "rotexp",
    version,
    about = "Closed-form exponential and logarithm maps for rotations in dimensions 3, 4, 5"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct IoArgs {
    /// Input path, or - for stdin
    #[arg(short = 'i', long = "input", default_value = "-")]
    input: String,
    /// Output path, or - for stdout
    #[arg(short = 'o', long = "output", default_value = "-")]
    output: String,
    /// Validation tolerance for the input matrix
    #[arg(long, default_value_t = rotexp::VALIDATION_TOL)]
    tol: f64,
}

#[derive(Args)]
struct BenchArgs {
    /// Dimension to benchmark (3, 4, or 5)
    #[arg(long)]
    dim: usize,
    /// Number of random trials
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Seed for the input corpus
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output path, or - for stdout
    #[arg(short = 'o', long = "output", default_value = "-")]
    output: String,
}

#[derive(Subcommand)]
enum Command {
    /// Exponential of an antisymmetric generator
    Exp(IoArgs),
    /// Logarithm of a rotation, with branch classification
    Log(IoArgs),
    /// Orthogonal decomposition of a 4x4 or 5x5 antisymmetric generator
    Decompose(IoArgs),
    /// Report validity residuals and matrix kinds
    Check(IoArgs),
    /// Time the closed-form exponential against the series oracle
    Bench(BenchArgs),
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Exp(args) => run_matrix_command(&args, commands::cmd_exp),
        Command::Log(args) => run_matrix_command(&args, commands::cmd_log),
        Command::Decompose(args) => run_matrix_command(&args, commands::cmd_decompose),
        Command::Check(args) => run_matrix_command(&args, commands::cmd_check),
        Command::Bench(args) => {
            let result = commands::cmd_bench(args.dim, args.trials, args.seed)?;
            write_output(&args.output, &result)
        }
    }
}

fn run_matrix_command(
    args: &IoArgs,
    command: fn(&docs::MatrixDocument, f64) -> Result<docs::ResultDocument, CliError>,
) -> Result<(), CliError> {
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(CliError::InvalidInput(format!(
            "--tol must be positive and finite, got {}",
            args.tol
        )));
    }
    let text = read_input(&args.input)?;
    let doc = parse_matrix_document(&text)?;
    let result = command(&doc, args.tol)?;
    write_output(&args.output, &result)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err)
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) =>
        {
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            // argument problems are invalid input, exit 1
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
