use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dualcore::cli::{self, Command, OutputFormat, RunConfig};

/// Core imputations of cooperative packing games as exact optimal duals.
#[derive(Parser)]
#[command(name = "dualcore", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Game, graph or matroid JSON document.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Imputation JSON document (verify-core).
    #[arg(long, global = true)]
    imputation: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Size bound for exhaustive checks; defaults depend on the command.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    bound: Option<u64>,

    /// Sampled imputations per audit.
    #[arg(long, global = true, default_value_t = 50)]
    trials: usize,

    /// Seed of the audit's ChaCha8 generator.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Add elapsed milliseconds to the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Solve the game's LP and print the dual optimum as an imputation.
    Solve,
    /// Check an imputation against every coalition.
    VerifyCore,
    /// Compare core membership with dual optimality on sampled imputations.
    Audit,
    /// Decide perfection and look for odd holes and antiholes.
    CheckPerfect,
    /// Check the matroid axioms exhaustively.
    CheckMatroid,
    /// Search for an integral optimal dual.
    TdiWitness,
}

#[derive(ValueEnum, Clone, Copy)]
enum Format {
    Json,
    Text,
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let Some(input) = args.input else {
        eprintln!("error[malformed-input]: --input is required");
        return ExitCode::from(cli::EXIT_INPUT as u8);
    };
    let command = match args.command {
        Cmd::Solve => Command::Solve,
        Cmd::VerifyCore => Command::VerifyCore,
        Cmd::Audit => Command::Audit,
        Cmd::CheckPerfect => Command::CheckPerfect,
        Cmd::CheckMatroid => Command::CheckMatroid,
        Cmd::TdiWitness => Command::TdiWitness,
    };
    let format = match args.format {
        Format::Json => OutputFormat::Json,
        Format::Text => OutputFormat::Text,
    };
    let config = RunConfig {
        command,
        input_path: input,
        imputation_path: args.imputation,
        output_format: format,
        size_bound: args.bound.map(|b| b as usize),
        trials: args.trials,
        seed: args.seed,
        timing: args.timing,
    };
    let outcome = cli::run(&config);
    if let Some(report) = &outcome.report {
        let _ = std::io::stdout().write_all(cli::render(report, format).as_bytes());
    }
    if let Some(msg) = &outcome.diagnostic {
        eprintln!("{msg}");
    }
    ExitCode::from(outcome.exit_code as u8)
}
