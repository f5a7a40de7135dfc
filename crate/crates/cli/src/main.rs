mod check;
mod construct;
mod inputs;
mod manifest;
mod search;
mod table;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

pub const PASS: u8 = 0;
pub const USAGE: u8 = 2;
pub const VERDICT: u8 = 3;
pub const BUDGET: u8 = 4;

#[derive(Parser)]
#[command(
    name = "grstar",
    version,
    about = "Star-critical Gallai-Ramsey colorings: build, verify, search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an explicit coloring and write its certificate.
    Construct(construct::Args),
    /// Check a coloring or certificate file.
    Verify(verify::Args),
    /// Compute a Ramsey-type number by exhaustive search.
    Search(search::Args),
    /// Recompute a table of known values.
    Table(table::Args),
    /// Run the randomized consistency checks.
    Check(check::Args),
}

/// Exit status for a failed run: budget exhaustion and failed verdicts have
/// their own codes, everything else is a usage error.
fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<grstar_core::Error>() {
        Some(grstar_core::Error::BudgetExceeded { .. }) => BUDGET,
        Some(grstar_core::Error::VerdictFailed(_)) => VERDICT,
        _ => USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(a) => construct::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Search(a) => search::run(a),
        Command::Table(a) => table::run(a),
        Command::Check(a) => check::run(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
