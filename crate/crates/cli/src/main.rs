//! `soliton`: derive, print and check squared-eigenfunction solitons.

mod commands;
mod setup;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use soliton_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "soliton",
    version,
    about = "Squared-eigenfunction solitons and their curves"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// φ_n coefficients, extended coefficients and both condition forms.
    Derive(Common),
    /// The d solvability conditions in both forms.
    Conditions(Common),
    /// H_n with degree, genus, leading coefficient and gap status.
    Curve(Common),
    /// Reduced conditions: named equations and conserved densities.
    Hierarchy(Common),
    /// Numeric checks on closed-form solutions; exit 4 if any check fails.
    Verify(verify::VerifyArgs),
    /// Canonical JSON bundle of derived objects.
    Export(ExportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Kdv,
    Nls,
    /// Any operator given by --operator over --vars.
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, value_enum, default_value = "kdv")]
    pub model: Model,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub n: i64,
    /// NLS focusing (+1) or defocusing (−1).
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub sigma: i64,
    /// Explicit A_0 instead of the model normalization (e.g. "3/2").
    #[arg(long, allow_hyphen_values = true)]
    pub a0: Option<String>,
    /// Operator for --model custom, e.g. "lambda^2 + u lambda + v".
    #[arg(long, allow_hyphen_values = true)]
    pub operator: Option<String>,
    /// Base variables for --model custom.
    #[arg(long, value_delimiter = ',')]
    pub vars: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct ExportArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Largest n exported for each family.
    #[arg(long, default_value_t = 3)]
    pub max_n: usize,
}

/// A failure with its exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Core(Error),
    /// Reports are still printed.
    ChecksFailed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Core(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotExact { .. } | Error::ReductionDiverged { .. } => 2,
        Error::Structural(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            eprintln!(
                "{}",
                msg.lines().next().unwrap_or("error: invalid arguments")
            );
            return ExitCode::from(1);
        }
    };
    let result = match &cli.cmd {
        Cmd::Derive(c) => commands::derive(c),
        Cmd::Conditions(c) => commands::conditions(c),
        Cmd::Curve(c) => commands::curve(c),
        Cmd::Hierarchy(c) => commands::hierarchy(c),
        Cmd::Verify(v) => verify::run(v),
        Cmd::Export(x) => commands::export(x),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::ChecksFailed(out)) => {
            print!("{out}");
            ExitCode::from(4)
        }
    }
}
