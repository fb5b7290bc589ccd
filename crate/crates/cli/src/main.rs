//! liectl: load control systems and geodesic specs, run the analyses,
//! and emit deterministic reports.
//!
//! Exit codes: 0 success, 1 clean run whose result misses the success
//! gate (decompose residual above tolerance), 2 schema or usage errors,
//! 3 violated mathematical invariants (non-unitary input, generators
//! outside the algebra). Identical invocations produce byte-identical
//! output; every report embeds the tool version, the seed, the active
//! tolerances, and a digest of each input file.

mod args;
mod commands;
mod meta;
mod verify;

use clap::Parser;
use std::process::ExitCode;

/// Error classes carrying their exit code.
pub enum CliError {
    /// Unreadable, unparseable, or structurally invalid input; also
    /// flags that the chosen command does not consume. Exit 2.
    Schema(String),
    /// Well-formed input that breaks a mathematical precondition. Exit 3.
    Invariant(String),
}

impl From<liectl_core::io::LoadError> for CliError {
    fn from(e: liectl_core::io::LoadError) -> Self {
        match e {
            liectl_core::io::LoadError::Schema(msg) => CliError::Schema(msg),
            liectl_core::io::LoadError::Invariant(err) => CliError::Invariant(err.to_string()),
        }
    }
}

impl From<liectl_core::CoreError> for CliError {
    fn from(e: liectl_core::CoreError) -> Self {
        CliError::Invariant(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = args::Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(CliError::Schema(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Invariant(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
