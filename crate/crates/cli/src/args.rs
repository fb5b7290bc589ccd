//! Command-line surface. All option flags are shared across commands;
//! each command validates that the flags it does not consume are absent,
//! so a misdirected flag fails loudly instead of being ignored.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

use crate::CliError;

#[derive(Parser)]
#[command(name = "liectl", version, about = "Controllability, Cartan decompositions, \
and sub-Riemannian geodesics on matrix Lie groups", max_term_width = 80)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Input file; repeat for commands taking two (system first, then
    /// law or target)
    #[arg(long, global = true)]
    pub input: Vec<PathBuf>,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// RNG seed (default 42; env LIECTL_SEED applies when absent)
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Success tolerance (decompose residual gate, mintime target error)
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Worker threads for the mintime shooting search
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Decomposition family for decompose
    #[arg(long, global = true, value_enum)]
    pub family: Option<FamilyArg>,

    /// Final time for geodesic sampling
    #[arg(long, global = true)]
    pub horizon: Option<f64>,

    /// Simulation budget for the mintime search
    #[arg(long, global = true)]
    pub budget: Option<usize>,
}

#[derive(Subcommand, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Rank-condition controllability report for a control system
    Analyze,
    /// KAK factorization of a unitary matrix
    Decompose,
    /// Sample a k+p geodesic to CSV
    Geodesic,
    /// Integrate a piecewise-constant law to a CSV trajectory
    Simulate,
    /// Estimate the minimum time to reach a target propagator
    Mintime,
    /// Cross-check the published closed forms against computed oracles
    VerifyPaper,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Decompose => "decompose",
            Command::Geodesic => "geodesic",
            Command::Simulate => "simulate",
            Command::Mintime => "mintime",
            Command::VerifyPaper => "verify-paper",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
pub enum FamilyArg {
    Su2,
    Sun,
    #[value(name = "so_n1")]
    SoN1,
}

/// Seed precedence: --seed, then LIECTL_SEED, then 42. A set but
/// unparseable LIECTL_SEED is an error rather than a silent fallback.
pub fn resolve_seed(explicit: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var("LIECTL_SEED") {
        Ok(text) => text.parse().map_err(|_| {
            CliError::Schema(format!("LIECTL_SEED must be an unsigned integer, got {text:?}"))
        }),
        Err(_) => Ok(42),
    }
}

/// Rejects option flags the command does not consume. `allowed` names
/// the consumable flags; anything else that was set is an error so that
/// metadata only ever lists tolerances that were actually in effect.
pub fn reject_unused_flags(cli: &Cli, allowed: &[&str]) -> Result<(), CliError> {
    let set: [(&str, bool); 5] = [
        ("--tol", cli.tol.is_some()),
        ("--workers", cli.workers.is_some()),
        ("--family", cli.family.is_some()),
        ("--horizon", cli.horizon.is_some()),
        ("--budget", cli.budget.is_some()),
    ];
    for (name, present) in set {
        if present && !allowed.contains(&name) {
            return Err(CliError::Schema(format!(
                "{name} is not used by {}",
                cli.command.name()
            )));
        }
    }
    Ok(())
}

/// Exactly `expected` input paths, in the documented order.
pub fn require_inputs(cli: &Cli, expected: usize, order: &str) -> Result<(), CliError> {
    if cli.input.len() != expected {
        return Err(CliError::Schema(format!(
            "{} takes {expected} --input file(s) ({order}), got {}",
            cli.command.name(),
            cli.input.len()
        )));
    }
    Ok(())
}
