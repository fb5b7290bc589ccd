//! One function per command. Each resolves its flags, loads and
//! digests its inputs, runs the core routine, and emits the report.

use std::process::ExitCode;

use liectl_core::cartan::{build_su_n, kak_su2, kak_sun, KakFactors};
use liectl_core::control::{
    controllability_report, min_time_estimate, simulate,
};
use liectl_core::geodesics::geodesic_trajectory;
use liectl_core::io::{
    parse_geodesic, parse_law, parse_matrix, parse_system, trajectory_csv, MatrixLiteral,
};
use liectl_core::lie::lie_closure;
use liectl_core::tol;
use serde::Serialize;

use crate::args::{self, Cli, Command, FamilyArg};
use crate::meta::{emit_json, emit_text, read_input, Meta, NamedTolerance};
use crate::{verify, CliError};

/// Sample count for CSV trajectories; resolution only, not accuracy.
const CSV_STEPS: usize = 400;
/// Default simulation budget for the mintime search.
const DEFAULT_BUDGET: usize = 20_000;
/// Default target error for the mintime search.
const DEFAULT_MINTIME_TOL: f64 = 0.05;

pub fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Analyze => analyze(&cli),
        Command::Decompose => decompose(&cli),
        Command::Geodesic => geodesic(&cli),
        Command::Simulate => simulate_cmd(&cli),
        Command::Mintime => mintime(&cli),
        Command::VerifyPaper => verify::verify_paper(&cli),
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    meta: Meta,
    ambient_dim: usize,
    control_algebra_dim: usize,
    full_algebra_dim: usize,
    driftless_controllable: bool,
    controllable_with_drift: bool,
    drift_needed: bool,
    control_distribution_basis: Vec<MatrixLiteral>,
    full_distribution_basis: Vec<MatrixLiteral>,
}

fn analyze(cli: &Cli) -> Result<ExitCode, CliError> {
    args::reject_unused_flags(cli, &[])?;
    args::require_inputs(cli, 1, "the system description")?;
    let input = read_input(&cli.input[0])?;
    let sys = parse_system(&input.text)?;
    let report = controllability_report(&sys)?;

    // The report keeps the control distribution; the full distribution
    // is recomputed here so both bases can be listed.
    let mut generators = sys.controls().to_vec();
    if !sys.is_driftless() {
        generators.push(sys.drift().clone());
    }
    let full = lie_closure(&generators, report.ambient_dim)?;

    let meta = Meta::new(
        "analyze",
        args::resolve_seed(cli.seed)?,
        1,
        vec![
            NamedTolerance { name: "rank_rel", value: tol::RANK_REL },
            NamedTolerance { name: "generator", value: tol::GENERATOR },
        ],
        vec![input.digest],
    );
    let out = AnalyzeReport {
        meta,
        ambient_dim: report.ambient_dim,
        control_algebra_dim: report.control_algebra_dim,
        full_algebra_dim: report.full_algebra_dim,
        driftless_controllable: report.driftless_controllable,
        controllable_with_drift: report.controllable_with_drift,
        drift_needed: report.drift_needed,
        control_distribution_basis: report
            .control_distribution
            .iter()
            .map(MatrixLiteral::from_matrix)
            .collect(),
        full_distribution_basis: full.basis().iter().map(MatrixLiteral::from_matrix).collect(),
    };
    emit_json(cli.output.as_ref(), &out)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct DecomposeReport {
    meta: Meta,
    family: &'static str,
    angles: Vec<f64>,
    k1: MatrixLiteral,
    a: MatrixLiteral,
    k2: MatrixLiteral,
    residual: f64,
    tolerance: f64,
    pass: bool,
}

fn decompose(cli: &Cli) -> Result<ExitCode, CliError> {
    args::reject_unused_flags(cli, &["--family", "--tol"])?;
    args::require_inputs(cli, 1, "the unitary matrix")?;
    let family = cli.family.ok_or_else(|| {
        CliError::Schema("decompose requires --family su2 or --family sun".into())
    })?;
    let input = read_input(&cli.input[0])?;
    let u = parse_matrix(&input.text)?;

    let (name, default_tol, factors): (&'static str, f64, KakFactors<f64>) = match family {
        FamilyArg::Su2 => ("su2", 1e-10, kak_su2(&u)?),
        FamilyArg::Sun => {
            let pair = build_su_n(u.n())?;
            ("sun", 1e-8, kak_sun(&u, &pair)?)
        }
        FamilyArg::SoN1 => {
            return Err(CliError::Schema(
                "decompose supports --family su2 and sun; so_n1 has no KAK routine here".into(),
            ))
        }
    };
    let tolerance = cli.tol.unwrap_or(default_tol);
    let pass = factors.residual <= tolerance;

    let meta = Meta::new(
        "decompose",
        args::resolve_seed(cli.seed)?,
        1,
        vec![
            NamedTolerance { name: "residual_gate", value: tolerance },
            NamedTolerance { name: "unitary_input", value: tol::UNITARY_INPUT },
        ],
        vec![input.digest],
    );
    let out = DecomposeReport {
        meta,
        family: name,
        angles: factors.angles.clone(),
        k1: MatrixLiteral::from_matrix(&factors.k1),
        a: MatrixLiteral::from_matrix(&factors.a),
        k2: MatrixLiteral::from_matrix(&factors.k2),
        residual: factors.residual,
        tolerance,
        pass,
    };
    emit_json(cli.output.as_ref(), &out)?;
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn geodesic(cli: &Cli) -> Result<ExitCode, CliError> {
    args::reject_unused_flags(cli, &["--horizon"])?;
    args::require_inputs(cli, 1, "the geodesic description")?;
    let horizon = cli.horizon.ok_or_else(|| {
        CliError::Schema("geodesic requires --horizon (a positive final time)".into())
    })?;
    let input = read_input(&cli.input[0])?;
    let spec = parse_geodesic(&input.text)?;
    let traj = geodesic_trajectory(&spec, horizon, CSV_STEPS)?;

    let meta = Meta::new(
        "geodesic",
        args::resolve_seed(cli.seed)?,
        1,
        vec![
            NamedTolerance { name: "generator", value: tol::GENERATOR },
            NamedTolerance { name: "trajectory_member", value: tol::TRAJECTORY_MEMBER },
        ],
        vec![input.digest],
    );
    emit_text(cli.output.as_ref(), &trajectory_csv(&traj, &meta.csv_line()))?;
    Ok(ExitCode::SUCCESS)
}

fn simulate_cmd(cli: &Cli) -> Result<ExitCode, CliError> {
    args::reject_unused_flags(cli, &[])?;
    args::require_inputs(cli, 2, "the system, then the control law")?;
    let sys_input = read_input(&cli.input[0])?;
    let law_input = read_input(&cli.input[1])?;
    let sys = parse_system(&sys_input.text)?;
    let law = parse_law(&law_input.text)?;
    let dt = law.end() / CSV_STEPS as f64;
    let traj = simulate(&sys, &law, dt)?;

    let meta = Meta::new(
        "simulate",
        args::resolve_seed(cli.seed)?,
        1,
        vec![NamedTolerance { name: "generator", value: tol::GENERATOR }],
        vec![sys_input.digest, law_input.digest],
    );
    emit_text(cli.output.as_ref(), &trajectory_csv(&traj, &meta.csv_line()))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct MintimeReport {
    meta: Meta,
    reached: bool,
    t_est: f64,
    achieved_error: f64,
    tolerance: f64,
    simulations: usize,
}

fn mintime(cli: &Cli) -> Result<ExitCode, CliError> {
    args::reject_unused_flags(cli, &["--tol", "--workers", "--budget"])?;
    args::require_inputs(cli, 2, "the system, then the target matrix")?;
    let sys_input = read_input(&cli.input[0])?;
    let target_input = read_input(&cli.input[1])?;
    let sys = parse_system(&sys_input.text)?;
    let target = parse_matrix(&target_input.text)?;

    let eps = cli.tol.unwrap_or(DEFAULT_MINTIME_TOL);
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    let workers = cli.workers.unwrap_or(1);
    let seed = args::resolve_seed(cli.seed)?;
    let result = min_time_estimate(&sys, &target, eps, budget, seed, workers)?;

    let meta = Meta::new(
        "mintime",
        seed,
        workers,
        vec![
            NamedTolerance { name: "target_error", value: eps },
            NamedTolerance { name: "unitary_input", value: tol::UNITARY_INPUT },
        ],
        vec![sys_input.digest, target_input.digest],
    );
    let out = MintimeReport {
        meta,
        reached: result.reached,
        t_est: result.t_est,
        achieved_error: result.achieved_error,
        tolerance: result.tolerance,
        simulations: result.simulations,
    };
    emit_json(cli.output.as_ref(), &out)?;
    Ok(ExitCode::SUCCESS)
}
