//! End-to-end tests of the binary: exit codes, flag handling, output
//! determinism, and file formats.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_liectl"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout_of(out)).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.display().to_string()
}

const SYS_XY: &str = r#"{
  "n": 2,
  "convention": "anti_hermitian",
  "controls": [
    {"n": 2, "re": [[0.0, 0.5], [-0.5, 0.0]]},
    {"n": 2, "re": [[0.0, 0.0], [0.0, 0.0]], "im": [[0.0, 0.5], [0.5, 0.0]]}
  ],
  "bound": 1.0
}"#;

const SYS_DRIFTED: &str = r#"{
  "n": 2,
  "convention": "anti_hermitian",
  "drift": {"n": 2, "re": [[0.0, 0.0], [0.0, 0.0]], "im": [[0.5, 0.0], [0.0, -0.5]]},
  "controls": [{"n": 2, "re": [[0.0, 0.5], [-0.5, 0.0]]}],
  "bound": 1.0
}"#;

const EYE2: &str = r#"{"n": 2, "re": [[1.0, 0.0], [0.0, 1.0]]}"#;

#[test]
fn analyze_reports_rank_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let sys = write(dir.path(), "sys.json", SYS_XY);
    let out = run(&["analyze", "--input", &sys]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["ambient_dim"], 3);
    assert_eq!(v["control_algebra_dim"], 3);
    assert_eq!(v["driftless_controllable"], true);
    assert_eq!(v["drift_needed"], false);
    // The distribution lists the raw control span; the closure lives in
    // full_distribution_basis.
    assert_eq!(v["control_distribution_basis"].as_array().unwrap().len(), 2);
    assert_eq!(v["full_distribution_basis"].as_array().unwrap().len(), 3);
    assert_eq!(v["meta"]["command"], "analyze");
    assert_eq!(v["meta"]["seed"], 42);
    assert_eq!(v["meta"]["inputs"][0]["sha256"].as_str().unwrap().len(), 64);

    let drifted = write(dir.path(), "drifted.json", SYS_DRIFTED);
    let v = json_of(&run(&["analyze", "--input", &drifted]));
    assert_eq!(v["driftless_controllable"], false);
    assert_eq!(v["controllable_with_drift"], true);
    assert_eq!(v["drift_needed"], true);
    assert_eq!(v["full_distribution_basis"].as_array().unwrap().len(), 3);
}

#[test]
fn schema_problems_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(
        dir.path(),
        "empty.json",
        r#"{"n": 2, "convention": "anti_hermitian", "controls": [], "bound": 1.0}"#,
    );
    let out = run(&["analyze", "--input", &empty]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("controls"));

    let garbled = write(dir.path(), "garbled.json", "{ not json");
    assert_eq!(run(&["analyze", "--input", &garbled]).status.code(), Some(2));

    let missing = dir.path().join("absent.json").display().to_string();
    let out = run(&["analyze", "--input", &missing]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("absent.json"));

    // No input at all, and one input too many.
    assert_eq!(run(&["analyze"]).status.code(), Some(2));
    let sys = write(dir.path(), "sys.json", SYS_XY);
    let out = run(&["analyze", "--input", &sys, "--input", &sys]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invariant_problems_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let symmetric = write(
        dir.path(),
        "sym.json",
        r#"{"n": 2, "convention": "anti_hermitian",
            "controls": [{"n": 2, "re": [[0.0, 0.5], [0.5, 0.0]]}], "bound": 1.0}"#,
    );
    let out = run(&["analyze", "--input", &symmetric]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).contains("anti-Hermitian"));
}

#[test]
fn decompose_identity_gives_zero_angles() {
    let dir = tempfile::tempdir().unwrap();
    let eye = write(dir.path(), "eye.json", EYE2);
    let out = run(&["decompose", "--input", &eye, "--family", "su2"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["angles"], serde_json::json!([0.0, 0.0, 0.0]));
    assert_eq!(v["pass"], true);
    assert!(v["residual"].as_f64().unwrap() < 1e-14);
}

#[test]
fn decompose_exit_codes_cover_all_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let eye = write(dir.path(), "eye.json", EYE2);

    // Missing family selector.
    let out = run(&["decompose", "--input", &eye]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("--family"));

    // Unsupported family.
    let out = run(&["decompose", "--input", &eye, "--family", "so_n1"]);
    assert_eq!(out.status.code(), Some(2));

    // Non-unitary input.
    let stretched = write(dir.path(), "bad.json", r#"{"n": 2, "re": [[2.0, 0.0], [0.0, 1.0]]}"#);
    let out = run(&["decompose", "--input", &stretched, "--family", "su2"]);
    assert_eq!(out.status.code(), Some(3));

    // Clean run that misses an absurdly tight residual gate.
    let rot = write(
        dir.path(),
        "rot.json",
        r#"{"n": 2, "re": [[0.995004165278026, 0.0998334166468282],
                           [-0.0998334166468282, 0.995004165278026]]}"#,
    );
    let out = run(&["decompose", "--input", &rot, "--family", "su2", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["pass"], false);
}

#[test]
fn decompose_handles_su3_rotations() {
    // A block rotation embedded in SU(3); the rebuilt product must sit
    // within the default gate.
    let dir = tempfile::tempdir().unwrap();
    let u3 = write(
        dir.path(),
        "u3.json",
        r#"{"n": 3, "re": [[0.8775825618903728, 0.479425538604203, 0.0],
                           [-0.479425538604203, 0.8775825618903728, 0.0],
                           [0.0, 0.0, 1.0]]}"#,
    );
    let out = run(&["decompose", "--input", &u3, "--family", "sun"]);
    assert!(out.status.success(), "{}", stderr_of(&out));
    let v = json_of(&out);
    assert!(v["residual"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["angles"].as_array().unwrap().len(), 3);
}

#[test]
fn geodesic_emits_csv_with_metadata_line() {
    let dir = tempfile::tempdir().unwrap();
    let geo = write(dir.path(), "geo.json", r#"{"family": "su2", "theta": 0.8, "c": 0.5}"#);
    let out = run(&["geodesic", "--input", &geo, "--horizon", "3.0"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let mut lines = text.lines();
    let meta = lines.next().unwrap();
    assert!(meta.starts_with("# liectl "));
    assert!(meta.contains("command=geodesic"));
    assert!(meta.contains("input_sha256="));
    assert_eq!(
        lines.next().unwrap(),
        "t,re_00,im_00,re_01,im_01,re_10,im_10,re_11,im_11"
    );
    assert_eq!(text.lines().count(), 403);
    let last = text.lines().last().unwrap();
    assert!(last.starts_with('3') && last.contains(','));

    // Horizon is mandatory.
    let out = run(&["geodesic", "--input", &geo]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("--horizon"));
}

#[test]
fn simulate_runs_a_law_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let sys = write(dir.path(), "sys.json", SYS_XY);
    let law = write(
        dir.path(),
        "law.json",
        r#"{"breakpoints": [0.0, 1.0, 2.0], "values": [[0.3, -0.2], [0.5, 0.1]]}"#,
    );
    let a = run(&["simulate", "--input", &sys, "--input", &law]);
    let b = run(&["simulate", "--input", &sys, "--input", &law]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout_of(&a);
    assert!(text.lines().next().unwrap().contains("command=simulate"));

    // A law exceeding the amplitude bound is an invariant violation.
    let hot = write(
        dir.path(),
        "hot.json",
        r#"{"breakpoints": [0.0, 1.0], "values": [[3.0, 0.0]]}"#,
    );
    let out = run(&["simulate", "--input", &sys, "--input", &hot]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn mintime_reports_and_respects_the_budget() {
    let dir = tempfile::tempdir().unwrap();
    let sys = write(dir.path(), "sys.json", SYS_XY);
    let target = write(
        dir.path(),
        "target.json",
        r#"{"n": 2, "re": [[0.8775825618903728, 0.479425538604203],
                           [-0.479425538604203, 0.8775825618903728]]}"#,
    );
    let args = [
        "mintime", "--input", &sys, "--input", &target,
        "--budget", "1500", "--tol", "0.05", "--seed", "5",
    ];
    let a = run(&args);
    assert!(a.status.success(), "{}", stderr_of(&a));
    let v = json_of(&a);
    assert!(v["simulations"].as_u64().unwrap() <= 1500);
    assert!(v["t_est"].as_f64().unwrap() > 0.0);
    assert_eq!(v["meta"]["seed"], 5);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unconsumed_flags_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let sys = write(dir.path(), "sys.json", SYS_XY);
    for (args, flag) in [
        (vec!["analyze", "--input", &sys, "--budget", "5"], "--budget"),
        (vec!["analyze", "--input", &sys, "--tol", "1e-9"], "--tol"),
        (vec!["analyze", "--input", &sys, "--workers", "2"], "--workers"),
        (vec!["simulate", "--input", &sys, "--input", &sys, "--horizon", "1"], "--horizon"),
        (vec!["verify-paper", "--family", "su2"], "--family"),
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(stderr_of(&out).contains(flag), "{args:?}: {}", stderr_of(&out));
    }
}

#[test]
fn seed_precedence_is_flag_env_default() {
    let dir = tempfile::tempdir().unwrap();
    let sys = write(dir.path(), "sys.json", SYS_XY);
    let out = bin()
        .args(["analyze", "--input", &sys])
        .env_remove("LIECTL_SEED")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["meta"]["seed"], 42);

    let out = bin()
        .args(["analyze", "--input", &sys])
        .env("LIECTL_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["meta"]["seed"], 7);

    let out = bin()
        .args(["analyze", "--input", &sys, "--seed", "9"])
        .env("LIECTL_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["meta"]["seed"], 9);

    let out = bin()
        .args(["analyze", "--input", &sys])
        .env("LIECTL_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_paper_flags_known_deviations_and_exits_zero() {
    let out = run(&["verify-paper"]);
    assert!(out.status.success());
    let v = json_of(&out);
    let sections = v["sections"].as_array().unwrap();
    let by_name = |name: &str| {
        sections
            .iter()
            .find(|s| s["name"] == name)
            .unwrap_or_else(|| panic!("section {name} missing"))
    };

    assert_eq!(by_name("pauli_commutation_table")["verdict"], "match");
    assert_eq!(by_name("su2_cartan_pair")["verdict"], "match");
    assert_eq!(by_name("kostant_majorization")["verdict"], "match");

    let ng = by_name("group_commutator_expansion");
    assert_eq!(ng["verdict"], "transcription-deviation");
    let rows = ng["rows"].as_array().unwrap();
    assert_eq!(rows[0]["verdict"], "match");
    assert_eq!(rows[2]["verdict"], "transcription-deviation");
    // The omitted identity term is the whole gap: |I| = sqrt(2).
    let gap = rows[2]["max_deviation"].as_f64().unwrap();
    assert!((gap - 2.0f64.sqrt()).abs() < 0.05, "gap {gap}");

    let geo = by_name("su2_geodesic_coordinates");
    let rows = geo["rows"].as_array().unwrap();
    assert_eq!(rows[0]["verdict"], "transcription-deviation");
    assert!(rows[0]["max_deviation"].as_f64().unwrap() > 0.1);
    for row in &rows[1..] {
        assert_eq!(row["verdict"], "match", "{row}");
    }

    let reuse = by_name("so21_geodesic_reuse");
    assert_eq!(reuse["verdict"], "transcription-deviation");
    let bounded = reuse["rows"].as_array().unwrap().last().unwrap().clone();
    assert!(bounded["max_deviation"].as_f64().unwrap() > 1.0);

    // Inputs are refused.
    let dir = tempfile::tempdir().unwrap();
    let sys = write(dir.path(), "sys.json", SYS_XY);
    assert_eq!(run(&["verify-paper", "--input", &sys]).status.code(), Some(2));
}

#[test]
fn output_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let sys = write(dir.path(), "sys.json", SYS_XY);
    let path = dir.path().join("report.json");
    let piped = run(&["analyze", "--input", &sys]);
    let to_file = run(&[
        "analyze", "--input", &sys,
        "--output", &path.display().to_string(),
    ]);
    assert!(to_file.status.success());
    assert!(to_file.stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, piped.stdout);
}
