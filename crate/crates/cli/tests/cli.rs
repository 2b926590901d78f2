//! End-to-end tests of the `vi` binary: exit codes, file contracts,
//! determinism, and spec-file handling.

use assert_cmd::Command;
use predicates::prelude::*;
use tempfile::tempdir;

fn vi() -> Command {
    Command::cargo_bin("vi").unwrap()
}

#[test]
fn solve_converges_with_exit_zero_and_csv_contract() {
    let dir = tempdir().unwrap();
    let csv_path = dir.path().join("traj.csv");
    let report_path = dir.path().join("report.json");
    vi().args([
        "solve",
        "--problem",
        "example31",
        "--algorithm",
        "F",
        "--variant",
        "2",
        "--out",
        csv_path.to_str().unwrap(),
        "--report",
        report_path.to_str().unwrap(),
    ])
    .assert()
    .success()
    .stdout(predicate::str::contains("iterations"));

    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "k,x_1,x_2,residual,alpha,beta,norm_u,norm_vbar,dist_to_solution"
    );
    let last = csv.lines().last().unwrap();
    let cols: Vec<&str> = last.split(',').collect();
    assert_eq!(cols.len(), 9);
    // converged: final distance column below 1e-4
    let dist: f64 = cols[8].parse().unwrap();
    assert!(dist <= 1e-4, "final distance {dist}");

    // report/trajectory consistency: final_x equals the last CSV row
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["termination"], "FixedPoint");
    let fx = report["final_x"].as_array().unwrap();
    assert_eq!(fx[0].as_f64().unwrap(), cols[1].parse::<f64>().unwrap());
    assert_eq!(fx[1].as_f64().unwrap(), cols[2].parse::<f64>().unwrap());
}

#[test]
fn identical_specs_produce_byte_identical_csvs() {
    let dir = tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        vi().args([
            "solve",
            "--algorithm",
            "B",
            "--variant",
            "3",
            "--normal-u",
            "unit",
            "--normal-v",
            "unit",
            "--out",
            path.to_str().unwrap(),
        ])
        .assert()
        .success();
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn max_iters_zero_gives_single_row_and_exit_two() {
    let dir = tempdir().unwrap();
    let csv_path = dir.path().join("traj.csv");
    vi().args([
        "solve",
        "--algorithm",
        "cond-ext",
        "--max-iters",
        "0",
        "--out",
        csv_path.to_str().unwrap(),
    ])
    .assert()
    .code(2)
    .stdout(predicate::str::contains("MaxIters"));
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv.lines().count(), 2, "header plus exactly one data row");
    assert!(csv.lines().nth(1).unwrap().starts_with("0,"));
}

#[test]
fn constant_step_beta_bound_rejected_with_exit_one() {
    vi().args(["solve", "--algorithm", "cond-ext", "--beta", "0.4"])
        .assert()
        .code(1)
        .stderr(predicate::str::contains("beta"));
}

#[test]
fn bad_inputs_exit_one() {
    vi().args(["solve", "--algorithm", "warp-drive"])
        .assert()
        .code(1)
        .stderr(predicate::str::contains("unknown algorithm"));
    vi().args(["solve", "--algorithm", "F", "--x0", "1,abc"])
        .assert()
        .code(1)
        .stderr(predicate::str::contains("bad vector component"));
    vi().args(["solve", "--algorithm", "F", "--normal-u", "sideways"])
        .assert()
        .code(1)
        .stderr(predicate::str::contains("unknown normal strategy"));
    // infeasible start rejected unless projection is requested
    vi().args(["solve", "--algorithm", "F", "--x0", "5,5"])
        .assert()
        .code(1)
        .stderr(predicate::str::contains("project_start"));
    vi().args([
        "solve",
        "--algorithm",
        "F",
        "--variant",
        "3",
        "--x0",
        "5,5",
        "--project-start",
    ])
    .assert()
    .success();
}

#[test]
fn spec_file_with_flag_overrides() {
    let dir = tempdir().unwrap();
    let spec_path = dir.path().join("run.toml");
    std::fs::write(
        &spec_path,
        "problem = \"example31\"\nalgorithm = \"F\"\nvariant = 1\nmax_iters = 3\n",
    )
    .unwrap();
    // file alone: 3 iterations is not enough → exit 2
    vi().args(["solve", "--problem", spec_path.to_str().unwrap()])
        .assert()
        .code(2);
    // flag overrides the file's budget and variant → converges
    vi().args([
        "solve",
        "--problem",
        spec_path.to_str().unwrap(),
        "--variant",
        "3",
        "--max-iters",
        "10000",
    ])
    .assert()
    .success();
}

#[test]
fn inline_problem_spec_round_trip() {
    let dir = tempdir().unwrap();
    let spec_path = dir.path().join("inline.toml");
    std::fs::write(
        &spec_path,
        r#"
algorithm = "F"
variant = 2

[problem]
name = "mirror"
set = { kind = "quarter-disc" }
solution = [-0.9354790880787474, 0.3533625559162491]

[problem.operator]
matrix = [[-1.0, -1.0], [1.0, -1.0]]
shift = [1.5, 0.5]
lipschitz = 2.0
"#,
    )
    .unwrap();
    vi().args(["solve", "--problem", spec_path.to_str().unwrap()])
        .assert()
        .success()
        .stdout(predicate::str::contains("distance to solution"));
}

#[test]
fn compare_tabulates_runs_and_writes_table() {
    let dir = tempdir().unwrap();
    let spec_path = dir.path().join("compare.toml");
    let table_path = dir.path().join("table.csv");
    std::fs::write(
        &spec_path,
        r#"
[[runs]]
algorithm = "cond-ext"
label = "constant-zero"

[[runs]]
algorithm = "cond-ext"
normal_u = "unit"
normal_v = "unit"
label = "constant-unit"
"#,
    )
    .unwrap();
    vi().args([
        "compare",
        "--spec",
        spec_path.to_str().unwrap(),
        "--table",
        table_path.to_str().unwrap(),
    ])
    .assert()
    .success()
    .stdout(predicate::str::contains("constant-zero"))
    .stdout(predicate::str::contains("constant-unit"));
    let table = std::fs::read_to_string(&table_path).unwrap();
    assert!(table.starts_with(
        "label,termination,iterations,final_residual,final_distance,wall_time_ms"
    ));
    assert_eq!(table.lines().count(), 3);
}

#[test]
fn compare_rejects_underfilled_specs() {
    let dir = tempdir().unwrap();
    let spec_path = dir.path().join("one.toml");
    std::fs::write(&spec_path, "[[runs]]\nalgorithm = \"F\"\n").unwrap();
    vi().args(["compare", "--spec", spec_path.to_str().unwrap()])
        .assert()
        .code(1)
        .stderr(predicate::str::contains("at least two"));
}

#[test]
fn figures_writes_experiment_set_with_normal_advantage() {
    let dir = tempdir().unwrap();
    vi().args(["figures", "--out-dir", dir.path().to_str().unwrap()])
        .assert()
        .success();
    let five = std::fs::read_to_string(dir.path().join("five_iterations.csv")).unwrap();
    let mut rows = 0;
    for line in five.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let zero: f64 = cols[1].parse().unwrap();
        let unit: f64 = cols[2].parse().unwrap();
        assert!(unit < zero, "{}: unit {unit} !< zero {zero}", cols[0]);
        rows += 1;
    }
    assert_eq!(rows, 7, "one row per algorithm/variant pair");
    let convergence = std::fs::read_to_string(dir.path().join("convergence.csv")).unwrap();
    assert_eq!(convergence.lines().count(), 15, "header plus 14 runs");
    // one 5-iteration trajectory CSV per run
    assert!(dir.path().join("five_F_2_unit.csv").exists());
    assert!(dir.path().join("five_cond-ext_zero.csv").exists());
}
