use std::path::Path;
use std::process::{Command, Output};

use cvsteer::{Criterion, CriterionResult, HierarchyReport, StateId};
use serde::Deserialize;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvsteer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[derive(Debug, PartialEq, Deserialize, serde::Serialize)]
struct EvalOutput {
    state: StateId,
    theta: f64,
    results: Vec<CriterionResult>,
}

#[test]
fn eval_chsh_at_quarter_pi() {
    let o = run(&[
        "eval",
        "--state",
        "psi",
        "--theta",
        "0.7854",
        "--criteria",
        "chsh",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out: EvalOutput = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(out.results.len(), 1);
    assert!((out.results[0].value - 2.828427).abs() < 1e-6);
}

#[test]
fn eval_product_point_is_on_the_bound() {
    let o = run(&["eval", "--state", "psi", "--theta", "0", "--criteria", "reid,entropic"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "state,criterion,theta,value,bound,violated,flagged");
    assert_eq!(lines[1], "psi,reid,0,0,0,false,false");
    assert_eq!(lines[2], "psi,entropic,0,0,0,false,false");
}

#[test]
fn eval_json_round_trips() {
    let o = run(&[
        "eval",
        "--state",
        "psi-prime",
        "--theta",
        "1.2",
        "--criteria",
        "chsh,entropic,reid",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let parsed: EvalOutput = serde_json::from_str(&text).unwrap();
    let again: EvalOutput = serde_json::from_str(&serde_json::to_string(&parsed).unwrap()).unwrap();
    assert_eq!(parsed, again);
    let order: Vec<Criterion> = parsed.results.iter().map(|r| r.criterion).collect();
    assert_eq!(order, vec![Criterion::Reid, Criterion::Entropic, Criterion::Chsh]);
    assert!((parsed.results[1].value - 0.12847472384111702).abs() < 1e-9);
}

#[test]
fn theta_out_of_range_is_a_config_error() {
    let o = run(&["eval", "--theta", "4.0"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("theta"));
}

#[test]
fn missing_theta_and_bad_flags_are_config_errors() {
    assert_eq!(code(&run(&["eval"])), 2);
    assert_eq!(code(&run(&["sweep", "--steps", "1"])), 2);
    assert_eq!(code(&run(&["sweep", "--criteria", "bogus"])), 2);
    assert_eq!(code(&run(&["sweep", "--state", "phi"])), 2);
    assert_eq!(code(&run(&["report", "--format", "csv"])), 2);
}

#[test]
fn help_documents_exit_codes() {
    let text = stdout(&run(&["--help"]));
    for line in [
        "0  success",
        "2  invalid configuration",
        "3  quadrature",
        "4  output",
        "5  a requested",
    ] {
        assert!(text.contains(line), "missing '{line}'");
    }
}

#[test]
fn two_step_sweep_has_two_rows() {
    let o = run(&["sweep", "--steps", "2", "--criteria", "entropic,chsh"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "theta,i_ent,i_chsh\n0,0,2\n3.141592654,0,2\n");
}

#[test]
fn sweep_matches_golden_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = run(&[
        "sweep",
        "--state",
        "psi",
        "--criteria",
        "reid,chsh,entropic",
        "--steps",
        "7",
        "-o",
        path_arg(&out),
    ]);
    assert_eq!(code(&o), 0);
    let golden = include_str!("golden/sweep_psi_7.csv");
    assert_eq!(std::fs::read_to_string(&out).unwrap(), golden);
}

#[test]
fn sweep_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for p in [&a, &b] {
        let o = run(&["sweep", "--state", "psi-prime", "--steps", "31", "-o", path_arg(p)]);
        assert_eq!(code(&o), 0);
    }
    let (a, b) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(a, b);
    assert!(!a.contains(&b'\r'));
}

#[test]
fn unwritable_output_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("x.csv");
    assert_eq!(code(&run(&["sweep", "--steps", "3", "-o", path_arg(&out)])), 4);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# small run\nstate = psi-prime\ncriteria = chsh\nsteps = 5\n").unwrap();
    let o = run(&["sweep", "--config", path_arg(&cfg), "--steps", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "theta,i_chsh\n0,2\n1.570796327,2\n3.141592654,2\n");

    std::fs::write(&cfg, "steps = 5\nwidth = 3\n").unwrap();
    let o = run(&["sweep", "--config", path_arg(&cfg)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("width"));
}

#[test]
fn critical_angles_of_psi_reid() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("crit.csv");
    let o = run(&["critical", "--state", "psi", "--criteria", "reid", "-o", path_arg(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let summary = stdout(&o);
    assert!(
        summary.contains("0.5980  crossing") && summary.contains("2.5436  crossing"),
        "{summary}"
    );
    let file = std::fs::read_to_string(&out).unwrap();
    let crossings: Vec<f64> = file
        .lines()
        .skip(1)
        .filter(|l| l.ends_with(",crossing"))
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(crossings.len(), 2);
    assert!((crossings[0] - 0.5980).abs() < 5e-4 && (crossings[1] - 2.5436).abs() < 5e-4);
}

#[derive(Deserialize)]
struct CriticalOutput {
    critical_angles: Vec<cvsteer::CriticalAngle>,
    no_root: Vec<Criterion>,
}

#[test]
fn critical_angles_of_psi_prime_entropic() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("crit.json");
    let o = run(&[
        "critical",
        "--state",
        "psi-prime",
        "--criteria",
        "entropic",
        "--format",
        "json",
        "-o",
        path_arg(&out),
    ]);
    assert_eq!(code(&o), 0);
    let parsed: CriticalOutput = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let crossings: Vec<f64> = parsed
        .critical_angles
        .iter()
        .filter(|r| r.kind == cvsteer::RootKind::Crossing)
        .map(|r| r.angle)
        .collect();
    assert!(parsed.no_root.is_empty());
    assert_eq!(crossings.len(), 2);
    assert!((crossings[0] - 0.6669).abs() < 5e-4 && (crossings[1] - 2.4746).abs() < 5e-4);
    let windows = parsed.critical_angles.windows(2);
    assert!(windows.clone().all(|w| w[0].angle <= w[1].angle));
}

#[test]
fn chsh_has_no_critical_angle() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("crit.csv");
    let o = run(&["critical", "--state", "psi", "--criteria", "chsh", "-o", path_arg(&out)]);
    assert_eq!(code(&o), 5);
    assert!(stderr(&o).contains("chsh"));
}

#[test]
fn reports_show_incomplete_criteria() {
    for state in ["psi", "psi-prime"] {
        let o = run(&["report", "--state", state]);
        assert_eq!(code(&o), 0);
        let text = stdout(&o);
        let r: HierarchyReport = serde_json::from_str(&text).unwrap();
        assert!(r.criteria_incomplete);
        assert!(!r.undetected_steering.is_empty());
        let again: HierarchyReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(r, again);
    }
}
