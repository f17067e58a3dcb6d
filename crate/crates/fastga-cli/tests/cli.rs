//! End-to-end checks of the command-line surface: exit codes, file outputs,
//! and the exact CSV headers.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fastga"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fastga-cli-{}-{}", name, std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const RUN_HEADER: &str =
    "algorithm,problem,n,run,seed,evaluations,iterations,best_fitness,hit_optimum,wall_ms";
const SUMMARY_HEADER: &str =
    "algorithm,problem,n,runs,mean_evals_per_n,std_evals_per_n,mean_iterations";

#[test]
fn run_writes_records_and_summary() {
    let dir = scratch("run");
    let out = dir.join("records.csv");
    let output = bin()
        .args([
            "run",
            "--algorithm",
            "rls",
            "--problem",
            "onemax",
            "--n",
            "64,128",
            "--runs",
            "3",
            "--seed",
            "5",
            "--out",
        ])
        .arg(&out)
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");

    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.starts_with(SUMMARY_HEADER));
    assert_eq!(stdout.lines().count(), 3, "one summary row per size");

    let records = std::fs::read_to_string(&out).unwrap();
    assert!(records.starts_with(RUN_HEADER));
    assert_eq!(records.lines().count(), 1 + 6);
    let summary = std::fs::read_to_string(dir.join("records.summary.csv")).unwrap();
    assert_eq!(summary, stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn run_is_reproducible_in_the_summary() {
    let dir = scratch("repro");
    let args = |out: &PathBuf| {
        vec![
            "run".into(),
            "--algorithm".into(),
            "ollga-fast".into(),
            "--beta".into(),
            "2.5".into(),
            "--u".into(),
            "n".into(),
            "--problem".into(),
            "maxsat".into(),
            "--n".into(),
            "32".into(),
            "--runs".into(),
            "4".into(),
            "--seed".into(),
            "11".into(),
            "--out".into(),
            out.display().to_string(),
        ]
    };
    let out_a = dir.join("a.csv");
    let out_b = dir.join("b.csv");
    assert!(bin().args(args(&out_a)).output().unwrap().status.success());
    assert!(bin().args(args(&out_b)).output().unwrap().status.success());
    let summary_a = std::fs::read_to_string(dir.join("a.summary.csv")).unwrap();
    let summary_b = std::fs::read_to_string(dir.join("b.summary.csv")).unwrap();
    assert_eq!(summary_a, summary_b);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn sweep_runs_each_entry() {
    let dir = scratch("sweep");
    let out = dir.join("batch.csv");
    let config = dir.join("sweep.json");
    std::fs::write(
        &config,
        format!(
            r#"[{{"algorithm": "opo-ea", "problem": "onemax", "n": [32], "runs": 2, "seed": 3, "out": "{}"}}]"#,
            out.display()
        ),
    )
    .unwrap();
    let output = bin()
        .args(["sweep", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(output.status.success(), "{output:?}");
    assert!(out.exists());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bounds_prints_the_linear_regime_and_leading_constant() {
    let output = bin()
        .args([
            "bounds", "--beta", "2.5", "--u", "500000", "--n", "1000000", "--d", "100",
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(stdout.contains("E[T_I] = O(n)"), "{stdout}");
    assert!(stdout.contains("E[T_F] = O(n)"), "{stdout}");
    assert!(stdout.contains("8200"), "{stdout}");
    assert!(stdout.contains("p_d"), "{stdout}");

    let csv = bin()
        .args(["bounds", "--beta", "3.5", "--u", "10", "--n", "1000000", "--csv"])
        .output()
        .unwrap();
    let stdout = String::from_utf8(csv.stdout).unwrap();
    assert!(stdout.starts_with("quantity,expression,regime,value"));
    assert!(stdout.contains("O(n*ln(n))"), "{stdout}");
}

#[test]
fn probe_reports_certain_progress_from_the_all_wrong_string() {
    let output = bin()
        .args([
            "probe", "--n", "64", "--d", "64", "--trials", "2000", "--lambda", "1", "--seed", "2",
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert!(
        stdout.contains("progress probability = 1.000000"),
        "{stdout}"
    );
}

#[test]
fn config_errors_exit_nonzero() {
    let bad_algorithm = bin()
        .args([
            "run",
            "--algorithm",
            "simulated-annealing",
            "--problem",
            "onemax",
            "--n",
            "32",
            "--out",
            "/tmp/never-written.csv",
        ])
        .output()
        .unwrap();
    assert!(!bad_algorithm.status.success());

    let bad_u = bin()
        .args([
            "run",
            "--algorithm",
            "ollga-fast",
            "--u",
            "1000",
            "--problem",
            "onemax",
            "--n",
            "32",
            "--out",
            "/tmp/never-written.csv",
        ])
        .output()
        .unwrap();
    assert!(!bad_u.status.success(), "u > n must be a config error");

    let missing = bin().args(["sweep", "--config", "/nonexistent.json"]).output().unwrap();
    assert!(!missing.status.success());
}
