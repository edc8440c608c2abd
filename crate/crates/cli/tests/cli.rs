use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_schatten-lab"));
    c.env_remove("SCHATTEN_LAB_SEED");
    c
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_real(dir: &Path, file: &str, rows: usize, cols: usize, entries: &[f64]) -> PathBuf {
    let e: Vec<String> = entries.iter().map(|x| format!("[{x}, 0]")).collect();
    let path = dir.join(file);
    std::fs::write(
        &path,
        format!(
            "{{\"rows\": {rows}, \"cols\": {cols}, \"entries\": [{}]}}",
            e.join(", ")
        ),
    )
    .unwrap();
    path
}

fn setup() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    write_real(dir.path(), "I.json", 2, 2, &[1.0, 0.0, 0.0, 1.0]);
    write_real(dir.path(), "traceless.json", 2, 2, &[0.5, 0.0, 0.0, -0.5]);
    write_real(dir.path(), "diag10.json", 2, 2, &[1.0, 0.0, 0.0, 0.0]);
    write_real(dir.path(), "diag01.json", 2, 2, &[0.0, 0.0, 0.0, 1.0]);
    write_real(dir.path(), "offdiag.json", 2, 2, &[0.0, 1.0, 0.0, 0.0]);
    dir
}

#[test]
fn identity_orthogonal_to_traceless() {
    let d = setup();
    let o = run(
        &["check", "bj", "--p", "2", "I.json", "traceless.json"],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("verdict: holds"));
    for p in ["1", "1.5", "3", "inf"] {
        let o = run(
            &["check", "bj", "--p", p, "I.json", "traceless.json"],
            d.path(),
        );
        assert_eq!(o.status.code(), Some(0), "p = {p}");
    }
}

#[test]
fn trace_norm_parallel_reports_achieved_three() {
    let d = setup();
    let o = run(
        &[
            "check",
            "parallel",
            "--norm",
            "schatten",
            "--p",
            "1",
            "diag10.json",
            "I.json",
        ],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("achieved: 3.000000000000"),
        "{}",
        stdout(&o)
    );
    let o = run(
        &["check", "parallel", "--p", "2", "diag10.json", "I.json"],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn supports_exit_codes() {
    let d = setup();
    let o = run(&["check", "supports", "diag10.json", "I.json"], d.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("not disjoint"));
    let o = run(
        &["check", "supports", "diag10.json", "diag01.json"],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn isosceles_and_sip() {
    let d = setup();
    // disjoint positive pair: isosceles in every p
    let o = run(
        &[
            "check",
            "isosceles",
            "--p",
            "1.5",
            "diag10.json",
            "diag01.json",
        ],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let o = run(
        &["check", "isosceles", "--p", "1", "diag10.json", "I.json"],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    let o = run(
        &[
            "check",
            "sip",
            "--p",
            "3",
            "I.json",
            "traceless.json",
            "--json",
        ],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], true);
    let o = run(
        &[
            "check",
            "sip",
            "--norm",
            "induced",
            "I.json",
            "traceless.json",
        ],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn one_sided_supports_distinguished() {
    // A = e1e1*, B = e1e2*: A*B ≠ 0 but AB* = 0
    let d = setup();
    let o = run(
        &["check", "supports", "diag10.json", "offdiag.json"],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("‖AB*‖: 0.000000000e0 (zero)"), "{out}");
    assert!(out.contains("‖A*B‖: 1.000000000e0 (nonzero)"), "{out}");
}

#[test]
fn malformed_files_exit_two_with_position() {
    let d = setup();
    std::fs::write(
        d.path().join("bad.json"),
        "{\"rows\": 2,\n \"cols\": 2,\n \"entries\": [[1, 0] [0, 0]]}",
    )
    .unwrap();
    let o = run(&["check", "bj", "bad.json", "I.json"], d.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.json:3:"), "{}", stderr(&o));

    write_real(d.path(), "short.json", 2, 2, &[1.0, 2.0, 3.0]);
    let o = run(&["check", "bj", "short.json", "I.json"], d.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("expected 4"));

    write_real(d.path(), "wide.json", 2, 3, &[0.0; 6]);
    let o = run(&["check", "bj", "wide.json", "I.json"], d.path());
    assert_eq!(o.status.code(), Some(2));

    let o = run(&["check", "bj", "missing.json", "I.json"], d.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["check", "bj", "--p", "-1", "I.json", "I.json"], d.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(
        &[
            "check", "parallel", "--norm", "induced", "--p", "3", "I.json", "I.json",
        ],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_runs_and_is_reproducible() {
    let d = setup();
    let args = [
        "verify", "S1", "S6", "--seed", "42", "--trials", "30", "--dim", "3", "--json", "reports",
    ];
    let a = run(&args, d.path());
    assert_eq!(a.status.code(), Some(0), "{}{}", stdout(&a), stderr(&a));
    let first = std::fs::read_to_string(d.path().join("reports/S1.json")).unwrap();
    let b = run(&args, d.path());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(
        first,
        std::fs::read_to_string(d.path().join("reports/S1.json")).unwrap()
    );
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["passes"], 30);
    assert_eq!(v["config"]["seed"], 42);
}

#[test]
fn verify_seed_from_environment() {
    let d = setup();
    let o = bin()
        .args(["verify", "S6", "--trials", "4"])
        .env("SCHATTEN_LAB_SEED", "77")
        .current_dir(d.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("seed=77"));
}

#[test]
fn verify_rejects_bad_input() {
    let d = setup();
    for args in [
        &["verify", "S99"][..],
        &["verify", "S1", "--dim", "9"],
        &["verify", "S1", "--kind", "nilpotent"],
        &["verify", "S1", "S2", "--replay", "0"],
        &["verify", "S1", "--trials", "5", "--replay", "5"],
    ] {
        let o = run(args, d.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn replay_prints_checks() {
    let d = setup();
    let o = run(
        &[
            "verify", "S2", "--seed", "3", "--trials", "10", "--replay", "4",
        ],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("trial 4 [psd_disjoint]"), "{out}");
    assert!(out.contains("ok "));
}

#[test]
fn fixtures_list_run_and_corruption() {
    let d = setup();
    let o = run(&["fixtures"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("7 fixtures"));

    let o = run(&["fixtures", "--run"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("PASS").count(), 7);

    let o = run(&["fixtures", "--export", "reg.json"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(d.path().join("reg.json")).unwrap();
    let mut reg: serde_json::Value = serde_json::from_str(&text).unwrap();
    let o = run(&["fixtures", "--run", "--registry", "reg.json"], d.path());
    assert_eq!(o.status.code(), Some(0));

    // ‖diag(1,0) + I‖₁ = 3, claim 4 instead
    let fixture = reg
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|f| f["name"] == "p1-parallel")
        .unwrap();
    fixture["expectations"][0]["expected"]["value"]["value"] = 4.0.into();
    std::fs::write(d.path().join("bad.json"), reg.to_string()).unwrap();
    let o = run(&["fixtures", "--run", "--registry", "bad.json"], d.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("failing fixtures: p1-parallel"),
        "{}",
        stdout(&o)
    );
}
