use std::path::Path;
use std::process::{Command, Output};

use lsbm::harness::{SUMMARY_CSV_HEADER, TRIALS_CSV_HEADER};

fn lsbm(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lsbm")).args(args).current_dir(dir).output().unwrap()
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = lsbm(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines().find_map(|l| l.strip_prefix(&format!("{key}="))).unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn tau_of_unlabeled_model() {
    let dir = tempfile::tempdir().unwrap();
    let out = ok(dir.path(), &["tau", "--params", "a=4,b=1"]);
    assert_eq!(field(&out, "tau").parse::<f64>().unwrap(), 0.9);
}

#[test]
fn generated_graph_round_trips_through_reconstruct() {
    let dir = tempfile::tempdir().unwrap();
    let model = ["--params", "a=10,b=1", "--epsilon", "0.45"];
    ok(dir.path(), &[&["gen", "--n", "600", "--seed", "11", "--out", "big.txt"][..], &model].concat());
    ok(dir.path(), &[&["gen", "--n", "60", "--seed", "11", "--out", "small.txt"][..], &model].concat());
    assert!(dir.path().join("big.txt.sigma").exists());
    for (method, graph) in [("spectral", "big.txt"), ("sdp", "small.txt")] {
        let out = ok(dir.path(), &[&["reconstruct", graph, "--method", method, "--out", "hat.sigma"][..], &model].concat());
        let q: f64 = field(&out, "overlap").parse().unwrap();
        assert!(q > 0.3, "{method}: overlap {q}");
        assert!(dir.path().join("hat.sigma").exists());
    }
}

#[test]
fn sweep_writes_expected_files() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["sweep", "--n", "150", "--trials", "2", "--grid", "0.1,0.4", "--out", "s"]);
    let s = dir.path().join("s");
    for f in ["config.txt", "trials.csv", "summary.csv", "meta.txt", "curve.dat", "curve.svg"] {
        assert!(s.join(f).exists(), "{f} missing");
    }
    let trials = std::fs::read_to_string(s.join("trials.csv")).unwrap();
    assert_eq!(trials.lines().next().unwrap(), TRIALS_CSV_HEADER);
    assert_eq!(trials.lines().count(), 5);
    let summary = std::fs::read_to_string(s.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().next().unwrap(), SUMMARY_CSV_HEADER);
    let config = std::fs::read_to_string(s.join("config.txt")).unwrap();
    std::fs::write(dir.path().join("again.cfg"), config).unwrap();
    ok(dir.path(), &["sweep", "--config", "again.cfg", "--out", "t"]);
    assert_eq!(
        std::fs::read(s.join("trials.csv")).unwrap(),
        std::fs::read(dir.path().join("t/trials.csv")).unwrap()
    );
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["tree-sim", "--params", "a=3,b=3", "--epsilon", "0.3", "--depth", "5", "--trials", "50", "--seed", "4"];
    let one = Command::new(env!("CARGO_BIN_EXE_lsbm")).args(args).env("LSBM_THREADS", "1").output().unwrap();
    let three = Command::new(env!("CARGO_BIN_EXE_lsbm")).args(args).env("LSBM_THREADS", "3").output().unwrap();
    assert!(one.status.success() && three.status.success());
    assert_eq!(one.stdout, three.stdout);
    assert_eq!(one.stdout, lsbm(dir.path(), &args).stdout);
}

#[test]
fn failures_exit_nonzero_with_error_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let cases: [&[&str]; 5] = [
        &["reconstruct", "missing.txt", "--params", "a=3,b=1"],
        &["tau", "--params", "a=3"],
        &["tau", "--params", "a=3,b=1", "--labels", "x,y", "--mu", "0.5,0.6", "--nu", "0.5,0.5"],
        &["gen", "--params", "a=30,b=1", "--n", "10", "--out", "g.txt"],
        &["sweep", "--preset", "nope"],
    ];
    for args in cases {
        let out = lsbm(dir.path(), args);
        assert!(!out.status.success(), "{args:?} succeeded");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.starts_with("error: "), "{args:?}: {err}");
    }
    let out = Command::new(env!("CARGO_BIN_EXE_lsbm"))
        .args(["tree-sim", "--params", "a=1,b=1", "--depth", "2", "--trials", "2"])
        .env("LSBM_THREADS", "zero")
        .output()
        .unwrap();
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error: "));
}
