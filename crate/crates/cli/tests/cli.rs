use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pade-lab"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn pade_geometric_zero_one() {
    let dir = TempDir::new().unwrap();
    let geo = write(dir.path(), "geo.txt", "0 1\n1 1\n");
    let out = run(&["pade", "--series", s(&geo), "--p", "0", "--q", "1", "--mode", "exact"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("num: 1\n"));
    assert!(text.contains("den: 1 -1\n"));
    assert!(text.contains("contact: true\n"));
}

#[test]
fn pade_linsolve_float_mode() {
    let dir = TempDir::new().unwrap();
    let geo = write(dir.path(), "geo.txt", "0 1\n1 1\n2 1\n");
    let out = run(&["pade", "--series", s(&geo), "--p", "1", "--q", "1", "--mode", "float", "--method", "linsolve"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("mode = float\n"));
}

#[test]
fn pade_outside_dpq_exits_two() {
    let dir = TempDir::new().unwrap();
    let series = write(dir.path(), "onepluszsq.txt", "0 1\n2 1\n");
    let out = run(&["pade", "--series", s(&series), "--p", "1", "--q", "1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not in D_{1,1}"));
}

#[test]
fn missing_file_and_usage_errors_exit_one() {
    assert_eq!(code(&run(&["pade", "--series", "/nonexistent/geo.txt", "--p", "0", "--q", "1"])), 1);
    assert_eq!(code(&run(&["pade", "--p", "0"])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn table_exp_and_geometric() {
    let dir = TempDir::new().unwrap();
    let unit = write(dir.path(), "unitdisc.txt", "add disc 0 0 1\n");
    let out = run(&["table", "--f", "builtin:exp", "--pmax", "2", "--qmax", "2", "--lmax", "0", "--region", s(&unit)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("p,q,l,sup_error,in_dpq,poles_in_region\n"));
    let row = text.lines().find(|l| l.starts_with("2,2,0,")).unwrap();
    let err: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
    assert!(err <= 5e-3);
    // [0/1] of exp has its pole at z = 1
    assert!(text.contains("0,1,0,nan,1,1\n"));

    let half = write(dir.path(), "half.txt", "add disc 0 0 0.5\n");
    let out = run(&["table", "--f", "builtin:geometric", "--pmax", "3", "--qmax", "3", "--lmax", "1", "--region", s(&half)]);
    assert_eq!(code(&out), 0);
    for line in stdout(&out).lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        if f[1] != "0" && f[4] == "1" {
            assert_eq!(f[3], "0", "{line}");
        }
    }
}

#[test]
fn table_output_is_deterministic_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let unit = write(dir.path(), "unit.txt", "add disc 0 0 1\n");
    let args = ["table", "--f", "builtin:log1p", "--pmax", "3", "--qmax", "2", "--lmax", "1", "--region", s(&unit), "--h", "0.1"];
    let one = bin().args(args).env("PADE_LAB_THREADS", "1").output().unwrap();
    let four = bin().args(args).env("PADE_LAB_THREADS", "4").output().unwrap();
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn witness_polynomial_passes() {
    let dir = TempDir::new().unwrap();
    let target = write(dir.path(), "p.txt", "0 1\n1 1\n");
    let unit = write(dir.path(), "unit.txt", "add disc 0 0 1\n");
    let frontier = write(dir.path(), "f.txt", "2 1\n");
    let cert = dir.path().join("cert.txt");
    let args = [
        "witness", "--target", s(&target), "--region", s(&unit), "--frontier", s(&frontier), "--eps", "1e-2", "--n", "1",
        "--s", "4", "--L", "2", "--N", "1", "--simply-connected", "--out", s(&cert),
    ];
    let out = run(&args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).starts_with("PASS 2 1 "));
    let doc = fs::read_to_string(&cert).unwrap();
    assert!(doc.contains("e_membership = true\n") && doc.contains("closeness = true\n"));
    assert!(doc.lines().any(|l| l.starts_with("summary = PASS 2 1 ")));

    let again = dir.path().join("again.txt");
    let mut rerun = args.to_vec();
    *rerun.last_mut().unwrap() = s(&again);
    assert_eq!(code(&run(&rerun)), 0);
    assert_eq!(doc, fs::read_to_string(&again).unwrap());
}

#[test]
fn witness_error_codes() {
    let dir = TempDir::new().unwrap();
    let target = write(dir.path(), "p.txt", "0 1\n3 1\n");
    let unit = write(dir.path(), "unit.txt", "add disc 0 0 1\n");
    let frontier = write(dir.path(), "f.txt", "2 1\n");
    let base = ["witness", "--target", s(&target), "--region", s(&unit), "--frontier", s(&frontier), "--s", "2"];
    let mut no_index = base.to_vec();
    no_index.extend(["--eps", "1e-2"]);
    assert_eq!(code(&run(&no_index)), 3);
    let mut zero_eps = base.to_vec();
    zero_eps.extend(["--eps", "0"]);
    assert_eq!(code(&run(&zero_eps)), 1);
}

#[test]
fn stability_probe_reports() {
    let dir = TempDir::new().unwrap();
    let geo = write(dir.path(), "geo.txt", "0 1\n1 1\n");
    let half = write(dir.path(), "half.txt", "add disc 0 0 0.5\n");
    let args = ["stability", "--series", s(&geo), "--p", "0", "--q", "1", "--r", "0.25", "--eps", "1e-3", "--region", s(&half), "--trials", "50", "--seed", "9"];
    let out = run(&args);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let delta: f64 = text.lines().next().unwrap().trim_start_matches("delta = ").parse().unwrap();
    assert!(delta > 0.0);
    assert_eq!(run(&args).stdout, out.stdout);

    let mut zero = args.to_vec();
    let at = zero.len() - 3;
    zero[at] = "0";
    assert_eq!(code(&run(&zero)), 1);
}

#[test]
fn stability_degenerate_series_exits_four() {
    // the [1/2] Hankel determinant is a_2 - 1, just above the float threshold
    let dir = TempDir::new().unwrap();
    let series = write(dir.path(), "edge.txt", "0 1\n1 1\n2 1.000000000001\n3 1\n");
    let small = write(dir.path(), "small.txt", "add disc 0 0 0.25\n");
    let member = run(&["pade", "--series", s(&series), "--p", "1", "--q", "2", "--mode", "float"]);
    assert_eq!(code(&member), 0);
    let out = run(&[
        "stability", "--series", s(&series), "--p", "1", "--q", "2", "--r", "1e-7", "--eps", "1e-12", "--s", "2",
        "--region", s(&small), "--trials", "100", "--seed", "3",
    ]);
    assert_eq!(code(&out), 4);
}

#[test]
fn truncation_helper() {
    let out = run(&["truncation", "--eps", "1e-2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("L = "));
}
