//! Black-box tests of the pollock binary: exit codes, file round
//! trips, and checkpoint behaviour on small inputs.

use std::path::Path;
use std::process::{Command, Output};

fn pollock() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pollock"))
}

fn run(args: &[&str]) -> Output {
    pollock().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["decompose"]); // missing --n
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn form_repr_exit_codes() {
    let out = run(&["form-repr", "--m", "843", "--mode", "count"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("843"));
    // The exceptional value of the paper form is a clean failure, not an error.
    let out = run(&["form-repr", "--m", "689469562"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn decompose_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("seven.cert");
    let out = run(&["decompose", "--n", "7", "--out", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&cert).unwrap();
    assert!(text.starts_with("version: 1"));
    let out = run(&["verify", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // A corrupted certificate must be rejected with exit 1.
    let tampered = text.replace("n: 7", "n: 8");
    let bad = dir.path().join("bad.cert");
    std::fs::write(&bad, tampered).unwrap();
    let out = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn graph_build_good_walks_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("graph-231.pqg");
    let gpath = graph.to_str().unwrap();

    let out = run(&["graph-build", "--r", "231", "--out", gpath]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(Path::new(gpath).exists());

    let out = run(&["graph-good", gpath, "--norms", "3,7,11"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("vertices"));

    // A short walk on a small graph cannot meet a 5^(length-1) bound
    // everywhere, and says so with exit 1; a generous bound passes.
    let ckpt = dir.path().join("walk.ckpt");
    let out = run(&[
        "graph-walks",
        gpath,
        "--length",
        "6",
        "--scale-after",
        "1000",
        "--bound-exp",
        "50",
        "--checkpoint",
        ckpt.to_str().unwrap(),
        "--checkpoint-every",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    // The checkpoint is cleaned up after a completed run.
    assert!(!ckpt.exists());
}

#[test]
fn scan_pollock_small() {
    let out = run(&["scan-pollock", "--limit", "10000"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("at most 7"));
}

#[test]
fn bounds_siegel_product_reports_cutoff() {
    let out = run(&["bounds", "siegel-product", "--eps", "1/1000000"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("46523"));
}
