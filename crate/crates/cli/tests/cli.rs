//! End-to-end runs of the compiled binary: certificates land in files,
//! summaries on standard output, and exit codes separate verified output
//! (0), failed checks (1), and bad input (2).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_minorcert"));
    c.env_remove("MINORCERT_CONFIG");
    c
}

fn put(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn k4(dir: &Path) -> PathBuf {
    put(dir, "k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
}

fn path6(dir: &Path) -> PathBuf {
    put(dir, "path6.txt", "6 5\n0 1\n1 2\n2 3\n3 4\n4 5\n")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("process exited")
}

#[test]
fn decompose_reports_the_wheel_minor_on_a_clique() {
    let dir = TempDir::new().unwrap();
    let graph = k4(dir.path());
    let out = bin().args(["decompose", "--pattern", "wheel", "-k", "3"]).arg(&graph).output().unwrap();
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("minor"));
    let cert = dir.path().join("k4.minor.json");
    assert!(cert.exists());

    let check = bin().arg("verify").arg("minor").arg(&graph).arg(&cert).output().unwrap();
    assert_eq!(code(&check), 0);
    assert!(stdout(&check).contains("accepted"));
}

#[test]
fn decompose_writes_a_decomposition_for_a_sparse_host() {
    let dir = TempDir::new().unwrap();
    let graph = path6(dir.path());
    let out = bin().args(["decompose", "--pattern", "wheel", "-k", "4"]).arg(&graph).output().unwrap();
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("decomposition"));
    let cert = dir.path().join("path6.td");

    let check = bin().arg("verify").arg("td").arg(&graph).arg(&cert).output().unwrap();
    assert_eq!(code(&check), 0);
    assert!(stdout(&check).contains("accepted"));
}

#[test]
fn decompose_accepts_an_explicit_root_cycle() {
    let dir = TempDir::new().unwrap();
    let graph = put(dir.path(), "c4.txt", "4 4\n0 1\n1 2\n2 3\n0 3\n");
    let out = bin()
        .args(["decompose", "--pattern", "wheel", "-k", "5", "--cycle", "0,1,2,3"])
        .arg(&graph)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("decomposition"));
    let text = fs::read_to_string(dir.path().join("c4.td")).unwrap();
    // the root bag is the requested cycle, 1-indexed
    assert!(text.lines().any(|l| l == "b 1 1 2 3 4"), "{text}");
}

#[test]
fn decompose_handles_the_apex_tree_pattern() {
    let dir = TempDir::new().unwrap();
    let forest = put(dir.path(), "tree3.txt", "3 2\n0 1\n1 2\n");
    let graph = path6(dir.path());
    let out = bin()
        .args(["decompose", "--pattern", "apex-forest", "--forest"])
        .arg(&forest)
        .arg(&graph)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("decomposition"));
    assert!(dir.path().join("path6.td").exists());
}

#[test]
fn tampering_with_a_bag_turns_verification_into_exit_one() {
    let dir = TempDir::new().unwrap();
    let graph = path6(dir.path());
    bin().args(["decompose", "--pattern", "wheel", "-k", "4"]).arg(&graph).output().unwrap();
    let cert = dir.path().join("path6.td");
    let text = fs::read_to_string(&cert).unwrap();
    let first_bag = text.lines().find(|l| l.starts_with("b ")).unwrap().to_string();
    let mut shortened: Vec<&str> = first_bag.split(' ').collect();
    shortened.pop();
    let tampered = text.replace(&first_bag, &shortened.join(" "));
    assert_ne!(tampered, text);
    fs::write(&cert, tampered).unwrap();

    let check = bin().arg("verify").arg("td").arg(&graph).arg(&cert).output().unwrap();
    assert_eq!(code(&check), 1);
    assert!(stdout(&check).contains("rejected"), "{check:?}");
}

#[test]
fn unknown_flags_exit_with_usage() {
    let out = bin().arg("--definitely-not-a-flag").output().unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn missing_files_and_bad_patterns_are_input_errors() {
    let dir = TempDir::new().unwrap();
    let out = bin()
        .args(["decompose", "--pattern", "wheel", "-k", "3"])
        .arg(dir.path().join("absent.txt"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);

    let graph = k4(dir.path());
    let out = bin().args(["decompose", "--pattern", "wheel"]).arg(&graph).output().unwrap();
    assert_eq!(code(&out), 2);
    let out = bin().args(["decompose", "--pattern", "hexagon", "-k", "3"]).arg(&graph).output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn graph6_inputs_are_recognized_by_extension() {
    let dir = TempDir::new().unwrap();
    let graph = put(dir.path(), "k3.g6", "Bw\n");
    let out = bin().arg("oracle").arg("treewidth").arg(&graph).output().unwrap();
    assert_eq!(code(&out), 0, "{out:?}");
    assert!(stdout(&out).contains("treewidth 2"));
}

#[test]
fn oracle_answers_match_known_graphs() {
    let dir = TempDir::new().unwrap();
    let graph = k4(dir.path());
    let out = bin().arg("oracle").arg("treewidth").arg(&graph).output().unwrap();
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("treewidth 3"));

    let out = bin().args(["oracle", "minor", "--pattern", "wheel", "-k", "3"]).arg(&graph).output().unwrap();
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("minor present"));

    let sparse = path6(dir.path());
    let out = bin().args(["oracle", "minor", "--pattern", "wheel", "-k", "3"]).arg(&sparse).output().unwrap();
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("no wheel-3 minor"));
}

#[test]
fn fuzz_exhaustive_emits_one_verified_report_per_class() {
    let out = bin()
        .args(["fuzz", "--mode", "exhaustive", "--n", "6", "--pattern", "wheel", "-k", "3"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{out:?}");
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 112);
    assert!(lines.iter().all(|l| l.contains("accepted")), "some report failed");
    assert!(lines.iter().all(|l| l.contains("\"timing_ms\":null")));
}

#[test]
fn fuzz_gnp_is_bit_reproducible_and_writes_certificates() {
    let args = ["fuzz", "--mode", "gnp", "--n", "10", "--p", "0.3", "--seeds", "12", "--pattern", "wheel", "-k", "4"];
    let first = bin().args(args).output().unwrap();
    let second = bin().args(args).output().unwrap();
    assert_eq!(code(&first), 0);
    assert_eq!(stdout(&first), stdout(&second));

    let dir = TempDir::new().unwrap();
    let out = bin()
        .args(["fuzz", "--mode", "gnp", "--n", "8", "--seeds", "3", "--pattern", "wheel", "-k", "3", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let written = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(written, 3);
    assert!(stdout(&out).lines().all(|l| !l.contains("\"certificate\":null")));
}

#[test]
fn the_config_file_supplies_fuzz_defaults() {
    let dir = TempDir::new().unwrap();
    let config = put(dir.path(), "conf.txt", "fuzz-seeds = 4\nfuzz-p = 0.5\n");
    let out = bin()
        .env("MINORCERT_CONFIG", &config)
        .args(["fuzz", "--mode", "gnp", "--n", "7", "--pattern", "wheel", "-k", "3"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{out:?}");
    assert_eq!(stdout(&out).lines().count(), 4);
    assert!(stdout(&out).contains("p0.50"));

    let bad = put(dir.path(), "bad.txt", "mystery = 9\n");
    let out = bin()
        .env("MINORCERT_CONFIG", &bad)
        .args(["fuzz", "--mode", "gnp", "--n", "7", "--pattern", "wheel", "-k", "3"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}
