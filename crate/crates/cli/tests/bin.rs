//! Exit-code taxonomy of the installed binary: 0 verified, 1 math failed,
//! 2 broken input.

use std::fs;
use std::path::Path;
use std::process::Command;

use twocat_cli::modelfile::ModelFile;

fn twocat() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twocat"))
}

fn run(args: &[&str], dir: &Path) -> (i32, String) {
    let out = twocat()
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
    (out.status.code().unwrap_or(-1), stdout)
}

#[test]
fn full_pipeline_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();

    let (code, _) = run(&["gen", "zg", "--out", "zg.json"], d);
    assert_eq!(code, 0);
    let (code, out) = run(&["validate", "zg.json"], d);
    assert_eq!(code, 0, "{out}");

    let (code, out) = run(
        &[
            "verify",
            "zg.json",
            "--theorem",
            "A",
            "--all-choices",
            "--out",
            "a.cert.json",
        ],
        d,
    );
    assert_eq!(code, 0, "{out}");
    assert!(out
        .lines()
        .any(|l| l.contains("associator independent: true")));

    let (code, out) = run(
        &["report", "a.cert.json", "--recheck", "--model", "zg.json"],
        d,
    );
    assert_eq!(code, 0, "{out}");

    // generator determinism at the byte level
    let (code, _) = run(&["gen", "zg", "--out", "zg2.json"], d);
    assert_eq!(code, 0);
    assert_eq!(
        fs::read(d.join("zg.json")).unwrap(),
        fs::read(d.join("zg2.json")).unwrap()
    );
}

#[test]
fn math_failure_is_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(&["gen", "zg", "--out", "zg.json"], d);
    // corrupt one hcomp entry (keeping the file structurally complete)
    let bytes = fs::read(d.join("zg.json")).unwrap();
    let mut file: ModelFile = serde_json::from_slice(&bytes).unwrap();
    let entry = file
        .hcomp
        .iter_mut()
        .find(|t| t[0] == 1 && t[1] == 1)
        .unwrap();
    entry[2] ^= 1;
    fs::write(d.join("bad.json"), file.to_bytes()).unwrap();

    let (code, out) = run(&["validate", "bad.json"], d);
    assert_eq!(code, 1, "{out}");
    // downstream commands refuse invalid input by default
    let (code, _) = run(&["verify", "bad.json", "--theorem", "A"], d);
    assert_eq!(code, 2);
}

#[test]
fn broken_input_is_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let (code, _) = run(&["validate", "missing.json"], d);
    assert_eq!(code, 2);
    fs::write(d.join("junk.json"), b"{not json").unwrap();
    let (code, _) = run(&["validate", "junk.json"], d);
    assert_eq!(code, 2);
    // structurally incomplete table: drop a comp1 entry
    run(&["gen", "z2p", "--out", "z2p.json"], d);
    let bytes = fs::read(d.join("z2p.json")).unwrap();
    let mut file: ModelFile = serde_json::from_slice(&bytes).unwrap();
    file.comp1.pop();
    fs::write(d.join("incomplete.json"), file.to_bytes()).unwrap();
    let (code, out) = run(&["validate", "incomplete.json"], d);
    assert_eq!(code, 2, "{out}");
}

#[test]
fn monoid_generator_and_dim1() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let (code, _) = run(
        &[
            "gen",
            "monoid",
            "--table",
            "0 1 2;1 2 0;2 0 1",
            "--out",
            "z3.json",
        ],
        d,
    );
    assert_eq!(code, 0);
    let (code, out) = run(&["verify", "z3.json", "--theorem", "dim1"], d);
    assert_eq!(code, 0, "{out}");
    // non-associative tables are an input error
    let (code, _) = run(
        &["gen", "monoid", "--table", "0 1;0 0", "--out", "bad.json"],
        d,
    );
    assert_eq!(code, 2);
}

#[test]
fn arrow_export_is_deterministic_and_valid() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(&["gen", "z2p", "--out", "z2p.json"], d);
    let (code, _) = run(&["arrow", "z2p.json", "--out", "a1.json"], d);
    assert_eq!(code, 0);
    run(&["arrow", "z2p.json", "--out", "a2.json"], d);
    assert_eq!(
        fs::read(d.join("a1.json")).unwrap(),
        fs::read(d.join("a2.json")).unwrap()
    );
    let (code, out) = run(&["validate", "a1.json"], d);
    assert_eq!(code, 0, "{out}");
    // provenance block references the base
    let file: ModelFile = serde_json::from_slice(&fs::read(d.join("a1.json")).unwrap()).unwrap();
    assert!(file.meta["provenance"]["squares"].is_array());
}
