use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use stonework::corpus::{self, CorpusEntry};

fn run(store: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stonework"))
        .arg("--store")
        .arg(store)
        .args(args)
        .env_remove("STONEWORK_FORMAT")
        .env_remove("STONEWORK_SEED")
        .env_remove("STONEWORK_MAX_SIZE")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

#[test]
fn build_writes_reloadable_entries() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["build", "ix", "--size", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["elements"], 34);
    assert_eq!(v["boolean"]["is_boolean"], true);

    let stored: CorpusEntry =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("ix3.json")).unwrap())
            .unwrap();
    assert_eq!(stored, corpus::named("ix3").unwrap());
    assert_eq!(stored.to_monoid().unwrap().size(), 34);

    let out = run(dir.path(), &["build", "pair-groupoid", "--points", "2"]);
    assert_eq!(json(&out)["arrows"], 4);
    let out = run(dir.path(), &["check", "pair2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn build_symbolic_elements() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &[
            "build",
            "cn-element",
            "--n",
            "2",
            "--expr",
            "{a1/a1a1, a2a1/a1a2, a2a2/a2}",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["unit"], true);
    assert_eq!(v["pairs"], 3);

    let out = run(
        dir.path(),
        &[
            "build",
            "cn-element",
            "--n",
            "2",
            "--expr",
            "{a1/a1, a2/a2}",
        ],
    );
    assert_eq!(json(&out)["canonical"], "{e/e}");

    let out = run(
        dir.path(),
        &["build", "poly-element", "--n", "2", "--expr", "a1.a2*"],
    );
    assert_eq!(json(&out)["psi"], "{a1/a2}");

    let out = run(
        dir.path(),
        &["build", "cuntz-arrow", "--expr", "a1a2/a2 @ (a1)^w"],
    );
    assert_eq!(json(&out)["canonical"], "a1/e @ a2(a1)^w");

    let out = run(
        dir.path(),
        &["build", "cn-element", "--n", "7", "--expr", "{e/e}"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["check", "ix3", "--laws", "k-laws"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["failures"], 0);

    let out = run(dir.path(), &["check", "ix3", "--laws", "bm"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["boolean"]["is_boolean"], true);

    let out = run(dir.path(), &["check", "bad-monoid", "--laws", "bm"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["boolean"]["witness"]["axiom"], "BM1");
    assert_eq!(
        v["boolean"]["witness"]["violation"]["kind"],
        "missing_complement"
    );

    let out = run(dir.path(), &["check", "bad-functor", "--laws", "covering"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["witness"]["axiom"], "star-injectivity");

    let out = run(dir.path(), &["check", "clifford", "--laws", "clifford"]);
    assert_eq!(out.status.code(), Some(0));

    let out = run(dir.path(), &["check", "no-such-entry"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(dir.path(), &["check", "ix3", "--laws", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(dir.path(), &["check", "bad-monoid", "--laws", "k-laws"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dualize_with_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["dualize", "ix2", "--round-trip"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["arrows"], 4);
    assert_eq!(v["certificate"]["source_size"], 7);
    assert_eq!(v["certificate"]["target_size"], 7);
    // the dual was stored and re-verifies
    assert_eq!(
        run(dir.path(), &["check", "ix2-dual"]).status.code(),
        Some(0)
    );

    let out = run(dir.path(), &["dualize", "pair2", "--round-trip"]);
    let v = json(&out);
    assert_eq!(v["elements"], 7);
    assert_eq!(v["certificate"]["target_size"], 4);

    let out = run(dir.path(), &["dualize", "bool-algebra-4"]);
    let v = json(&out);
    assert_eq!(v["arrows"], 2);
    assert_eq!(v["objects"], 2);

    let out = run(dir.path(), &["--max-size", "10", "dualize", "ix3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--max-size"));
}

#[test]
fn formats_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--format", "dot", "dualize", "ix2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("digraph"));

    let out = Command::new(env!("CARGO_BIN_EXE_stonework"))
        .args(["check", "ix2", "--laws", "bm"])
        .env("STONEWORK_STORE", dir.path())
        .env("STONEWORK_FORMAT", "text")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "ix2 [bm]: boolean = true"
    );

    let out = run(
        dir.path(),
        &["--format", "dot", "check", "ix2", "--laws", "bm"],
    );
    assert_eq!(out.status.code(), Some(2));
}
