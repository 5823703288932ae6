use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(format!("{name}.qv"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyquiver")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let o = run(args);
    (serde_json::from_slice(&o.stdout).unwrap(), o.status.code().unwrap())
}

#[test]
fn loop_hilbert_table() {
    let f = corpus("loop");
    let o = run(&["hilbert", f.to_str().unwrap(), "-N", "10", "--format", "tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 11);
    for (n, row) in rows.iter().enumerate() {
        assert_eq!(row.split('\t').next_back().unwrap(), (n + 1).to_string());
    }
}

#[test]
fn rf_example_is_rf() {
    let f = corpus("rf_a3_ba0");
    let (v, code) = json(&["check-drf", f.to_str().unwrap(), "-d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "RF");
    assert_eq!(v["schema"], "cyquiver.report/v1");
    assert_eq!(v["command"], "check-drf");
}

#[test]
fn kronecker_is_not_dynkin() {
    let f = corpus("kronecker");
    let o = run(&["classify", f.to_str().unwrap(), "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "NotDynkin(\"multiple edge\")");
}

#[test]
fn failed_checks_exit_one() {
    let f = corpus("a2");
    let (_, code) = json(&["selfinjective", f.to_str().unwrap(), "--of", "input"]);
    assert_eq!(code, 1);
    let (_, code) = json(&["cy-stable", f.to_str().unwrap(), "--shift", "1"]);
    assert_eq!(code, 1);
    let f = corpus("kronecker");
    let (_, code) = json(&["finite", f.to_str().unwrap(), "-N", "12"]);
    assert_eq!(code, 1);
}

#[test]
fn input_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.qv");
    std::fs::write(&bad, "quiver q\nvertices 1 2\narrow a: 1 -> 3\n").unwrap();
    assert_eq!(run(&["classify", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["classify", dir.join("missing.qv").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate", bad.to_str().unwrap()]).status.code(), Some(2));
    let a2 = corpus("a2");
    assert_eq!(run(&["hilbert", a2.to_str().unwrap(), "--prime", "8"]).status.code(), Some(2));
    assert_eq!(run(&["hilbert", a2.to_str().unwrap(), "-N", "x"]).status.code(), Some(2));
    // global dimension 1 is below the requested d
    let rf = corpus("rf_a3_ba0");
    assert_eq!(run(&["check-dri", rf.to_str().unwrap(), "-d", "1"]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn reports_are_deterministic() {
    let f = corpus("rf_a3_ba0");
    for args in [
        vec!["cy-bimodule", f.to_str().unwrap()],
        vec!["h0-crosscheck", f.to_str().unwrap()],
        vec!["hilbert", f.to_str().unwrap(), "-N", "6"],
    ] {
        assert_eq!(run(&args).stdout, run(&args).stdout);
    }
}

#[test]
fn input_hash_is_sha256_of_the_file() {
    let f = corpus("a2");
    let (v, _) = json(&["classify", f.to_str().unwrap()]);
    let h = v["input"]["sha256"].as_str().unwrap();
    assert_eq!(h.len(), 64);
    assert!(h.chars().all(|c| c.is_ascii_hexdigit()));
    let (w, _) = json(&["gldim", f.to_str().unwrap()]);
    assert_eq!(w["input"]["sha256"], v["input"]["sha256"]);
}

#[test]
fn emit_corpus_round_trip() {
    let dir = std::env::temp_dir().join(format!("cli-emit-{}", std::process::id()));
    let o = run(&["emit-corpus", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let files: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert!(files.len() >= 9);
    for f in &files {
        assert_eq!(run(&["classify", f]).status.code(), Some(0), "{f}");
    }
    let rf = std::fs::read_to_string(dir.join("rf_a3_ba0.qv")).unwrap();
    assert_eq!(rf.lines().filter(|l| l.starts_with("arrow")).count(), 2);
    assert_eq!(rf.lines().filter(|l| l.starts_with("relation")).count(), 1);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn exit_codes_across_the_corpus() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus");
    for entry in std::fs::read_dir(dir).unwrap() {
        let f = entry.unwrap().path();
        let f = f.to_str().unwrap();
        for args in [
            vec!["classify", f],
            vec!["hilbert", f, "-N", "6"],
            vec!["finite", f, "-N", "10"],
            vec!["gldim", f],
        ] {
            let o = run(&args);
            let code = o.status.code().unwrap();
            assert!(matches!(code, 0..=2), "{args:?}");
            if code < 2 {
                let v: Value = serde_json::from_slice(&o.stdout).unwrap();
                assert_eq!(v["pass"].as_bool().unwrap(), code == 0, "{args:?}");
            }
        }
        assert_eq!(run(&["classify", f]).status.code(), Some(0));
        assert_eq!(run(&["hilbert", f, "-N", "6"]).status.code(), Some(0));
    }
}

#[test]
fn tensor_compare_and_text_output() {
    let f = corpus("a3");
    let o = run(&["preproj-tensor", f.to_str().unwrap(), "-N", "5", "--compare", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("degree\ttotal\n0\t6\n1\t3\n2\t1\n3\t0\n"));
}
