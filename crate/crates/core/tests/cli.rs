use std::path::{Path, PathBuf};
use std::process::Command;

use flagiso::cli::run;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let argv = std::iter::once("flagiso").chain(args.iter().copied()).map(String::from);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn validate_accepts_fixtures() {
    for f in ["z2_e_a.json", "z3_e_a.json", "z4_e_b.json", "klein_pauli.json"] {
        let (code, out, _) = call(&["validate", &data(f)]);
        assert_eq!(code, 0, "{f}");
        assert!(out.starts_with("VALID"), "{f}: {out}");
    }
}

#[test]
fn validate_reports_length_mismatch_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "lm.json",
        "{\"v\":1,\"group\":{\"kind\":\"abelian\",\"factors\":[2]},\"division\":{\"kind\":\"trivial\"},\"blocks\":[1,1],\n\"tuple\":[\"(0)\"]}\n",
    );
    let (code, _, err) = call(&["validate", &f]);
    assert_eq!(code, 2);
    assert!(err.contains("validation error: line 2"), "{err}");
    assert!(err.contains("length mismatch"), "{err}");
}

#[test]
fn validate_reports_failing_triple() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "loop.json",
        r#"{"v":1,"group":{"kind":"table","names":["e","a","b","c","d"],"table":[
["e","a","b","c","d"],["a","e","c","d","b"],["b","d","e","a","c"],["c","b","d","e","a"],["d","c","a","b","e"]]},
"division":{"kind":"trivial"},"blocks":[1],"tuple":["e"]}"#,
    );
    let (code, _, err) = call(&["validate", &f]);
    assert_eq!(code, 2);
    assert!(err.contains("not associative: (a*a)*b != a*(a*b)"), "{err}");
}

#[test]
fn parse_and_file_errors() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.json", "{\"v\":1,\n");
    let (code, _, err) = call(&["validate", &f]);
    assert_eq!(code, 2);
    assert!(err.starts_with("parse error: line 2"), "{err}");
    let missing = dir.path().join("missing.json").display().to_string();
    let (code, _, err) = call(&["validate", &missing]);
    assert_eq!(code, 2);
    assert!(err.starts_with("file error:"), "{err}");
}

#[test]
fn dims_of_pauli_flag() {
    let (code, out, _) = call(&["dims", &data("klein_pauli.json"), "--radical"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    for _ in 0..4 {
        assert!(lines.next().unwrap().ends_with(": 7"));
    }
    assert_eq!(lines.next(), Some("J^1:"));
}

#[test]
fn iso_witness_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (a, b) in [
        ("z2_e_a.json", "z2_a_e.json"),
        ("klein_pauli.json", "klein_pauli_shifted.json"),
    ] {
        let w = dir.path().join(format!("{a}.witness")).display().to_string();
        let (code, out, _) = call(&["iso", &data(a), &data(b), "--witness", &w]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some("ISOMORPHIC"));
        let (code, out, _) = call(&["verify-witness", &data(a), &data(b), &w]);
        assert_eq!(code, 0, "{out}");
        assert!(out.starts_with("WITNESS_VALID"));
        // The same witness does not fit the reversed pair.
        let (code, out, _) = call(&["verify-witness", &data(b), &data(a), &w]);
        if code != 0 {
            assert_eq!(code, 2);
            assert!(!out.starts_with("WITNESS_VALID"));
        }
    }
}

#[test]
fn tampered_witness_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json").display().to_string();
    call(&["iso", &data("z2_e_a.json"), &data("z2_a_e.json"), "--witness", &w]);
    let mut json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&w).unwrap()).unwrap();
    json["g"] = serde_json::json!("e");
    std::fs::write(&w, json.to_string()).unwrap();
    let (code, out, _) = call(&["verify-witness", &data("z2_e_a.json"), &data("z2_a_e.json"), &w]);
    assert_eq!(code, 2);
    assert!(out.starts_with("WITNESS_INVALID"), "{out}");
    assert!(out.contains("relation fails"), "{out}");
}

#[test]
fn non_isomorphic_and_mismatched_inputs() {
    let (code, out, _) = call(&["iso", &data("z3_e_a.json"), &data("z3_e_a2.json")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("NOT_ISOMORPHIC"));
    let (code, _, err) = call(&["iso", &data("z2_e_a.json"), &data("z4_e_b.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("group mismatch"), "{err}");
}

#[test]
fn equivalence_commands() {
    let (code, out, _) = call(&["equiv-elementary", &data("z2_e_a.json"), &data("z4_e_b.json")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("EQUIVALENT"));
    let (code, out, _) = call(&["equiv-check", &data("z2_e_a.json"), &data("z4_e_b.json")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("INCONCLUSIVE"));
}

#[test]
fn classify_counts_and_thread_determinism() {
    let expect = [("2", "1,1", 2), ("3", "1,1", 3), ("2", "2", 2)];
    for (group, blocks, count) in expect {
        let (code, out, _) = call(&["classify", "--group", group, "--blocks", blocks]);
        assert_eq!(code, 0);
        assert!(out.contains(&format!("classes: {count}\n")), "{out}");
        let json = out.lines().filter(|l| l.starts_with('{')).count();
        assert_eq!(json, count);
    }
    let (_, one, _) = call(&["--threads", "1", "classify", "--group", "S3", "--blocks", "2,1"]);
    let (_, four, _) = call(&["--threads", "4", "classify", "--group", "S3", "--blocks", "2,1"]);
    assert_eq!(one, four);
    let (code, out, _) = call(&[
        "classify",
        "--group",
        "2,2",
        "--blocks",
        "1",
        "--division",
        "pauli:2:(1,0),(0,1)",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("classes: 1\n"), "{out}");
}

#[test]
fn classify_budget_refusal() {
    let (code, _, err) = call(&["classify", "--group", "2", "--blocks", "1,1", "--budget", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("budget"), "{err}");
}

#[test]
fn binary_exit_codes_and_budget_env() {
    let bin = env!("CARGO_BIN_EXE_flagiso");
    let out = Command::new(bin)
        .args(["iso", &data("z2_e_a.json"), &data("z2_a_e.json")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let out = Command::new(bin).arg("no-such-command").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin)
        .args(["classify", "--group", "2", "--blocks", "1,1"])
        .env("FLAGISO_BUDGET", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
