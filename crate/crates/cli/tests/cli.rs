use std::path::Path;
use std::process::{Command, Output};

fn cubical(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubical"))
        .args(args)
        .env_remove("CUBICAL_MAX_DIM")
        .env_remove("CUBICAL_MAX_ENUM")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = cubical(args);
    assert!(
        o.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn code(args: &[&str]) -> i32 {
    cubical(args).status.code().unwrap()
}

#[test]
fn normalize_connection_against_face() {
    let out = ok(&["normalize", "-f", "c", "g@0 . d0@0"]);
    assert_eq!(out.lines().next(), Some("id : 1 -> 1"));
}

#[test]
fn empty_word_is_identity() {
    let out = ok(&["normalize", "-f", "r", "", "--src", "2"]);
    assert_eq!(out.lines().next(), Some("id : 2 -> 2"));
}

#[test]
fn homset_counts() {
    assert_eq!(ok(&["homset", "-f", "c", "2", "1"]).trim(), "5");
    assert_eq!(ok(&["homset", "-f", "r", "2", "1"]).trim(), "4");
    assert_eq!(ok(&["homset", "-f", "r", "0", "2"]).trim(), "4");
}

#[test]
fn factorize_max() {
    assert_eq!(
        ok(&["factorize", "2", "1", "0", "1", "1", "1"]).trim(),
        "g@0 : 2 -> 1"
    );
    assert_eq!(
        code(&["factorize", "-f", "r", "2", "1", "0", "1", "1", "1"]),
        3
    );
    assert_eq!(code(&["factorize", "1", "1", "0", "2"]), 2);
}

#[test]
fn homology_of_the_circle() {
    assert_eq!(ok(&["homology", "(boundary box 2)"]).trim(), "H0=Z H1=Z");
    assert_eq!(
        ok(&["homology", "boundary", "box", "2"]).trim(),
        "H0=Z H1=Z"
    );
    assert_eq!(
        ok(&["homology", "-f", "r", "torus"]).trim(),
        "H0=Z H1=Z^2 H2=Z"
    );
    assert_eq!(ok(&["homology", "box", "3"]).trim(), "H0=Z");
}

#[test]
fn boundary_summary_counts() {
    let out = ok(&["boundary", "2", "--summary"]);
    assert!(out.contains("counts: 4 8 16"), "{out}");
    let out = ok(&["build", "box", "2", "--summary", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["counts"], serde_json::json!([4, 8, 17]));
    assert_eq!(v["nondegenerate"], serde_json::json!([4, 4, 1]));
}

#[test]
fn tensor_of_segments_is_the_square() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.json");
    let b = dir.path().join("b.json");
    ok(&["tensor", "box1", "box1", "-o", t.to_str().unwrap()]);
    ok(&["build", "box", "2", "-o", b.to_str().unwrap()]);
    let out = ok(&["iso", t.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.lines().next(), Some("isomorphic"));
    let out = ok(&["iso", t.to_str().unwrap(), "boundary box 2"]);
    assert_eq!(out.trim(), "not isomorphic");
}

#[test]
fn cap_closed_by_a_segment_is_a_circle() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c.json");
    ok(&["cap", "2", "0", "0", "-o", c.to_str().unwrap()]);
    // The cap is a path of three edges; a segment glued on at two distinct
    // vertices closes a loop.
    let out = ok(&["cap", "2", "0", "0", "--summary", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["counts"], serde_json::json!([4, 7, 13]));
    let glued = dir.path().join("g.json");
    ok(&[
        "pushout",
        "boundary box 1",
        c.to_str().unwrap(),
        "box 1",
        "-N",
        "2",
        "-o",
        glued.to_str().unwrap(),
    ]);
    assert_eq!(
        ok(&["homology", glued.to_str().unwrap()]).trim(),
        "H0=Z H1=Z"
    );
}

#[test]
fn nerve_of_discrete_arrow_is_the_one_simplex() {
    let dir = tempfile::tempdir().unwrap();
    let n = dir.path().join("n.json");
    let s = dir.path().join("s.json");
    ok(&["nerve", "(discrete [1])", "-o", n.to_str().unwrap()]);
    ok(&[
        "build",
        "simplex",
        "1",
        "-N",
        "3",
        "-o",
        s.to_str().unwrap(),
    ]);
    let out = ok(&["iso", n.to_str().unwrap(), s.to_str().unwrap()]);
    assert_eq!(out.lines().next(), Some("isomorphic"));
}

#[test]
fn fill_reports() {
    let out = ok(&["fill", "horn", "2", "1", "--inner"]);
    assert!(out.contains("horn 2 1: 1 of 8 unfillable"), "{out}");
    let out = ok(&["fill", "box", "1"]);
    assert!(out.trim_end().ends_with("unfillable: 0"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["normalize", "x@0"]), 2);
    assert_eq!(code(&["normalize", "d0@3", "--src", "1"]), 3);
    assert_eq!(code(&["normalize", "-f", "r", "g@0"]), 3);
    assert_eq!(code(&["build", "box"]), 2);
    assert_eq!(code(&["build", "box", "5"]), 4);
    assert_eq!(code(&["homset", "5", "5"]), 4);
    assert_eq!(code(&["nerve", "W", "2", "-f", "r"]), 3);
    assert_eq!(code(&["--no-such-flag"]), 2);
}

#[test]
fn guard_override_by_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_cubical"))
        .args(["build", "box", "5", "--summary"])
        .env("CUBICAL_MAX_DIM", "5")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("counts: 32 112"));
    assert_eq!(
        code(&["build", "box", "5", "--max-dim", "5", "--summary"]),
        0
    );
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn workspace_bindings() {
    let dir = tempfile::tempdir().unwrap();
    ok(&[
        "build",
        "boundary",
        "box",
        "2",
        "-o",
        dir.path().join("circle.json").to_str().unwrap(),
    ]);
    let ws = write(
        dir.path(),
        "ws.json",
        r#"{"format_version": 1, "bindings": [{"name": "circle", "kind": "cubical", "file": "circle.json"}]}"#,
    );
    assert_eq!(
        ok(&["-w", &ws, "homology", "tensor", "circle", "circle"]).trim(),
        "H0=Z H1=Z^2 H2=Z"
    );

    let dup = write(
        dir.path(),
        "dup.json",
        r#"{"format_version": 1, "bindings": [
            {"name": "a", "kind": "cubical", "file": "circle.json"},
            {"name": "a", "kind": "cubical", "file": "circle.json"}]}"#,
    );
    assert_eq!(code(&["-w", &dup, "homology", "a"]), 3);

    let wrong_kind = write(
        dir.path(),
        "kind.json",
        r#"{"format_version": 1, "bindings": [{"name": "a", "kind": "simplicial", "file": "circle.json"}]}"#,
    );
    assert_eq!(code(&["-w", &wrong_kind, "homology", "a"]), 3);

    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"format_version": 1, "kind": "cubical""#,
    );
    assert_eq!(code(&["homology", &bad]), 2);
}

#[test]
fn emitted_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for expr in [
        "box 2",
        "torus",
        "cap 3 1 2",
        "simplex 2",
        "discrete square",
        "W 3",
        "dg [1]",
    ] {
        let a = dir.path().join("a.json");
        let b = dir.path().join("b.json");
        ok(&["build", expr, "-o", a.to_str().unwrap()]);
        ok(&["build", a.to_str().unwrap(), "-o", b.to_str().unwrap()]);
        assert_eq!(
            std::fs::read(&a).unwrap(),
            std::fs::read(&b).unwrap(),
            "{expr}"
        );
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["build", "torus"],
        vec!["nerve", "discrete square"],
        vec!["homology", "--json", "torus"],
        vec!["homset", "--list", "--json", "3", "2"],
    ] {
        assert_eq!(ok(&args), ok(&args), "{args:?}");
    }
}

#[test]
fn selftest_quick_passes() {
    let out = ok(&["selftest", "--quick"]);
    assert!(out.trim_end().ends_with("0 failed"), "{out}");
    assert_eq!(code(&["selftest", "--suite", "nope"]), 2);
}
