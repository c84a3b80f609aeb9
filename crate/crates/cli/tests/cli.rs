use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monocover")).args(args).output().expect("binary runs")
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn gen(dir: &TempDir, name: &str, extra: &[&str]) -> String {
    let out = path(dir, name);
    let mut args = vec!["gen", "--out", &out];
    args.extend(extra);
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn cover_then_verify() {
    let dir = TempDir::new().unwrap();
    let uniform = gen(&dir, "pts.json", &["--n", "40", "--seed", "3"]);
    let dense = gen(&dir, "dense_pts.json", &["--generator", "dense", "--n", "40", "--seed", "3"]);
    for algo in ["phase12", "twoedge", "zigzagham", "k6", "dense"] {
        let pts = if algo == "dense" { &dense } else { &uniform };
        let cov = path(&dir, &format!("{algo}.json"));
        let o = run(&["cover", "--points", pts, "--algo", algo, "--out", &cov]);
        assert!(o.status.success(), "{algo}: {}", String::from_utf8_lossy(&o.stderr));
        let o = run(&["verify", "--points", pts, "--cover", &cov]);
        assert_eq!(o.status.code(), Some(0), "{algo}");
        let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(report["pass"], true);
    }
}

#[test]
fn verify_names_the_missing_edge() {
    let dir = TempDir::new().unwrap();
    let pts = gen(&dir, "pts.json", &["--n", "7"]);
    let cov = path(&dir, "cov.json");
    assert!(run(&["cover", "--points", &pts, "--algo", "twoedge", "--out", &cov]).status.success());
    let mut cover: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cov).unwrap()).unwrap();
    // 21 edges: the last piece is the lone single edge
    let removed = cover["pieces"].as_array_mut().unwrap().pop().unwrap();
    let v = removed["vertices"].as_array().unwrap();
    assert_eq!(v.len(), 2);
    std::fs::write(&cov, cover.to_string()).unwrap();
    let o = run(&["verify", "--points", &pts, "--cover", &cov]);
    assert_eq!(o.status.code(), Some(1));
    let (a, b) = (v[0].as_u64().unwrap(), v[1].as_u64().unwrap());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains(&format!("uncovered edge ({}, {})", a.min(b), a.max(b))), "{err}");
}

#[test]
fn artifacts_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = gen(&dir, "a.json", &["--n", "30", "--seed", "9"]);
    let b = gen(&dir, "b.json", &["--n", "30", "--seed", "9"]);
    let read = |p: &str| std::fs::read(p).unwrap();
    assert_eq!(read(&a), read(&b));
    let (ca, cb) = (path(&dir, "ca.json"), path(&dir, "cb.json"));
    for (pts, out) in [(&a, &ca), (&b, &cb)] {
        assert!(run(&["cover", "--points", pts, "--algo", "k6", "--seed", "4", "--out", out]).status.success());
    }
    assert_eq!(read(&ca), read(&cb));
    let exp = |out: &str| {
        let o = run(&["experiment", "--algo", "phase12", "--ns", "8..64", "--seeds", "2", "--out", out]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    };
    let (ea, eb) = (path(&dir, "ea.csv"), path(&dir, "eb.csv"));
    exp(&ea);
    exp(&eb);
    assert_eq!(read(&ea), read(&eb));
    assert!(String::from_utf8(read(&ea)).unwrap().starts_with("schema_version,"));
}

#[test]
fn exit_codes_are_distinct() {
    let dir = TempDir::new().unwrap();
    let junk = path(&dir, "junk.json");
    std::fs::write(&junk, "{ not json").unwrap();
    assert_eq!(run(&["oracle", "--points", &junk]).status.code(), Some(3));
    let big = gen(&dir, "big.json", &["--n", "9"]);
    assert_eq!(run(&["oracle", "--points", &big]).status.code(), Some(4));
    let pts = gen(&dir, "pts.json", &["--n", "16"]);
    assert_eq!(
        run(&["cover", "--points", &pts, "--algo", "k6", "--mode", "exact"]).status.code(),
        Some(5)
    );
    assert_eq!(run(&["cover", "--points", &pts, "--algo", "convex"]).status.code(), Some(5));
    let sparse = gen(&dir, "sparse.json", &["--n", "40", "--seed", "3"]);
    assert_eq!(run(&["cover", "--points", &sparse, "--algo", "dense"]).status.code(), Some(5));
    assert_eq!(run(&["gen", "--bogus"]).status.code(), Some(2));
}

#[test]
fn bounds_and_render() {
    let dir = TempDir::new().unwrap();
    let o = run(&["bounds", "--k", "3"]);
    assert!(o.status.success());
    let cert: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cert["max_e0"], 5);
    let pts = gen(&dir, "tri.json", &["--generator", "tripartite", "--n", "4"]);
    let svg = path(&dir, "w.svg");
    assert!(run(&["render", "--points", &pts, "--witness", "--out", &svg]).status.success());
    let text = std::fs::read_to_string(Path::new(&svg)).unwrap();
    assert!(text.starts_with("<svg") && text.contains("polyline"));
}

#[test]
fn oracle_small_set() {
    let dir = TempDir::new().unwrap();
    let pts = gen(&dir, "p.json", &["--generator", "convex", "--n", "5"]);
    let o = run(&["oracle", "--points", &pts, "--kind", "plane-matching"]);
    assert!(o.status.success());
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["optimum"], 5);
}
