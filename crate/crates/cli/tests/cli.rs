use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rnp-kit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn rnp-kit")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn gen_to(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert!(out.status.success(), "{full:?}");
    write(dir, name, std::str::from_utf8(&out.stdout).unwrap())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn cover_examples() {
    let dir = TempDir::new().unwrap();
    let k3 = gen_to(&dir, "k3.txt", &["pattern", "--name", "complete", "--k", "3"]);
    let v = ok_json(&["cover", s(&k3)]);
    assert_eq!(v["radii"], serde_json::json!([1, 1]));
    assert_eq!(v["valid"], true);

    let p4 = gen_to(&dir, "p4.txt", &["pattern", "--name", "path", "--k", "4"]);
    assert_eq!(ok_json(&["cover", s(&p4)])["radii"][0], 3);

    let split = write(&dir, "split.txt", "4 2\n0 1\n2 3\n");
    let out = run(&["cover", s(&split)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn count_examples() {
    let dir = TempDir::new().unwrap();
    let k5 = gen_to(&dir, "k5.txt", &["pattern", "--name", "complete", "--k", "5"]);
    let k4 = gen_to(&dir, "k4.txt", &["pattern", "--name", "complete", "--k", "4"]);
    let k3 = gen_to(&dir, "k3.txt", &["pattern", "--name", "complete", "--k", "3"]);
    let c6 = gen_to(&dir, "c6.txt", &["pattern", "--name", "cycle", "--k", "6"]);
    let star = gen_to(&dir, "star.txt", &["pattern", "--name", "star", "--k", "3"]);

    assert_eq!(ok_json(&["count", s(&k5), s(&k3), "--mode", "induced"])["count"], 10);
    assert_eq!(ok_json(&["count", s(&c6), s(&k3)])["count"], 0);
    let v = ok_json(&["count", s(&k4), s(&star), "--mode", "noninduced"]);
    assert_eq!(v["count"], 4);
    assert_eq!(v["mode"], "noninduced");
    assert_eq!(ok_json(&["count", s(&k4), s(&star)])["count"], 0);
}

#[test]
fn distinguish_examples() {
    let dir = TempDir::new().unwrap();
    let a = gen_to(&dir, "a.txt", &["pattern", "--name", "figure2_pair", "--part", "1"]);
    let b = gen_to(&dir, "b.txt", &["pattern", "--name", "figure2_pair", "--part", "2"]);
    let v = ok_json(&["distinguish", s(&a), s(&b), "--radii", "1,1"]);
    assert_eq!((v["rnp"].as_bool(), v["wl"].as_bool()), (Some(true), Some(false)));

    let v = ok_json(&["distinguish", s(&a), s(&a), "--radii", "1,1"]);
    assert_eq!((v["rnp"].as_bool(), v["wl"].as_bool()), (Some(false), Some(false)));

    let k3 = gen_to(&dir, "k3.txt", &["pattern", "--name", "complete", "--k", "3"]);
    let p3 = gen_to(&dir, "p3.txt", &["pattern", "--name", "path", "--k", "3"]);
    let v = ok_json(&["distinguish", s(&k3), s(&p3), "--radii", "1"]);
    assert_eq!((v["rnp"].as_bool(), v["wl"].as_bool()), (Some(true), Some(true)));
}

#[test]
fn complexity_examples() {
    let dir = TempDir::new().unwrap();
    let empty = write(&dir, "empty.txt", "7 0\n");
    let v = ok_json(&["complexity", s(&empty), "--radii", "1"]);
    assert_eq!(v["updates"], 7);
    assert_eq!(v["bound"], 7);

    let c6 = gen_to(&dir, "c6.txt", &["pattern", "--name", "cycle", "--k", "6"]);
    let v = ok_json(&["complexity", s(&c6), "--radii", "2,1"]);
    assert_eq!(v["bound"], 150);
    assert!(v["updates"].as_u64().unwrap() <= 150);
}

#[test]
fn figure2_without_part_prints_both_graphs() {
    let out = run(&["gen", "pattern", "--name", "figure2_pair"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# graph 1\n6 6\n"));
    assert!(text.contains("# graph 2\n6 6\n"));
}

#[test]
fn experiment_outputs() {
    let dir = TempDir::new().unwrap();
    gen_to(&dir, "k3.txt", &["pattern", "--name", "complete", "--k", "3"]);
    gen_to(&dir, "p3.txt", &["pattern", "--name", "path", "--k", "3"]);

    let empty = write(
        &dir,
        "empty.json",
        r#"{"generator":{"kind":"er","n":6,"p":0.3},"trials":0,"patterns":["k3.txt"],"radii":"auto"}"#,
    );
    let out = run(&["experiment", s(&empty)]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);

    let suite = write(
        &dir,
        "suite.json",
        r#"{"generator":{"kind":"er","n":8,"p":0.3},"trials":20,"base_seed":5,
            "patterns":["k3.txt","p3.txt"],"radii":"auto","checks":["count_separation","update_bound"]}"#,
    );
    let csv_path = dir.path().join("out.csv");
    let out = run(&["experiment", s(&suite), "--output", s(&csv_path)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    let headers = reader.headers().unwrap().clone();
    let vio = headers.iter().position(|h| h == "violations").unwrap();
    let rows: Vec<_> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| r[vio].is_empty()));
    assert_eq!(&rows[0][1], "5");

    for (name, text) in [
        ("bad1.json", r#"{"generator":{"kind":"er","n":6,"p":0.3},"trials":1,"patterns":[],"radii":"auto","extra":0}"#),
        ("bad2.json", "{not json"),
        ("bad3.json", r#"{"generator":{"kind":"er","n":6,"p":0.3},"trials":1,"patterns":[],"radii":"auto","checks":["nope"]}"#),
        ("bad4.json", r#"{"generator":{"kind":"er","n":6,"p":0.3},"trials":1,"patterns":["missing.txt"],"radii":"auto"}"#),
    ] {
        let path = write(&dir, name, text);
        assert_eq!(run(&["experiment", s(&path)]).status.code(), Some(2), "{name}");
    }
}

#[test]
fn usage_and_input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "3 1\n0 0\n");
    assert_eq!(run(&["encode", s(&bad), "--radii", "1"]).status.code(), Some(2));
    let good = write(&dir, "good.txt", "3 1\n0 1\n");
    assert_eq!(run(&["encode", s(&good), "--radii", "1,,2"]).status.code(), Some(2));
    assert_eq!(run(&["encode", "/nonexistent/graph.txt", "--radii", "1"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "pattern", "--name", "cycle"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["gen", "er", "--n", "20", "--p", "0.2", "--seed", "9"][..],
        &["gen", "regular", "--n", "16", "--seed", "3"][..],
        &["gen", "prime-partite", "--primes", "2,3,5", "--n", "12"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}
