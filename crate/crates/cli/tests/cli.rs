use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::TempDir;

const DOUBLE_STAR: &str = r#"{"n":6,"edges":[[0,1],[0,2],[0,3],[1,4],[1,5]]}"#;
const K14: &str = "n=5\n0 1\n0 2\n0 3\n0 4\n";
const P3: &str = "0 1\n1 2\n";

fn tvs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tvs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn totals(doc: &Value) -> Vec<u64> {
    let mut t: Vec<u64> = doc["weighted_degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    t.sort_unstable();
    t
}

#[test]
fn label_double_star() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ds.json", DOUBLE_STAR);
    let out = tvs(&["label", arg(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["s"], 3);
    assert_eq!(doc["mode"], "theorem1");
    assert_eq!(totals(&doc), vec![2, 3, 4, 5, 8, 9]);
}

#[test]
fn label_output_round_trips_through_verify() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k14.txt", K14);
    let labeling = dir.path().join("k14.labels.json");
    let out = tvs(&["label", "--audit", arg(&f), "--output", arg(&labeling)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let audit: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(audit["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));

    let out = tvs(&["verify", arg(&f), arg(&labeling)]);
    assert_eq!(out.status.code(), Some(0));
    let cert: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cert["valid"], true);
    assert_eq!(cert["s_used"], 3);
}

#[test]
fn label_reads_standard_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tvs"))
        .args(["label", "-", "--format", "edgelist"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(K14.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(totals(&doc), vec![2, 3, 4, 5, 10]);
}

#[test]
fn theorem1_mode_rejects_degree_two() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p3.txt", P3);
    let out = tvs(&["label", "--mode", "t1", arg(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree two"));

    let out = tvs(&["label", "--mode", "t2", arg(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["s"], 2);
}

#[test]
fn malformed_input_exits_one() {
    let dir = TempDir::new().unwrap();
    let cycle = write(&dir, "c3.txt", "0 1\n1 2\n2 0\n");
    assert_eq!(tvs(&["label", arg(&cycle)]).status.code(), Some(1));
    let junk = write(&dir, "junk.txt", "0 x\n");
    assert_eq!(tvs(&["classify", arg(&junk)]).status.code(), Some(1));
    let missing = dir.path().join("absent.json");
    assert_eq!(tvs(&["bounds", arg(&missing)]).status.code(), Some(1));
    assert_eq!(tvs(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn verify_rejects_a_colliding_labeling() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "p3.txt", P3);
    // Totals 3, 4, 3: the two ends collide.
    let bad = write(
        &dir,
        "bad.json",
        r#"{"s":2,"edge_labels":[{"u":0,"v":1,"w":1},{"u":1,"v":2,"w":1}],"vertex_labels":[2,2,2]}"#,
    );
    let out = tvs(&["verify", arg(&f), arg(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let cert: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cert["valid"], false);
    assert_eq!(cert["collisions"].as_array().unwrap().len(), 1);
}

#[test]
fn verify_with_smaller_bound_fails() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ds.json", DOUBLE_STAR);
    let labeling = dir.path().join("l.json");
    assert_eq!(
        tvs(&["label", arg(&f), "--output", arg(&labeling)])
            .status
            .code(),
        Some(0)
    );
    let out = tvs(&["verify", "--s", "2", arg(&f), arg(&labeling)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn exact_on_star_prints_three() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k14.txt", K14);
    let out = tvs(&["exact", arg(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let (first, witness) = text.split_once('\n').unwrap();
    assert_eq!(first, "3");
    let doc: Value = serde_json::from_str(witness).unwrap();
    assert_eq!(doc["s"], 3);
    assert_eq!(totals(&doc).windows(2).filter(|w| w[0] == w[1]).count(), 0);
}

#[test]
fn exact_limits_exit_four() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k14.txt", K14);
    assert_eq!(
        tvs(&["exact", "--cap", "2", arg(&f)]).status.code(),
        Some(4)
    );
    assert_eq!(
        tvs(&["exact", "--guard", "4", arg(&f)]).status.code(),
        Some(4)
    );
}

#[test]
fn classify_and_bounds_reports() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "ds.json", DOUBLE_STAR);
    let table: Value = serde_json::from_str(&stdout(&tvs(&["classify", arg(&f)]))).unwrap();
    assert_eq!(table["n1"], 4);
    assert_eq!(table["classes"]["3,2"], serde_json::json!([0, 1]));
    assert_eq!(table["isolated_edges"], serde_json::json!([]));

    let bounds: Value = serde_json::from_str(&stdout(&tvs(&["bounds", arg(&f)]))).unwrap();
    assert_eq!(bounds["lower_pendant"], 3);
    assert_eq!(bounds["upper_tree"], 4);
}

#[test]
fn dot_lists_edges_and_vertex_totals() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k14.txt", K14);
    let out = tvs(&["dot", arg(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "graph {");
    assert_eq!(*lines.last().unwrap(), "}");
    assert_eq!(lines.iter().filter(|l| l.contains(" -- ")).count(), 4);
    let centre = lines.iter().find(|l| l.starts_with("  0 [")).unwrap();
    assert!(centre.ends_with("|10\"];"), "{centre}");
}

#[test]
fn gen_is_deterministic_and_respects_flags() {
    let args = [
        "gen",
        "--seed",
        "11",
        "--components",
        "2..4",
        "--sizes",
        "2..8",
        "--allow-k2",
    ];
    let a = stdout(&tvs(&args));
    assert_eq!(a, stdout(&tvs(&args)));
    let doc: Value = serde_json::from_str(&a).unwrap();
    let n = doc["n"].as_u64().unwrap() as usize;
    let m = doc["edges"].as_array().unwrap().len();
    assert!((2..=4).contains(&(n - m)));

    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "g.json",
        &stdout(&tvs(&["gen", "--seed", "5", "--n2", "1"])),
    );
    let out = tvs(&["label", "--mode", "t2", arg(&f)]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn gen_all_lists_every_tree() {
    let out = tvs(&["gen", "--all", "7"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 11);
    let out = tvs(&["gen", "--all", "7", "--n2", "0"]);
    assert_eq!(stdout(&out).lines().count(), 2);
    assert_eq!(tvs(&["gen", "--all", "40"]).status.code(), Some(1));
}

#[test]
fn sweep_prints_a_stable_table() {
    let args = [
        "sweep", "--max-n", "8", "--oracle", "--random", "40", "--seed", "3",
    ];
    let out = tvs(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text, stdout(&tvs(&args)));
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("set"));
    assert!(lines[1].starts_with("trees n=2"));
    let total = lines.last().unwrap();
    assert!(
        total.starts_with("total") && total.ends_with("PASS"),
        "{total}"
    );
    assert!(lines.iter().skip(1).all(|l| l.ends_with("PASS")));
}
