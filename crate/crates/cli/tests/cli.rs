use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use frustra::generate::planted;
use serde_json::Value;
use tempfile::TempDir;

fn frustra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frustra")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TRIANGLE: &str = "a b -1\nb c +1\na c +1\n";

#[test]
fn analyze_triangle_reports_exact_measures() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "tri.txt", TRIANGLE);
    let out = frustra(&["analyze", arg(&g)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["upper_bound"], 1);
    assert_eq!(r["result"]["exact"], true);
    assert_eq!(r["measures"]["hamiltonian"]["upper"], -1);
    let f = r["measures"]["normalized"]["lower"].as_f64().unwrap();
    assert!((f - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn empty_graph_has_no_normalized_index() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "empty.txt", "a\nb\n");
    let out = frustra(&["analyze", arg(&g)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["result"]["upper_bound"], 0);
    assert!(r["measures"]["normalized"].is_null());
}

#[test]
fn malformed_input_exits_with_one() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "bad.txt", "a b 7\n");
    let out = frustra(&["analyze", arg(&g)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    let missing = frustra(&["analyze", "/nonexistent/graph.txt"]);
    assert_eq!(missing.status.code(), Some(1));
    let bad_gap = frustra(&["analyze", arg(&g), "--gap", "1.5"]);
    assert_eq!(bad_gap.status.code(), Some(1));
}

#[test]
fn partition_lists_the_single_frustrated_edge() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "tri.txt", TRIANGLE);
    let labels = write(dir.path(), "sides.txt", "a left\nb right\nc right\n");
    let out = frustra(&["partition", arg(&g), "--labels", arg(&labels)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let edges = r["frustrated_edges"].as_array().unwrap();
    assert_eq!(edges.len(), 1);
    let a = r["partition"]["group_a"].as_array().unwrap().len();
    let b = r["partition"]["group_b"].as_array().unwrap().len();
    assert_eq!(a + b, 3);
    assert_eq!(r["label_match"]["compared"], 3);
    assert_eq!(r["label_match"]["categories"], serde_json::json!(["left", "right"]));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let dir = TempDir::new().unwrap();
    let (g, _) = planted(40, 0.2, 12, 5);
    let path = write(dir.path(), "g.txt", &g.to_edge_list());
    let run = || {
        let mut r = json(&frustra(&["analyze", arg(&path), "--seed", "9"]));
        r["timing"] = Value::Null;
        r
    };
    assert_eq!(run(), run());
}

#[test]
fn zscore_of_all_positive_graph_has_no_z() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "pos.txt", "a b +1\nb c +1\nc a +1\nc d +1\n");
    let out = frustra(&["zscore", arg(&g), "--runs", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["ensemble"]["sd"], 0.0);
    assert!(r["ensemble"]["z"].is_null());
}

#[test]
fn zscore_bounds_mode_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "tri.txt", TRIANGLE);
    let out = frustra(&["zscore", arg(&g), "--runs", "10", "--mode", "bounds"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["ensemble"]["used_bounds"], true);
}

#[test]
fn ising_with_no_negative_couplings_is_frustration_free() {
    let out = frustra(&["ising", "--dim", "2", "--side", "4", "--neg", "0,0.5", "--instances", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(&rows[0][..6], &["grid", "2", "4", "16", "24", "0"]);
    assert_eq!(rows[0][7], "0.00");
    assert_eq!(rows[0][8], "0.00");
    let hc = frustra(&["ising", "--hypercube", "4", "--instances", "2"]);
    assert_eq!(hc.status.code(), Some(0));
    assert!(String::from_utf8(hc.stdout).unwrap().lines().nth(1).unwrap().starts_with("hypercube,4,,16,32,"));
}

#[test]
fn bipartivity_of_five_cycle() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "c5.txt", "0 1 +1\n1 2 +1\n2 3 +1\n3 4 +1\n4 0 +1\n");
    let out = frustra(&["bipartivity", arg(&g)]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[..5], &["c5", "5", "5", "1", "0.60000"]);

    let eig: Vec<f64> = (0..5).map(|k| 2.0 * (2.0 * std::f64::consts::PI * k as f64 / 5.0).cos()).collect();
    let exp: f64 = eig.iter().map(|l| l.exp()).sum();
    let beta = eig.iter().map(|l| l.cosh()).sum::<f64>() / exp;
    let bs = eig.iter().map(|l| (-l).exp()).sum::<f64>() / exp;
    assert!((row[5].parse::<f64>().unwrap() - beta).abs() < 1e-5);
    assert!((row[6].parse::<f64>().unwrap() - bs).abs() < 1e-5);

    let signed = write(dir.path(), "tri.txt", TRIANGLE);
    assert_eq!(frustra(&["bipartivity", arg(&signed)]).status.code(), Some(1));
}

#[test]
fn series_and_portfolio_classify_frames() {
    let dir = TempDir::new().unwrap();
    let frames = dir.path().join("frames");
    fs::create_dir(&frames).unwrap();
    write(&frames, "t1.txt", "a b +1\nb c +1\n");
    write(&frames, "t2.txt", "a b -1\nb c -1\n");
    write(&frames, "t3.txt", TRIANGLE);
    let out = frustra(&["series", arg(&frames)]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let states: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').nth(6).unwrap()).collect();
    assert_eq!(states, ["all_positive", "balanced", "unbalanced"]);

    let manifest = write(dir.path(), "frames.txt", "# label path\nlate frames/t3.txt\nearly frames/t1.txt\n");
    let text = String::from_utf8(frustra(&["series", arg(&manifest)]).stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("late,"));

    let csvs = dir.path().join("csv");
    fs::create_dir(&csvs).unwrap();
    write(&csvs, "2001.csv", ",A,B,C\nA,1,0.5,-0.3\nB,0.5,1,-0.4\nC,-0.3,-0.4,1\n");
    write(&csvs, "2002.csv", ",A,B\nA,1,\nB,0.5,1\n");
    let out = frustra(&["portfolio", arg(&csvs)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["counts"]["balanced"], 1);
    assert_eq!(r["errors"].as_array().unwrap().len(), 1);
}

/// A planted instance with 10^4 edges stopped early by the gap target.
#[test]
fn gap_mode_smoke_on_ten_thousand_edges() {
    let dir = TempDir::new().unwrap();
    let (g, _) = planted(2000, 0.005003, 300, 1);
    assert!((9500..=10500).contains(&g.edge_count()), "m = {}", g.edge_count());
    let path = write(dir.path(), "big.txt", &g.to_edge_list());
    let out = frustra(&["analyze", arg(&path), "--gap", "0.2", "--time-limit", "60"]);
    let r = json(&out);
    let (lb, ub) = (r["result"]["lower_bound"].as_u64().unwrap(), r["result"]["upper_bound"].as_u64().unwrap());
    assert!(lb <= ub && ub <= 300);
    assert_eq!(r["result"]["exact"], lb == ub);
    assert_eq!(out.status.code(), Some(if lb == ub { 0 } else { 2 }));
    assert!(lb < ub, "planted instance unexpectedly solved to optimality");
}
