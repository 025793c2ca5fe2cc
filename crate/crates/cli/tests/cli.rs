use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use linconj::{enumerate_linconj, examples, ConstraintOptions, Edge, EnumerationOptions, GraphStructure};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn linconj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linconj"))
        .args(args)
        .env_remove("LINCONJ_UPPER_BOUND")
        .env_remove("LINCONJ_SUPPORT_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn records(text: &str) -> (Vec<Value>, Value) {
    let mut lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summary = lines.pop().expect("summary line");
    assert!(summary.get("summary").is_some());
    (lines, summary)
}

fn structure_of_record(r: &Value) -> GraphStructure {
    r["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| Edge::one_based(p[0].as_u64().unwrap() as usize, p[1].as_u64().unwrap() as usize))
        .collect()
}

fn library_example1() -> BTreeSet<GraphStructure> {
    let mut out = BTreeSet::new();
    enumerate_linconj(
        &examples::example1::<f64>(),
        &ConstraintOptions::default(),
        EnumerationOptions::default(),
        |e| {
            out.insert(e.structure);
        },
    )
    .unwrap();
    out
}

#[test]
fn check_reports_dense_edge_counts() {
    let out = linconj(&["check", path_str(&data("example1.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "dense: 6 edges");
    let out = linconj(&["check", path_str(&data("example2.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "dense: 19 edges");
}

#[test]
fn unrealizable_model_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    // C3 = 2X1+X2 can only move along (1,-1), so a (1,1) column is impossible
    std::fs::write(
        &file,
        r#"{"species":["X1","X2"],"complexes":[[0,3],[3,0],[2,1]],"coefficients":[[3,-2,1],[-3,2,1]]}"#,
    )
    .unwrap();
    let out = linconj(&["check", path_str(&file)]);
    assert_eq!(out.status.code(), Some(2));
    let out = linconj(&["enumerate", path_str(&file)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_input_and_usage_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("broken.json");
    std::fs::write(&file, "{\"species\": [").unwrap();
    assert_eq!(linconj(&["check", path_str(&file)]).status.code(), Some(1));

    std::fs::write(
        &file,
        r#"{"species":["X1"],"complexes":[[0],[0]],"coefficients":[[1,-1]]}"#,
    )
    .unwrap();
    assert_eq!(linconj(&["check", path_str(&file)]).status.code(), Some(1));

    assert_eq!(linconj(&["check", "/nonexistent/file.json"]).status.code(), Some(1));
    assert_eq!(linconj(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(linconj(&["check"]).status.code(), Some(1));
    let example = data("example1.json");
    assert_eq!(
        linconj(&["dense", path_str(&example), "--exclude", "1-2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        linconj(&["dense", path_str(&example), "--confine", "1,9"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(linconj(&["--help"]).status.code(), Some(0));
}

#[test]
fn environment_overrides_tolerances() {
    let example = data("example1.json");
    let out = Command::new(env!("CARGO_BIN_EXE_linconj"))
        .args(["check", path_str(&example)])
        .env("LINCONJ_UPPER_BOUND", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_linconj"))
        .args(["check", path_str(&example)])
        .env("LINCONJ_UPPER_BOUND", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "dense: 6 edges");
}

#[test]
fn confinement_gives_the_two_class_structure() {
    let out = linconj(&["dense", path_str(&data("example2.json")), "--confine", "1,2,3,4|5,6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("dense: 8 edges"));
    let got: GraphStructure = lines.map(|l| l.parse().unwrap()).collect();
    assert_eq!(got, examples::example2_two_class_structure());
}

#[test]
fn exclusions_remove_reactions() {
    let out = linconj(&[
        "dense",
        path_str(&data("example2.json")),
        "--exclude",
        "2->6",
        "--exclude",
        "3->6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.lines().any(|l| l == "2->6" || l == "3->6"));
    assert!(text.lines().any(|l| l == "5->6"));
}

#[test]
fn dense_parameters_are_consistent() {
    let out = linconj(&["dense", path_str(&data("example1.json")), "--with-params"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["edge_count"], 6);
    let t: Vec<f64> = v["t_inv"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert!(t.iter().all(|x| *x > 0.0));
    let a = v["a_k"].as_array().unwrap();
    for j in 0..3 {
        let sum: f64 = a.iter().map(|row| row[j].as_f64().unwrap()).sum();
        assert!(sum.abs() < 1e-9);
    }
    assert_eq!(v["rate_coefficients"].as_array().unwrap().len(), 3);
}

#[test]
fn core_of_example2() {
    let out = linconj(&["core", path_str(&data("example2.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "1->3"));
    assert!(text.lines().any(|l| l == "5->6"));
}

#[test]
fn enumerate_jsonl_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let jsonl = dir.path().join("out.jsonl");
    let out = linconj(&[
        "enumerate",
        path_str(&data("example1.json")),
        "--jsonl",
        path_str(&jsonl),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (recs, summary) = records(&std::fs::read_to_string(&jsonl).unwrap());
    assert_eq!(recs.len(), 18);
    assert_eq!(summary["summary"]["total"], 18);
    let got: BTreeSet<GraphStructure> = recs.iter().map(structure_of_record).collect();
    assert_eq!(got, library_example1());
    for r in &recs {
        let g = structure_of_record(r);
        assert_eq!(r["edge_count"].as_u64().unwrap() as usize, g.len());
        assert_eq!(r["weakly_connected"].as_bool().unwrap(), linconj::weakly_connected(&g));
        assert_eq!(
            r["linkage_classes"].as_u64().unwrap() as usize,
            linconj::linkage_classes(&g).len()
        );
        assert_eq!(r["seq"].as_str().unwrap().len(), 6);
    }
    let seqs: BTreeSet<&str> = recs.iter().map(|r| r["seq"].as_str().unwrap()).collect();
    assert_eq!(seqs.len(), 18);
}

#[test]
fn dyneq_and_threads_give_the_same_records() {
    let file = data("example1.json");
    let sets: Vec<BTreeSet<GraphStructure>> = [
        vec!["enumerate", path_str(&file)],
        vec!["enumerate", path_str(&file), "--dyneq"],
        vec!["enumerate", path_str(&file), "--threads", "4"],
        vec!["enumerate", path_str(&file), "--skip-core"],
    ]
    .iter()
    .map(|args| {
        let out = linconj(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        records(&stdout(&out)).0.iter().map(structure_of_record).collect()
    })
    .collect();
    assert_eq!(sets[0].len(), 18);
    for s in &sets[1..] {
        assert_eq!(s, &sets[0]);
    }
}

#[test]
fn dot_files_and_histogram() {
    let dir = tempfile::tempdir().unwrap();
    let dots = dir.path().join("dots");
    let jsonl = dir.path().join("out.jsonl");
    let out = linconj(&[
        "enumerate",
        path_str(&data("example1.json")),
        "--dot-dir",
        path_str(&dots),
        "--jsonl",
        path_str(&jsonl),
        "--histogram",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("edge_count,count"));
    let total: usize = lines
        .map(|l| l.split(',').nth(1).unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 18);

    let (recs, _) = records(&std::fs::read_to_string(&jsonl).unwrap());
    let entries: Vec<_> = std::fs::read_dir(&dots).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 18);
    for r in &recs {
        let seq = r["seq"].as_str().unwrap();
        let dot = std::fs::read_to_string(dots.join(format!("{seq}.dot"))).unwrap();
        assert!(dot.starts_with(&format!("digraph \"{seq}\" {{")));
        assert!(dot.trim_end().ends_with('}'));
        assert_eq!(dot.matches('{').count(), dot.matches('}').count());
        assert!(dot.contains("[label=\"2X1+X2\"]"));
        assert!(dot.contains("[label=\"3X2\"]"));
        let arrows = dot.lines().filter(|l| l.contains("->")).count();
        assert_eq!(arrows, r["edge_count"].as_u64().unwrap() as usize);
    }
}

fn csv_rows(text: &str) -> (String, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn simulation_at_time_zero_returns_the_initial_state() {
    let out = linconj(&[
        "simulate",
        path_str(&data("example1.json")),
        "--x0",
        "1,2",
        "--t-end",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&out));
    assert_eq!(header, "t,X1,X2");
    assert_eq!(rows, vec![vec![0.0, 1.0, 2.0]]);
}

#[test]
fn dense_simulation_is_conjugate_to_the_original() {
    let dir = tempfile::tempdir().unwrap();
    let original = dir.path().join("original.csv");
    let dense = dir.path().join("dense.csv");
    let file = data("example2.json");
    let common = ["--dt", "0.001", "--t-end", "2"];
    let mut args = vec!["simulate", path_str(&file), "--x0", "1,2", "--csv", path_str(&original)];
    args.extend(common);
    assert_eq!(linconj(&args).status.code(), Some(0));
    let mut args = vec![
        "simulate",
        path_str(&file),
        "--x0",
        "40,160",
        "--realization",
        "dense",
        "--t-inv",
        "40,80",
        "--csv",
        path_str(&dense),
    ];
    args.extend(common);
    let out = linconj(&args);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("t_inv: 40,80"));
    let (_, x) = csv_rows(&std::fs::read_to_string(original).unwrap());
    let (_, xbar) = csv_rows(&std::fs::read_to_string(dense).unwrap());
    assert_eq!(x.len(), 2001);
    assert_eq!(x.len(), xbar.len());
    for (a, b) in x.iter().zip(&xbar) {
        assert!((b[1] - 40.0 * a[1]).abs() <= 1e-8 * b[1].abs().max(1.0));
        assert!((b[2] - 80.0 * a[2]).abs() <= 1e-8 * b[2].abs().max(1.0));
    }
}

#[test]
fn simulation_rejects_bad_arguments() {
    let file = data("example1.json");
    assert_eq!(
        linconj(&["simulate", path_str(&file), "--x0", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        linconj(&["simulate", path_str(&file), "--x0", "1,2", "--dt", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        linconj(&[
            "simulate",
            path_str(&file),
            "--x0",
            "1,2",
            "--realization",
            "dense",
            "--t-inv",
            "1,-1"
        ])
        .status
        .code(),
        Some(1)
    );
}
