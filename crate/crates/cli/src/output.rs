use std::fmt::Write as _;

use linconj::{linkage_classes, weakly_connected, EnumerationSummary, GraphStructure, Matrix, Model};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// Rounds to 12 significant digits.
pub fn sig12(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

pub fn fmt12(v: f64) -> String {
    format!("{}", sig12(v))
}

pub fn edges_json(g: &GraphStructure) -> Value {
    Value::Array(g.iter().map(|e| json!([e.source + 1, e.target + 1])).collect())
}

pub fn vector_json(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|x| json!(sig12(*x))).collect())
}

pub fn matrix_json(a: &Matrix<f64>) -> Value {
    Value::Array((0..a.rows()).map(|i| vector_json(a.row(i))).collect())
}

/// One line of `enumerate` output.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct StructureRecord {
    pub seq: String,
    /// 1-based `[source, target]` pairs.
    pub edges: Vec<[usize; 2]>,
    pub edge_count: usize,
    pub weakly_connected: bool,
    pub linkage_classes: usize,
}

impl StructureRecord {
    pub fn new(seq: String, g: &GraphStructure) -> Self {
        Self {
            seq,
            edges: g.iter().map(|e| [e.source + 1, e.target + 1]).collect(),
            edge_count: g.len(),
            weakly_connected: weakly_connected(g),
            linkage_classes: linkage_classes(g).len(),
        }
    }
}

pub fn summary_record(s: &EnumerationSummary) -> Value {
    let histogram: serde_json::Map<String, Value> =
        s.histogram.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    json!({
        "summary": {
            "total": s.total,
            "histogram": histogram,
            "dense": edges_json(&s.dense),
            "core": edges_json(&s.core),
            "sequence_length": s.ordering.len(),
            "lp_solves": s.lp_solves + s.setup_lp_solves,
            "workers": s.workers,
            "wall_time_s": sig12(s.wall_time.as_secs_f64()),
        }
    })
}

/// Graphviz digraph with complexes labelled by their stoichiometric sums.
pub fn dot(model: &Model, name: &str, g: &GraphStructure) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    for j in 0..model.num_complexes() {
        writeln!(out, "  C{} [label=\"{}\"];", j + 1, model.complex_label(j)).unwrap();
    }
    for e in g {
        writeln!(out, "  C{} -> C{};", e.source + 1, e.target + 1).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn histogram_csv(s: &EnumerationSummary) -> String {
    let mut out = String::from("edge_count,count\n");
    for (k, v) in &s.histogram {
        writeln!(out, "{k},{v}").unwrap();
    }
    out
}
