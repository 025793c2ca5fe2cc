use std::path::Path;

use anyhow::{bail, Context, Result};
use linconj::model::exponent_from_f64;
use linconj::{build_network, examples, ConstraintOptions, Edge, GraphStructure, LinearRow, Model, Relation, Var};
use serde::Deserialize;

/// JSON input describing a kinetic system on a fixed complex set.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub species: Vec<String>,
    /// One exponent vector per complex.
    pub complexes: Vec<Vec<f64>>,
    /// Row-major `n x m` coefficient matrix.
    pub coefficients: Vec<Vec<f64>>,
    #[serde(default)]
    pub mass_vector: Option<Vec<f64>>,
    /// Forbidden reactions as 1-based `[source, target]` pairs.
    #[serde(default)]
    pub excluded: Vec<[usize; 2]>,
    #[serde(default)]
    pub upper_bound: Option<f64>,
    #[serde(default)]
    pub support_tol: Option<f64>,
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn model(&self) -> Result<Model> {
        let complexes = self
            .complexes
            .iter()
            .enumerate()
            .map(|(j, c)| {
                c.iter()
                    .map(|&v| exponent_from_f64(j + 1, v))
                    .collect::<linconj::Result<Vec<_>>>()
            })
            .collect::<linconj::Result<Vec<_>>>()?;
        let names: Vec<&str> = self.species.iter().map(String::as_str).collect();
        Ok(build_network(&names, &complexes, &self.coefficients)?)
    }
}

/// Parses a 1-based edge such as `2->6`.
pub fn parse_edge(text: &str) -> Result<Edge> {
    text.trim()
        .parse::<Edge>()
        .map_err(|e| anyhow::anyhow!("invalid edge {text:?}: {e}"))
}

/// Parses `1,2,3,4|5,6` into 0-based groups of complexes.
pub fn parse_groups(text: &str, m: usize) -> Result<Vec<Vec<usize>>> {
    text.split('|')
        .map(|group| {
            group
                .split(',')
                .map(|v| {
                    let k: usize = v
                        .trim()
                        .parse()
                        .with_context(|| format!("invalid complex index {v:?}"))?;
                    if k == 0 || k > m {
                        bail!("complex index {k} outside 1..={m}");
                    }
                    Ok(k - 1)
                })
                .collect()
        })
        .collect()
}

/// Constraint settings gathered from the problem file and the command line.
#[derive(Debug, Default)]
pub struct Overrides {
    pub mass: bool,
    pub exclude: Vec<String>,
    pub confine: Option<String>,
    pub upper_bound: Option<f64>,
    pub support_tol: Option<f64>,
    pub pivot_tol: Option<f64>,
    pub feasibility_tol: Option<f64>,
    /// Pins the ratios of the diagonal of `T^-1` to these values.
    pub t_inv: Option<Vec<f64>>,
}

pub fn constraint_options(problem: &ProblemFile, model: &Model, o: &Overrides) -> Result<ConstraintOptions<f64>> {
    let m = model.num_complexes();
    let n = model.num_species();
    let mut opts = ConstraintOptions::<f64>::default();
    if let Some(u) = o.upper_bound.or(problem.upper_bound) {
        opts.upper_bound = u;
    }
    opts.support_tol = match o.support_tol.or(problem.support_tol) {
        Some(tol) => tol,
        None => opts.support_tol * opts.upper_bound,
    };
    if let Some(p) = o.pivot_tol {
        opts.lp.pivot = p;
    }
    if let Some(f) = o.feasibility_tol {
        opts.lp.feasibility = f;
    }
    for [s, t] in &problem.excluded {
        if *s == 0 || *t == 0 || *s > m || *t > m || s == t {
            bail!("excluded edge [{s}, {t}] is not a reaction between complexes 1..={m}");
        }
        opts.excluded.insert(Edge::one_based(*s, *t));
    }
    for text in &o.exclude {
        let e = parse_edge(text)?;
        if e.source >= m || e.target >= m {
            bail!("edge {e} refers to a complex outside 1..={m}");
        }
        opts.excluded.insert(e);
    }
    if let Some(groups) = &o.confine {
        let groups = parse_groups(groups, m)?;
        let extra: GraphStructure = examples::confinement_exclusions(m, &groups);
        opts.excluded = opts.excluded.union(&extra);
    }
    if o.mass {
        opts.mass_vector = Some(problem.mass_vector.clone().unwrap_or_else(|| vec![1.0; n]));
    } else {
        opts.mass_vector = problem.mass_vector.clone();
    }
    if let Some(t) = &o.t_inv {
        if t.len() != n || t.iter().any(|v| v.is_nan() || *v <= 0.0) {
            bail!("--t-inv needs {n} positive values");
        }
        // t_0 [T^-1]_i - t_i [T^-1]_0 = 0
        for i in 1..n {
            opts.extra_linear.push(LinearRow {
                terms: vec![(Var::TInv(i), t[0]), (Var::TInv(0), -t[i])],
                relation: Relation::Eq,
                rhs: 0.0,
            });
        }
    }
    opts.validate(model)?;
    Ok(opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_are_one_based() {
        assert_eq!(
            parse_groups("1,2,3,4|5,6", 6).unwrap(),
            vec![vec![0, 1, 2, 3], vec![4, 5]]
        );
        assert!(parse_groups("0,1", 6).is_err());
        assert!(parse_groups("1,7", 6).is_err());
        assert!(parse_groups("1,x", 6).is_err());
    }

    #[test]
    fn edges_parse() {
        assert_eq!(parse_edge("2->6").unwrap(), Edge::one_based(2, 6));
        assert!(parse_edge("2-6").is_err());
        assert!(parse_edge("3->3").is_err());
    }
}
