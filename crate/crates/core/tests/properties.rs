use std::collections::BTreeSet;

use linconj::{
    build_network, core_edges, dense_realization, enumerate_dyneq, enumerate_linconj, examples, max_support, BitSeq,
    BoundedSimplex, ConstraintOptions, CrnModel, EnumerationOptions, GraphStructure, LevelStacks, LinearProgram,
    LpOutcome, LpSolver, LpTolerances, Matrix, Rational,
};
use proptest::prelude::*;

/// Parameters of a model with a known realization `M = T^-1 Y A`.
#[derive(Clone, Debug)]
struct Recipe {
    complexes: Vec<Vec<u32>>,
    rates: Vec<(usize, usize, u32)>,
    t_inv: Vec<u32>,
}

fn recipe() -> impl Strategy<Value = Recipe> {
    (1usize..=2, 2usize..=4)
        .prop_flat_map(|(n, m)| {
            let m = m.min(3usize.pow(n as u32));
            (
                proptest::collection::btree_set(proptest::collection::vec(0u32..=2, n), m),
                proptest::collection::vec((0..m, 0..m, 0u32..=4), 0..=8),
                proptest::collection::vec(1u32..=3, n),
            )
        })
        .prop_map(|(complexes, rates, t_inv)| Recipe {
            complexes: complexes.into_iter().collect(),
            rates: rates.into_iter().filter(|(s, t, k)| s != t && *k > 0).collect(),
            t_inv,
        })
}

fn model(recipe: &Recipe) -> CrnModel<f64> {
    let n = recipe.t_inv.len();
    let m = recipe.complexes.len();
    let mut a = Matrix::filled(m, m, 0.0);
    for &(s, t, k) in &recipe.rates {
        let k = f64::from(k) / 2.0;
        a[(t, s)] += k;
        a[(s, s)] -= k;
    }
    let coeffs: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    f64::from(recipe.t_inv[i])
                        * (0..m)
                            .map(|l| f64::from(recipe.complexes[l][i]) * a[(l, j)])
                            .sum::<f64>()
                })
                .collect()
        })
        .collect();
    let complexes: Vec<Vec<i64>> = recipe
        .complexes
        .iter()
        .map(|c| c.iter().map(|&v| i64::from(v)).collect())
        .collect();
    let species: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    let names: Vec<&str> = species.iter().map(String::as_str).collect();
    build_network(&names, &complexes, &coeffs).unwrap()
}

fn all_structures<S: linconj::Scalar>(model: &CrnModel<S>, opts: &ConstraintOptions<S>) -> BTreeSet<GraphStructure> {
    let mut out = BTreeSet::new();
    enumerate_linconj(model, opts, EnumerationOptions::default(), |e| {
        out.insert(e.structure);
    })
    .unwrap();
    out
}

fn subset_of(g: &GraphStructure, mask: u32) -> GraphStructure {
    g.iter()
        .enumerate()
        .filter(|(k, _)| mask >> (k % 32) & 1 == 1)
        .map(|(_, e)| *e)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn max_support_is_monotone_and_inside_allowed(recipe in recipe(), m1 in any::<u32>(), m2 in any::<u32>()) {
        let model = model(&recipe);
        let opts = ConstraintOptions::default();
        let dense = dense_realization(&model, &opts).unwrap().structure;
        let small = subset_of(&dense, m1 & m2);
        let large = subset_of(&dense, m1);
        let a = max_support(&model, &small, &opts).unwrap();
        let b = max_support(&model, &large, &opts).unwrap();
        if let Some(a) = &a {
            prop_assert!(a.structure.is_subset(&small));
            // anything realizable inside the smaller set is realizable inside the larger
            let b = b.as_ref().expect("larger set is feasible too");
            prop_assert!(a.structure.is_subset(&b.structure));
        }
        if let Some(b) = &b {
            prop_assert!(b.structure.is_subset(&large));
            prop_assert!(b.structure.is_subset(&dense));
        }
    }

    #[test]
    fn every_structure_lies_between_core_and_dense(recipe in recipe()) {
        let model = model(&recipe);
        let opts = ConstraintOptions::default();
        let dense = dense_realization(&model, &opts).unwrap().structure;
        let core = core_edges(&model, &dense, &opts).unwrap();
        let all = all_structures(&model, &opts);
        prop_assert!(all.contains(&dense));
        let inter = all.iter().fold(dense.clone(), |acc, g| acc.intersection(g));
        prop_assert_eq!(&inter, &core);
        for g in &all {
            prop_assert!(core.is_subset(g) && g.is_subset(&dense));
            // each structure is its own maximal structure
            let again = max_support(&model, g, &opts).unwrap().expect("realizable");
            prop_assert_eq!(&again.structure, g);
        }
    }

    #[test]
    fn convex_combinations_realize_unions(recipe in recipe()) {
        let model = model(&recipe);
        let opts = ConstraintOptions::default();
        let all: Vec<GraphStructure> = all_structures(&model, &opts).into_iter().collect();
        let first = max_support(&model, &all[0], &opts).unwrap().unwrap().witness;
        let last = max_support(&model, &all[all.len() - 1], &opts).unwrap().unwrap().witness;
        let mut mixed = first.clone();
        mixed.t_inv = first.t_inv.iter().zip(&last.t_inv).map(|(a, b)| 0.5 * (a + b)).collect();
        for i in 0..model.num_complexes() {
            for j in 0..model.num_complexes() {
                mixed.a_k[(i, j)] = 0.5 * (first.a_k[(i, j)] + last.a_k[(i, j)]);
            }
        }
        prop_assert!(mixed.is_valid_for(&model, &1e-7));
        let union = all[0].union(&all[all.len() - 1]);
        prop_assert_eq!(mixed.structure(&1e-9), union.clone());
        prop_assert!(all.contains(&union));
    }

    #[test]
    fn witnesses_are_scale_invariant(recipe in recipe(), c in 1e-3f64..1e3) {
        let model = model(&recipe);
        let opts = ConstraintOptions::default();
        let dense = dense_realization(&model, &opts).unwrap();
        let scaled = dense.witness.scaled(&c);
        prop_assert!(scaled.is_valid_for(&model, &1e-7));
        prop_assert_eq!(scaled.structure(&(opts.support_tol * c)), dense.structure);
    }

    #[test]
    fn dynamical_equivalence_is_a_special_case(recipe in recipe()) {
        let model = model(&recipe);
        let opts = ConstraintOptions::default();
        let lin = all_structures(&model, &opts);
        let mut dyn_set = BTreeSet::new();
        match enumerate_dyneq(&model, &opts, EnumerationOptions::default(), |e| {
            dyn_set.insert(e.structure);
        }) {
            Ok(summary) => {
                prop_assert_eq!(summary.total, dyn_set.len());
                prop_assert_eq!(summary.column_counts.iter().product::<usize>(), dyn_set.len());
                prop_assert!(dyn_set.is_subset(&lin));
            }
            Err(linconj::Error::NotRealizable) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn level_stacks_pop_by_population(masks in proptest::collection::vec(any::<u8>(), 0..40)) {
        let mut stacks = LevelStacks::new(8);
        for m in &masks {
            stacks.push(BitSeq::from_mask(8, u64::from(*m)), ());
        }
        let mut last = usize::MAX;
        let mut popped = 0;
        while let Some((k, seq, ())) = stacks.pop_highest() {
            prop_assert_eq!(seq.count_ones(), k);
            prop_assert!(k <= last);
            last = k;
            popped += 1;
        }
        prop_assert_eq!(popped, masks.len());
    }
}

/// Unique solution of `A x = b` when the columns of `A` are independent and
/// the system is consistent.
fn solve_independent(mut rows: Vec<Vec<f64>>, k: usize) -> Option<Vec<f64>> {
    let e = rows.len();
    for col in 0..k {
        let piv = (col..e).max_by(|&x, &y| rows[x][col].abs().total_cmp(&rows[y][col].abs()))?;
        if rows[piv][col].abs() < 1e-12 {
            return None;
        }
        rows.swap(col, piv);
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col {
                let f = row[col] / pivot_row[col];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= f * p;
                }
            }
        }
    }
    // rows past the basis must reduce to 0 = 0
    if rows[k..].iter().any(|r| r[k].abs() > 1e-9) {
        return None;
    }
    Some((0..k).map(|i| rows[i][k] / rows[i][i]).collect())
}

/// Best objective over the vertices of `{A v = b, lo <= v <= hi}`. Every
/// vertex has its free variables on linearly independent columns, so fixing
/// the rest at a bound and solving for them visits all vertices.
fn vertex_optimum(lp: &LinearProgram<f64>, c: &[f64]) -> Option<f64> {
    let (rows, vars) = (lp.num_rows(), lp.num_vars());
    let mut best: Option<f64> = None;
    for basis_mask in 0u32..(1 << vars) {
        if basis_mask.count_ones() as usize > rows {
            continue;
        }
        let basis: Vec<usize> = (0..vars).filter(|k| basis_mask >> k & 1 == 1).collect();
        let fixed: Vec<usize> = (0..vars).filter(|k| basis_mask >> k & 1 == 0).collect();
        for bounds in 0u32..(1 << fixed.len()) {
            let mut v = vec![0.0; vars];
            for (idx, &k) in fixed.iter().enumerate() {
                v[k] = if bounds >> idx & 1 == 1 {
                    lp.upper[k]
                } else {
                    lp.lower[k]
                };
            }
            let aug: Vec<Vec<f64>> = (0..rows)
                .map(|i| {
                    let rhs = lp.eq_rhs[i] - fixed.iter().map(|&k| lp.eq_matrix[(i, k)] * v[k]).sum::<f64>();
                    basis.iter().map(|&k| lp.eq_matrix[(i, k)]).chain([rhs]).collect()
                })
                .collect();
            let Some(x) = solve_independent(aug, basis.len()) else {
                continue;
            };
            for (&k, xk) in basis.iter().zip(x) {
                v[k] = xk;
            }
            if v.iter()
                .enumerate()
                .all(|(k, x)| *x >= lp.lower[k] - 1e-9 && *x <= lp.upper[k] + 1e-9)
            {
                let value: f64 = c.iter().zip(&v).map(|(a, b)| a * b).sum();
                best = Some(best.map_or(value, |b: f64| b.max(value)));
            }
        }
    }
    best
}

fn small_lp() -> impl Strategy<Value = (LinearProgram<f64>, Vec<f64>)> {
    (1usize..=2, 3usize..=5).prop_flat_map(|(rows, vars)| {
        (
            proptest::collection::vec(-3i32..=3, rows * vars),
            proptest::collection::vec(-4i32..=4, rows),
            proptest::collection::vec(1i32..=3, vars),
            proptest::collection::vec(-3i32..=3, vars),
        )
            .prop_map(move |(a, b, hi, c)| {
                let rows_v: Vec<Vec<f64>> = a
                    .chunks(vars)
                    .map(|r| r.iter().map(|&x| f64::from(x)).collect())
                    .collect();
                let lp = LinearProgram::new(
                    vec![0.0; vars],
                    Matrix::from_rows(&rows_v).unwrap(),
                    b.iter().map(|&x| f64::from(x)).collect(),
                    vec![0.0; vars],
                    hi.iter().map(|&x| f64::from(x)).collect(),
                )
                .unwrap();
                (lp, c.iter().map(|&x| f64::from(x)).collect())
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn simplex_matches_vertex_enumeration((lp, c) in small_lp()) {
        let oracle = vertex_optimum(&lp, &c);
        let mut solver = BoundedSimplex::new(LpTolerances::default());
        let outcome = solver.maximize(&lp, &c).unwrap();
        match (oracle, outcome) {
            (Some(best), LpOutcome::Optimal { point, value }) => {
                prop_assert!((best - value).abs() <= 1e-7 * (1.0 + best.abs()), "{best} vs {value}");
                prop_assert!(lp.residual(&point) <= 1e-7);
                prop_assert!(lp.bound_violation(&point) <= 1e-9);
            }
            (None, LpOutcome::Infeasible) => {}
            (o, s) => prop_assert!(false, "oracle {o:?}, solver {s:?}"),
        }
    }
}

#[test]
fn exact_arithmetic_agrees_on_example1() {
    let exact = all_structures(&examples::example1::<Rational>(), &ConstraintOptions::default());
    let float = all_structures(&examples::example1::<f64>(), &ConstraintOptions::default());
    assert_eq!(exact.len(), 18);
    assert_eq!(exact, float);
}

#[test]
fn exact_zero_threshold_on_example1() {
    let opts = ConstraintOptions::<Rational> {
        support_tol: Rational::from_integer(0.into()),
        ..ConstraintOptions::default()
    };
    let model = examples::example1::<Rational>();
    let dense = dense_realization(&model, &opts).unwrap();
    assert_eq!(dense.structure, GraphStructure::complete(3));
    assert!(dense.witness.residual(&model) == Rational::from_integer(0.into()));
    assert_eq!(all_structures(&model, &opts).len(), 18);
}

#[test]
fn single_precision_agrees_on_example1() {
    let float = all_structures(&examples::example1::<f64>(), &ConstraintOptions::default());
    let single = all_structures(&examples::example1::<f32>(), &ConstraintOptions::default());
    assert_eq!(single, float);
}

#[test]
fn exact_arithmetic_agrees_on_two_class_example2() {
    let groups = [vec![0, 1, 2, 3], vec![4, 5]];
    let exact_opts = ConstraintOptions::<Rational> {
        excluded: examples::confinement_exclusions(6, &groups),
        ..ConstraintOptions::default()
    };
    let float_opts = ConstraintOptions::<f64> {
        excluded: examples::confinement_exclusions(6, &groups),
        ..ConstraintOptions::default()
    };
    let exact = all_structures(&examples::example2::<Rational>(), &exact_opts);
    let float = all_structures(&examples::example2::<f64>(), &float_opts);
    assert_eq!(exact, float);
    assert_eq!(exact.len(), 6);
}
