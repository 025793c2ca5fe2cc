//! Linear-conjugacy constraint systems and constrained dense realizations.
//!
//! The unknowns are the off-diagonal Kirchhoff entries and the diagonal of
//! `T^-1`, tied together by `Y A_k = T^-1 M` with the diagonal of `A_k`
//! eliminated through the zero column sums. All unknowns live in `[0, U]`.
//!
//! A constrained dense realization is found without strict inequalities: the
//! feasible set is a convex polytope, so each unknown is maximized on its own
//! and the maximizers are combined. The combination is feasible, has strictly
//! positive scaling, and its support is the union of all supports, which is
//! the unique maximal structure.

use crate::error::{Error, Result};
use crate::lp::{BoundedSimplex, LinearProgram, LpOutcome, LpSolver, LpTolerances};
use crate::matrix::Matrix;
use crate::model::{all_edges, encode, BitSeq, CrnModel, Edge, EdgeOrdering, GraphStructure, Realization};
use crate::scalar::Scalar;

/// An unknown of the realization problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    /// Rate of the given reaction, `[A_k]_{target, source}`.
    Rate(Edge),
    /// Diagonal entry `[T^-1]_ii`.
    TInv(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

/// Additional linear constraint `sum coeff * var (rel) rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearRow<S> {
    pub terms: Vec<(Var, S)>,
    pub relation: Relation,
    pub rhs: S,
}

#[derive(Clone, Debug)]
pub struct ConstraintOptions<S> {
    /// Box bound `U` on every unknown.
    pub upper_bound: S,
    /// An unknown counts as positive only above this value.
    pub support_tol: S,
    /// Reactions that must not occur.
    pub excluded: GraphStructure,
    /// Strictly positive species weights for kinetic mass conservation.
    pub mass_vector: Option<Vec<S>>,
    pub extra_linear: Vec<LinearRow<S>>,
    pub lp: LpTolerances<S>,
}

impl<S: Scalar> Default for ConstraintOptions<S> {
    fn default() -> Self {
        Self {
            upper_bound: S::one(),
            support_tol: S::default_support_tol(),
            excluded: GraphStructure::new(),
            mass_vector: None,
            extra_linear: Vec::new(),
            lp: LpTolerances::default(),
        }
    }
}

impl<S: Scalar> ConstraintOptions<S> {
    pub fn validate(&self, model: &CrnModel<S>) -> Result<()> {
        if self.upper_bound <= S::zero() || self.support_tol < S::zero() {
            return Err(Error::InvalidOptions(
                "need upper_bound > 0 and support_tol >= 0".into(),
            ));
        }
        if self.support_tol >= self.upper_bound {
            return Err(Error::InvalidOptions("support_tol must be below upper_bound".into()));
        }
        if let Some(k) = &self.mass_vector {
            if k.len() != model.num_species() {
                return Err(Error::Dimension(format!(
                    "mass vector has length {}, expected {}",
                    k.len(),
                    model.num_species()
                )));
            }
            if k.iter().any(|v| *v <= S::zero()) {
                return Err(Error::InvalidOptions("mass vector must be strictly positive".into()));
            }
        }
        let m = model.num_complexes();
        for e in &self.excluded {
            if e.source >= m || e.target >= m {
                return Err(Error::InvalidOptions(format!("excluded edge {e} out of range")));
            }
        }
        for row in &self.extra_linear {
            for (v, _) in &row.terms {
                let ok = match v {
                    Var::Rate(e) => e.source < m && e.target < m && e.source != e.target,
                    Var::TInv(i) => *i < model.num_species(),
                };
                if !ok {
                    return Err(Error::InvalidOptions(format!("constraint term {v:?} out of range")));
                }
            }
        }
        Ok(())
    }

    /// Whether scaling every unknown by a positive constant preserves feasibility.
    pub fn is_homogeneous(&self) -> bool {
        self.extra_linear.iter().all(|r| r.rhs.is_zero())
    }

    /// Complete digraph minus the excluded reactions.
    pub fn permitted(&self, m: usize) -> GraphStructure {
        GraphStructure::complete(m).difference(&self.excluded)
    }
}

/// Column layout of the assembled program: rates (source-major), then `T^-1`,
/// then slacks of inequality rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableMap {
    m: usize,
    n: usize,
    slacks: usize,
}

impl VariableMap {
    pub fn new(m: usize, n: usize) -> Self {
        Self { m, n, slacks: 0 }
    }

    pub fn num_rates(&self) -> usize {
        self.m * self.m.saturating_sub(1)
    }

    pub fn num_vars(&self) -> usize {
        self.num_rates() + self.n + self.slacks
    }

    pub fn rate(&self, e: Edge) -> usize {
        debug_assert!(e.source != e.target);
        e.source * (self.m - 1) + e.target - usize::from(e.target > e.source)
    }

    pub fn t_inv(&self, i: usize) -> usize {
        self.num_rates() + i
    }

    pub fn index(&self, v: Var) -> usize {
        match v {
            Var::Rate(e) => self.rate(e),
            Var::TInv(i) => self.t_inv(i),
        }
    }

    pub fn edge_at(&self, index: usize) -> Option<Edge> {
        (index < self.num_rates()).then(|| {
            let source = index / (self.m - 1);
            let r = index % (self.m - 1);
            Edge::new(source, if r >= source { r + 1 } else { r })
        })
    }
}

#[derive(Clone, Debug)]
pub struct AssembledLp<S> {
    pub lp: LinearProgram<S>,
    pub vars: VariableMap,
}

struct RowBuilder<S> {
    cols: usize,
    rows: Vec<Vec<S>>,
    rhs: Vec<S>,
}

impl<S: Scalar> RowBuilder<S> {
    fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<S>, rhs: S) {
        debug_assert_eq!(row.len(), self.cols);
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    fn finish(self) -> (Matrix<S>, Vec<S>) {
        let m = if self.rows.is_empty() {
            Matrix::filled(0, self.cols, S::zero())
        } else {
            Matrix::from_rows(&self.rows).expect("rows share a width")
        };
        (m, self.rhs)
    }
}

/// Slack range for an inequality row over unknowns boxed in `[0, U]`.
fn slack_range<'a, S: Scalar>(coeffs: impl IntoIterator<Item = &'a S>, relation: Relation, rhs: &S, upper: &S) -> S {
    let (neg, pos) = coeffs.into_iter().fold((S::zero(), S::zero()), |(n, p), a| {
        if *a < S::zero() {
            (n + a.clone() * upper.clone(), p)
        } else {
            (n, p + a.clone() * upper.clone())
        }
    });
    let r = match relation {
        Relation::Le => rhs.clone() - neg,
        Relation::Ge => pos - rhs.clone(),
        Relation::Eq => S::zero(),
    };
    if r < S::zero() {
        S::zero()
    } else {
        r
    }
}

/// Builds the linear-conjugacy program. Edges outside `allowed` (and all
/// excluded edges) are fixed to zero.
pub fn assemble<S: Scalar>(
    model: &CrnModel<S>,
    allowed: &GraphStructure,
    opts: &ConstraintOptions<S>,
) -> Result<AssembledLp<S>> {
    opts.validate(model)?;
    let (n, m) = (model.num_species(), model.num_complexes());
    let mut vars = VariableMap::new(m, n);
    vars.slacks = opts.extra_linear.iter().filter(|r| r.relation != Relation::Eq).count();
    let cols = vars.num_vars();
    let y = |i: usize, j: usize| S::from_u32(model.stoich(i, j)).unwrap();
    let mut rows = RowBuilder::new(cols);

    // sum_{l != j} [A_k]_lj (Y_il - Y_ij) - M_ij [T^-1]_ii = 0
    for i in 0..n {
        for j in 0..m {
            let mut row = vec![S::zero(); cols];
            for l in (0..m).filter(|&l| l != j) {
                row[vars.rate(Edge::new(j, l))] = y(i, l) - y(i, j);
            }
            row[vars.t_inv(i)] = -model.coefficients()[(i, j)].clone();
            rows.push(row, S::zero());
        }
    }

    // k^T Y A_k = 0
    if let Some(k) = &opts.mass_vector {
        let weight: Vec<S> = (0..m)
            .map(|j| (0..n).fold(S::zero(), |acc, i| acc + k[i].clone() * y(i, j)))
            .collect();
        for j in 0..m {
            let mut row = vec![S::zero(); cols];
            for l in (0..m).filter(|&l| l != j) {
                row[vars.rate(Edge::new(j, l))] = weight[l].clone() - weight[j].clone();
            }
            rows.push(row, S::zero());
        }
    }

    let mut upper = vec![opts.upper_bound.clone(); cols];
    let mut slack = vars.num_rates() + n;
    for r in &opts.extra_linear {
        let mut row = vec![S::zero(); cols];
        for (v, a) in &r.terms {
            let idx = vars.index(*v);
            row[idx] = row[idx].clone() + a.clone();
        }
        match r.relation {
            Relation::Eq => {}
            Relation::Le | Relation::Ge => {
                row[slack] = if r.relation == Relation::Le {
                    S::one()
                } else {
                    -S::one()
                };
                upper[slack] = slack_range(r.terms.iter().map(|(_, a)| a), r.relation, &r.rhs, &opts.upper_bound);
                slack += 1;
            }
        }
        rows.push(row, r.rhs.clone());
    }

    for e in all_edges(m) {
        if !allowed.contains(&e) || opts.excluded.contains(&e) {
            upper[vars.rate(e)] = S::zero();
        }
    }
    let (eq_matrix, eq_rhs) = rows.finish();
    let lp = LinearProgram::new(vec![S::zero(); cols], eq_matrix, eq_rhs, vec![S::zero(); cols], upper)?;
    Ok(AssembledLp { lp, vars })
}

/// Maximal structure under the constraints together with a witness whose
/// support is exactly that structure.
#[derive(Clone, Debug)]
pub struct MaxSupportResult<S> {
    pub structure: GraphStructure,
    pub witness: Realization<S>,
    /// LP solves issued by this computation.
    pub lp_solves: usize,
}

/// Accumulates maximizer points and tracks which unknowns have been seen
/// above the support threshold.
struct SupportAccumulator<S> {
    sum: Vec<S>,
    present: Vec<bool>,
    points: usize,
    tol: S,
}

impl<S: Scalar> SupportAccumulator<S> {
    fn new(len: usize, tol: S) -> Self {
        Self {
            sum: vec![S::zero(); len],
            present: vec![false; len],
            points: 0,
            tol,
        }
    }

    fn add(&mut self, point: &[S]) {
        for (k, v) in point.iter().enumerate() {
            if *v > self.tol {
                self.present[k] = true;
            }
            self.sum[k] = self.sum[k].clone() + v.clone();
        }
        self.points += 1;
    }

    /// The sum of all points when the feasible set is a cone, else their mean.
    fn combined(&self, homogeneous: bool) -> Vec<S> {
        if homogeneous || self.points == 0 {
            self.sum.clone()
        } else {
            let c = S::from_usize_exact(self.points);
            self.sum.iter().map(|v| v.clone() / c.clone()).collect()
        }
    }
}

fn unit<S: Scalar>(len: usize, k: usize) -> Vec<S> {
    let mut c = vec![S::zero(); len];
    c[k] = S::one();
    c
}

/// Maximizes `objective`; returns the point and value when feasible.
fn maximize<S: Scalar>(
    solver: &mut impl LpSolver<S>,
    lp: &LinearProgram<S>,
    objective: &[S],
    solves: &mut usize,
) -> Result<Option<(Vec<S>, S)>> {
    *solves += 1;
    Ok(match solver.maximize(lp, objective)? {
        LpOutcome::Optimal { point, value } => Some((point, value)),
        LpOutcome::Infeasible => None,
    })
}

/// Constrained dense linearly conjugate realization with support inside
/// `allowed`, or `None` when no realization with positive `T` exists.
pub fn max_support<S: Scalar>(
    model: &CrnModel<S>,
    allowed: &GraphStructure,
    opts: &ConstraintOptions<S>,
) -> Result<Option<MaxSupportResult<S>>> {
    let mut solver = BoundedSimplex::new(opts.lp.clone());
    max_support_with(&mut solver, model, allowed, opts)
}

pub fn max_support_with<S: Scalar>(
    solver: &mut impl LpSolver<S>,
    model: &CrnModel<S>,
    allowed: &GraphStructure,
    opts: &ConstraintOptions<S>,
) -> Result<Option<MaxSupportResult<S>>> {
    let mut solves = 0;
    support_search(solver, model, allowed, opts, &mut solves)
}

/// [`max_support`] that also reports LP solves spent on an infeasible answer.
pub(crate) fn max_support_counted<S: Scalar>(
    model: &CrnModel<S>,
    allowed: &GraphStructure,
    opts: &ConstraintOptions<S>,
) -> Result<(Option<MaxSupportResult<S>>, usize)> {
    let mut solver = BoundedSimplex::new(opts.lp.clone());
    let mut solves = 0;
    let found = support_search(&mut solver, model, allowed, opts, &mut solves)?;
    Ok((found, solves))
}

fn support_search<S: Scalar>(
    solver: &mut impl LpSolver<S>,
    model: &CrnModel<S>,
    allowed: &GraphStructure,
    opts: &ConstraintOptions<S>,
    solves: &mut usize,
) -> Result<Option<MaxSupportResult<S>>> {
    let AssembledLp { lp, vars } = assemble(model, allowed, opts)?;
    let (n, m) = (model.num_species(), model.num_complexes());
    let len = vars.num_vars();
    let mut acc = SupportAccumulator::new(len, opts.support_tol.clone());

    for i in 0..n {
        let k = vars.t_inv(i);
        if acc.present[k] {
            continue;
        }
        match maximize(solver, &lp, &unit(len, k), solves)? {
            Some((point, value)) if value > opts.support_tol => acc.add(&point),
            _ => return Ok(None),
        }
    }
    let candidates: Vec<Edge> = allowed
        .iter()
        .filter(|e| !opts.excluded.contains(e) && e.source < m && e.target < m)
        .copied()
        .collect();
    for e in &candidates {
        let k = vars.rate(*e);
        if acc.present[k] {
            continue;
        }
        if let Some((point, value)) = maximize(solver, &lp, &unit(len, k), solves)? {
            if value > opts.support_tol {
                acc.add(&point);
            }
        }
    }

    let combined = acc.combined(opts.is_homogeneous());
    let structure: GraphStructure = candidates
        .iter()
        .filter(|e| acc.present[vars.rate(**e)])
        .copied()
        .collect();
    let t_inv = (0..n).map(|i| combined[vars.t_inv(i)].clone()).collect();
    let rates = structure.iter().map(|e| (*e, combined[vars.rate(*e)].clone()));
    let witness = Realization::from_rates(t_inv, m, rates);
    Ok(Some(MaxSupportResult {
        structure,
        witness,
        lp_solves: *solves,
    }))
}

/// Dense realization over all permitted reactions; a model without any
/// realization is an error.
pub fn dense_realization<S: Scalar>(model: &CrnModel<S>, opts: &ConstraintOptions<S>) -> Result<MaxSupportResult<S>> {
    max_support(model, &opts.permitted(model.num_complexes()), opts)?.ok_or(Error::NotRealizable)
}

/// Outcome of one edge-exclusion probe.
#[derive(Clone, Debug)]
pub struct Probe<S> {
    pub seq: BitSeq,
    pub structure: GraphStructure,
    pub witness: Realization<S>,
    pub lp_solves: usize,
}

/// Dense realization inside the structure of `r` with edge `e_i` removed.
pub fn find_linconj_without_edge<S: Scalar>(
    model: &CrnModel<S>,
    r: &BitSeq,
    i: usize,
    ord: &EdgeOrdering,
    opts: &ConstraintOptions<S>,
) -> Result<Option<Probe<S>>> {
    if r.len() != ord.len() {
        return Err(Error::SequenceLength {
            expected: ord.len(),
            found: r.len(),
        });
    }
    if !r.get(i) {
        return Err(Error::InvalidOptions(format!("bit {i} of {r} is not set")));
    }
    let mut allowed = ord.core().clone();
    for l in r.ones_iter().filter(|&l| l != i) {
        allowed.insert(ord.edge(l));
    }
    let Some(found) = max_support(model, &allowed, opts)? else {
        return Ok(None);
    };
    let seq = encode(&found.structure, ord)?;
    Ok(Some(Probe {
        seq,
        structure: found.structure,
        witness: found.witness,
        lp_solves: found.lp_solves,
    }))
}

/// Like [`find_linconj_without_edge`], also counting LP solves of an
/// infeasible probe.
pub(crate) fn probe_linconj<S: Scalar>(
    model: &CrnModel<S>,
    r: &BitSeq,
    i: usize,
    ord: &EdgeOrdering,
    opts: &ConstraintOptions<S>,
) -> Result<(Option<Probe<S>>, usize)> {
    if r.len() != ord.len() || !r.get(i) {
        return find_linconj_without_edge(model, r, i, ord, opts).map(|p| (p, 0));
    }
    let mut allowed = ord.core().clone();
    for l in r.ones_iter().filter(|&l| l != i) {
        allowed.insert(ord.edge(l));
    }
    let (found, solves) = max_support_counted(model, &allowed, opts)?;
    let Some(found) = found else {
        return Ok((None, solves));
    };
    let seq = encode(&found.structure, ord)?;
    Ok((
        Some(Probe {
            seq,
            structure: found.structure,
            witness: found.witness,
            lp_solves: solves,
        }),
        solves,
    ))
}

/// Reactions present in every realization whose structure lies inside `dense`.
pub fn core_edges<S: Scalar>(
    model: &CrnModel<S>,
    dense: &GraphStructure,
    opts: &ConstraintOptions<S>,
) -> Result<GraphStructure> {
    let mut core = GraphStructure::new();
    for e in dense {
        let mut without = dense.clone();
        without.remove(e);
        if max_support(model, &without, opts)?.is_none() {
            core.insert(*e);
        }
    }
    Ok(core)
}

/// Column `j` of a dynamically equivalent (`T = I`) realization.
#[derive(Clone, Debug)]
pub struct ColumnResult<S> {
    pub column: usize,
    pub structure: GraphStructure,
    /// Rates of the column's reactions.
    pub rates: Vec<(Edge, S)>,
    pub lp_solves: usize,
}

/// Program for column `j` alone: `sum_{l != j} [A_k]_lj (y_l - y_j) = tau M e_j`.
///
/// With `T` fixed the scale of the rates is set by `M`, so a box bound could
/// cut off solutions. The extra scale variable `tau` makes the feasible set a
/// cone again; any point with `tau > 0` divided by `tau` is a column solution.
/// Returns the program, the column's edges (variables `0..edges.len()`) and the
/// index of `tau`.
fn assemble_column<S: Scalar>(
    model: &CrnModel<S>,
    j: usize,
    allowed: &GraphStructure,
    opts: &ConstraintOptions<S>,
) -> Result<(LinearProgram<S>, Vec<Edge>, usize)> {
    opts.validate(model)?;
    let (n, m) = (model.num_species(), model.num_complexes());
    if j >= m {
        return Err(Error::Dimension(format!("column {} out of range", j + 1)));
    }
    let targets: Vec<Edge> = (0..m).filter(|&l| l != j).map(|l| Edge::new(j, l)).collect();
    let position = |e: &Edge| targets.iter().position(|t| t == e);
    let tau = targets.len();

    // Extra rows: T^-1 is the identity, so its terms join the right-hand
    // side, which is then carried by tau; rates from other columns make the
    // row non-separable.
    let mut extra = Vec::new();
    for r in &opts.extra_linear {
        let mut rhs = r.rhs.clone();
        let mut coeffs = Vec::new();
        let mut foreign = false;
        for (v, a) in &r.terms {
            match v {
                Var::TInv(_) => rhs = rhs - a.clone(),
                Var::Rate(e) if e.source == j => coeffs.push((position(e).unwrap(), a.clone())),
                Var::Rate(_) => foreign = true,
            }
        }
        match (foreign, coeffs.is_empty()) {
            (true, false) => return Err(Error::CoupledConstraint),
            (true, true) => {}
            _ => {
                if !rhs.is_zero() {
                    coeffs.push((tau, -rhs));
                }
                extra.push((coeffs, r.relation));
            }
        }
    }
    let slacks = extra.iter().filter(|x| x.1 != Relation::Eq).count();
    let cols = tau + 1 + slacks;
    let y = |i: usize, c: usize| S::from_u32(model.stoich(i, c)).unwrap();
    let mut rows = RowBuilder::new(cols);
    for i in 0..n {
        let mut row = vec![S::zero(); cols];
        for (k, e) in targets.iter().enumerate() {
            row[k] = y(i, e.target) - y(i, j);
        }
        row[tau] = -model.coefficients()[(i, j)].clone();
        rows.push(row, S::zero());
    }
    if let Some(w) = &opts.mass_vector {
        let weight = |c: usize| (0..n).fold(S::zero(), |acc, i| acc + w[i].clone() * y(i, c));
        let mut row = vec![S::zero(); cols];
        for (k, e) in targets.iter().enumerate() {
            row[k] = weight(e.target) - weight(j);
        }
        rows.push(row, S::zero());
    }
    let mut upper = vec![opts.upper_bound.clone(); cols];
    let mut slack = tau + 1;
    for (coeffs, relation) in extra {
        let mut row = vec![S::zero(); cols];
        for (k, a) in &coeffs {
            row[*k] = row[*k].clone() + a.clone();
        }
        if relation != Relation::Eq {
            row[slack] = if relation == Relation::Le { S::one() } else { -S::one() };
            upper[slack] = slack_range(coeffs.iter().map(|(_, a)| a), relation, &S::zero(), &opts.upper_bound);
            slack += 1;
        }
        rows.push(row, S::zero());
    }
    for (k, e) in targets.iter().enumerate() {
        if !allowed.contains(e) || opts.excluded.contains(e) {
            upper[k] = S::zero();
        }
    }
    let (eq_matrix, eq_rhs) = rows.finish();
    let lp = LinearProgram::new(vec![S::zero(); cols], eq_matrix, eq_rhs, vec![S::zero(); cols], upper)?;
    Ok((lp, targets, tau))
}

/// Maximal support of column `j` inside `allowed` with `T = I`.
pub fn column_max_support<S: Scalar>(
    model: &CrnModel<S>,
    j: usize,
    allowed: &GraphStructure,
    opts: &ConstraintOptions<S>,
) -> Result<Option<ColumnResult<S>>> {
    let (lp, targets, tau) = assemble_column(model, j, allowed, opts)?;
    let mut solver = BoundedSimplex::new(opts.lp.clone());
    let len = lp.num_vars();
    let mut acc = SupportAccumulator::new(len, opts.support_tol.clone());
    let mut solves = 0;

    match maximize(&mut solver, &lp, &unit(len, tau), &mut solves)? {
        Some((point, value)) if value > opts.support_tol => acc.add(&point),
        _ => return Ok(None),
    }
    let candidates: Vec<usize> = (0..targets.len())
        .filter(|&k| allowed.contains(&targets[k]) && !opts.excluded.contains(&targets[k]))
        .collect();
    for &k in &candidates {
        if acc.present[k] {
            continue;
        }
        if let Some((point, value)) = maximize(&mut solver, &lp, &unit(len, k), &mut solves)? {
            if value > opts.support_tol {
                acc.add(&point);
            }
        }
    }
    let sum = acc.combined(true);
    let structure: GraphStructure = candidates
        .iter()
        .filter(|&&k| acc.present[k])
        .map(|&k| targets[k])
        .collect();
    let rates = candidates
        .iter()
        .filter(|&&k| acc.present[k])
        .map(|&k| (targets[k], sum[k].clone() / sum[tau].clone()))
        .collect();
    Ok(Some(ColumnResult {
        column: j,
        structure,
        rates,
        lp_solves: solves,
    }))
}

/// Dense support of column `j` over all permitted reactions leaving `C_j`.
pub fn column_dense<S: Scalar>(
    model: &CrnModel<S>,
    j: usize,
    opts: &ConstraintOptions<S>,
) -> Result<Option<ColumnResult<S>>> {
    let allowed = opts.permitted(model.num_complexes()).column(j);
    column_max_support(model, j, &allowed, opts)
}

/// Column reactions present in every column solution inside `dense_j`.
pub fn column_core_edges<S: Scalar>(
    model: &CrnModel<S>,
    j: usize,
    dense_j: &GraphStructure,
    opts: &ConstraintOptions<S>,
) -> Result<GraphStructure> {
    let mut core = GraphStructure::new();
    for e in dense_j {
        let mut without = dense_j.clone();
        without.remove(e);
        if column_max_support(model, j, &without, opts)?.is_none() {
            core.insert(*e);
        }
    }
    Ok(core)
}

/// Column analogue of [`find_linconj_without_edge`]; `ord_j` orders the
/// non-core reactions of column `j`.
pub fn dyneq_column_without_edge<S: Scalar>(
    model: &CrnModel<S>,
    j: usize,
    r_j: &BitSeq,
    i: usize,
    ord_j: &EdgeOrdering,
    opts: &ConstraintOptions<S>,
) -> Result<Option<(BitSeq, ColumnResult<S>)>> {
    if r_j.len() != ord_j.len() {
        return Err(Error::SequenceLength {
            expected: ord_j.len(),
            found: r_j.len(),
        });
    }
    if !r_j.get(i) {
        return Err(Error::InvalidOptions(format!("bit {i} of {r_j} is not set")));
    }
    let mut allowed = ord_j.core().clone();
    for l in r_j.ones_iter().filter(|&l| l != i) {
        allowed.insert(ord_j.edge(l));
    }
    let Some(col) = column_max_support(model, j, &allowed, opts)? else {
        return Ok(None);
    };
    let seq = encode(&col.structure, ord_j)?;
    Ok(Some((seq, col)))
}
