//! Equality-constrained linear programs over a finite box, and a dense
//! bounded-variable primal simplex that solves them.

use num_traits::Zero;
use thiserror::Error;

use crate::matrix::Matrix;
use crate::scalar::{max_abs, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("malformed linear program: {0}")]
    Invalid(String),
    #[error("numerical failure in simplex: {0}")]
    Numerical(String),
    #[error("simplex exceeded {0} iterations")]
    IterationLimit(usize),
}

/// `maximize c.v  s.t.  A v = b,  lower <= v <= upper`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram<S> {
    pub objective: Vec<S>,
    pub eq_matrix: Matrix<S>,
    pub eq_rhs: Vec<S>,
    pub lower: Vec<S>,
    pub upper: Vec<S>,
}

impl<S: Scalar> LinearProgram<S> {
    pub fn new(
        objective: Vec<S>,
        eq_matrix: Matrix<S>,
        eq_rhs: Vec<S>,
        lower: Vec<S>,
        upper: Vec<S>,
    ) -> Result<Self, LpError> {
        let lp = Self {
            objective,
            eq_matrix,
            eq_rhs,
            lower,
            upper,
        };
        lp.validate()?;
        Ok(lp)
    }

    pub fn num_vars(&self) -> usize {
        self.eq_matrix.cols()
    }

    pub fn num_rows(&self) -> usize {
        self.eq_matrix.rows()
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let v = self.num_vars();
        if self.objective.len() != v || self.lower.len() != v || self.upper.len() != v {
            return Err(LpError::Invalid(format!(
                "{} columns but objective/lower/upper have lengths {}/{}/{}",
                v,
                self.objective.len(),
                self.lower.len(),
                self.upper.len()
            )));
        }
        if self.eq_rhs.len() != self.num_rows() {
            return Err(LpError::Invalid(format!(
                "{} rows but rhs has length {}",
                self.num_rows(),
                self.eq_rhs.len()
            )));
        }
        let finite = |x: &S| x.is_finite_value();
        if !(self.eq_matrix.iter().all(finite)
            && self.eq_rhs.iter().all(finite)
            && self.objective.iter().all(finite)
            && self.lower.iter().all(finite)
            && self.upper.iter().all(finite))
        {
            return Err(LpError::Invalid("non-finite data".into()));
        }
        if let Some(j) = (0..v).find(|&j| self.lower[j] > self.upper[j]) {
            return Err(LpError::Invalid(format!("variable {j} has lower > upper")));
        }
        Ok(())
    }

    /// `max |A v - b|`.
    pub fn residual(&self, point: &[S]) -> S {
        (0..self.num_rows())
            .map(|i| {
                let ax = self
                    .eq_matrix
                    .row(i)
                    .iter()
                    .zip(point)
                    .fold(S::zero(), |acc, (a, x)| acc + a.clone() * x.clone());
                (ax - self.eq_rhs[i].clone()).abs()
            })
            .fold(S::zero(), |a, b| if b > a { b } else { a })
    }

    /// Largest amount by which `point` leaves the box.
    pub fn bound_violation(&self, point: &[S]) -> S {
        point
            .iter()
            .enumerate()
            .map(|(j, x)| {
                let below = self.lower[j].clone() - x.clone();
                let above = x.clone() - self.upper[j].clone();
                if below > above {
                    below
                } else {
                    above
                }
            })
            .fold(S::zero(), |a, b| if b > a { b } else { a })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<S> {
    Optimal { point: Vec<S>, value: S },
    Infeasible,
}

impl<S> LpOutcome<S> {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LpOutcome::Optimal { .. })
    }

    pub fn point(&self) -> Option<&[S]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            LpOutcome::Infeasible => None,
        }
    }
}

/// Backend-independent solving interface.
pub trait LpSolver<S: Scalar> {
    /// Maximizes `objective` (which replaces `lp.objective`) over the feasible
    /// set of `lp`.
    fn maximize(&mut self, lp: &LinearProgram<S>, objective: &[S]) -> Result<LpOutcome<S>, LpError>;

    fn solve(&mut self, lp: &LinearProgram<S>) -> Result<LpOutcome<S>, LpError> {
        self.maximize(lp, &lp.objective)
    }

    fn feasible(&mut self, lp: &LinearProgram<S>) -> Result<bool, LpError> {
        let zero = vec![S::zero(); lp.num_vars()];
        Ok(self.maximize(lp, &zero)?.is_optimal())
    }
}

#[derive(Clone, Debug)]
pub struct LpTolerances<S> {
    pub pivot: S,
    pub feasibility: S,
    pub optimality: S,
    /// Consecutive degenerate pivots tolerated before switching to Bland's rule.
    pub degenerate_pivots: usize,
    pub max_iterations: usize,
}

impl<S: Scalar> Default for LpTolerances<S> {
    fn default() -> Self {
        Self {
            pivot: S::default_pivot_tol(),
            feasibility: S::default_feasibility_tol(),
            optimality: S::default_optimality_tol(),
            degenerate_pivots: 32,
            max_iterations: 50_000,
        }
    }
}

/// Dense bounded-variable primal simplex (two phases, artificial basis).
///
/// When consecutive calls share the same constraints, the last optimal basis
/// is reused as the starting point for the next objective.
#[derive(Clone, Debug)]
pub struct BoundedSimplex<S> {
    tol: LpTolerances<S>,
    warm_start: bool,
    cache: Option<WarmStart<S>>,
}

#[derive(Clone, Debug)]
struct WarmStart<S> {
    eq_matrix: Matrix<S>,
    eq_rhs: Vec<S>,
    lower: Vec<S>,
    upper: Vec<S>,
    tableau: Option<Tableau<S>>,
}

/// Reused bases are refactored from scratch after this many pivots.
const WARM_PIVOT_BUDGET: usize = 400;

impl<S: Scalar> Default for BoundedSimplex<S> {
    fn default() -> Self {
        Self::new(LpTolerances::default())
    }
}

impl<S: Scalar> BoundedSimplex<S> {
    pub fn new(tol: LpTolerances<S>) -> Self {
        Self {
            tol,
            warm_start: true,
            cache: None,
        }
    }

    /// Every call starts from the artificial basis.
    pub fn cold(tol: LpTolerances<S>) -> Self {
        Self {
            tol,
            warm_start: false,
            cache: None,
        }
    }

    pub fn tolerances(&self) -> &LpTolerances<S> {
        &self.tol
    }

    fn cached_start(&self, lp: &LinearProgram<S>) -> Option<Option<Tableau<S>>> {
        let c = self.cache.as_ref()?;
        let same = c.eq_matrix == lp.eq_matrix && c.eq_rhs == lp.eq_rhs && c.lower == lp.lower && c.upper == lp.upper;
        same.then(|| c.tableau.clone())
    }
}

impl<S: Scalar> LpSolver<S> for BoundedSimplex<S> {
    fn maximize(&mut self, lp: &LinearProgram<S>, objective: &[S]) -> Result<LpOutcome<S>, LpError> {
        lp.validate()?;
        if objective.len() != lp.num_vars() {
            return Err(LpError::Invalid("objective length".into()));
        }
        let start = if self.warm_start { self.cached_start(lp) } else { None };
        let mut tab = match start {
            // known infeasible
            Some(None) => return Ok(LpOutcome::Infeasible),
            Some(Some(t)) if t.pivots < WARM_PIVOT_BUDGET => t,
            _ => {
                let mut t = Tableau::new(lp, &self.tol);
                let feasible = t.phase_one(&self.tol)?;
                if self.warm_start {
                    self.cache = Some(WarmStart {
                        eq_matrix: lp.eq_matrix.clone(),
                        eq_rhs: lp.eq_rhs.clone(),
                        lower: lp.lower.clone(),
                        upper: lp.upper.clone(),
                        tableau: feasible.then(|| t.clone()),
                    });
                }
                if !feasible {
                    return Ok(LpOutcome::Infeasible);
                }
                t
            }
        };
        tab.phase_two(objective, &self.tol)?;
        let point = tab.point(lp);
        let scale = S::one() + max_abs(lp.eq_rhs.iter());
        let residual = lp.residual(&point);
        if residual > self.tol.feasibility.clone() * scale {
            self.cache = None;
            return Err(LpError::Numerical(format!(
                "equality residual {residual} after optimization"
            )));
        }
        let value = objective
            .iter()
            .zip(&point)
            .fold(S::zero(), |acc, (c, x)| acc + c.clone() * x.clone());
        if self.warm_start {
            if let Some(cache) = self.cache.as_mut() {
                cache.tableau = Some(tab);
            }
        }
        Ok(LpOutcome::Optimal { point, value })
    }
}

/// Working state over shifted variables `w = v - lower`, with one artificial
/// column per row appended after the structural columns.
#[derive(Clone, Debug)]
struct Tableau<S> {
    rows: usize,
    /// structural columns
    nv: usize,
    /// structural + artificial columns
    cols: usize,
    /// `B^-1 [A' | I]`, row-major
    body: Vec<S>,
    /// row-sign-normalised constraint data for refactoring
    a_signed: Vec<S>,
    rhs_signed: Vec<S>,
    /// values of the basic variables
    beta: Vec<S>,
    basis: Vec<usize>,
    basic_row: Vec<Option<usize>>,
    at_upper: Vec<bool>,
    /// `None` means no upper bound (artificials during phase one)
    range: Vec<Option<S>>,
    reduced: Vec<S>,
    pivots: usize,
    iterations: usize,
}

enum Step {
    Optimal,
    Continue { degenerate: bool },
}

impl<S: Scalar> Tableau<S> {
    fn new(lp: &LinearProgram<S>, _tol: &LpTolerances<S>) -> Self {
        let (rows, nv) = (lp.num_rows(), lp.num_vars());
        let cols = nv + rows;
        let mut body = vec![S::zero(); rows * cols];
        let mut a_signed = vec![S::zero(); rows * nv];
        let mut rhs_signed = Vec::with_capacity(rows);
        for i in 0..rows {
            let shifted = lp
                .eq_matrix
                .row(i)
                .iter()
                .zip(&lp.lower)
                .fold(lp.eq_rhs[i].clone(), |acc, (a, l)| acc - a.clone() * l.clone());
            let flip = shifted < S::zero();
            for j in 0..nv {
                let a = lp.eq_matrix[(i, j)].clone();
                let a = if flip { -a } else { a };
                body[i * cols + j] = a.clone();
                a_signed[i * nv + j] = a;
            }
            body[i * cols + nv + i] = S::one();
            rhs_signed.push(if flip { -shifted } else { shifted });
        }
        let mut range: Vec<Option<S>> = (0..nv)
            .map(|j| Some(lp.upper[j].clone() - lp.lower[j].clone()))
            .collect();
        range.extend((0..rows).map(|_| None));
        let mut basic_row = vec![None; cols];
        for i in 0..rows {
            basic_row[nv + i] = Some(i);
        }
        Self {
            rows,
            nv,
            cols,
            body,
            a_signed,
            beta: rhs_signed.clone(),
            rhs_signed,
            basis: (nv..cols).collect(),
            basic_row,
            at_upper: vec![false; cols],
            range,
            reduced: vec![S::zero(); cols],
            pivots: 0,
            iterations: 0,
        }
    }

    fn at(&self, i: usize, k: usize) -> &S {
        &self.body[i * self.cols + k]
    }

    fn nonbasic_value(&self, k: usize) -> S {
        if self.at_upper[k] {
            self.range[k].clone().unwrap_or_else(S::zero)
        } else {
            S::zero()
        }
    }

    fn set_costs(&mut self, costs: &[S]) {
        for k in 0..self.cols {
            self.reduced[k] = if self.basic_row[k].is_some() {
                S::zero()
            } else {
                let mut d = costs[k].clone();
                for i in 0..self.rows {
                    let cb = &costs[self.basis[i]];
                    if !cb.is_zero() {
                        d = d - cb.clone() * self.at(i, k).clone();
                    }
                }
                d
            };
        }
    }

    /// Returns whether the constraints are feasible.
    fn phase_one(&mut self, tol: &LpTolerances<S>) -> Result<bool, LpError> {
        let mut costs = vec![S::zero(); self.cols];
        for c in costs.iter_mut().skip(self.nv) {
            *c = -S::one();
        }
        self.set_costs(&costs);
        self.optimize(tol)?;
        self.refactor_values();
        let infeasibility = (0..self.rows)
            .filter(|&i| self.basis[i] >= self.nv)
            .fold(S::zero(), |acc, i| acc + self.beta[i].clone().abs());
        let scale = S::one() + max_abs(self.rhs_signed.iter());
        if infeasibility > tol.feasibility.clone() * scale {
            return Ok(false);
        }
        self.evict_artificials(tol);
        Ok(true)
    }

    /// Pivots zero-valued artificials out of the basis where possible and pins
    /// every artificial to zero.
    fn evict_artificials(&mut self, tol: &LpTolerances<S>) {
        for r in 0..self.rows {
            if self.basis[r] < self.nv {
                continue;
            }
            let mut best: Option<(usize, S)> = None;
            for k in 0..self.nv {
                if self.basic_row[k].is_some() {
                    continue;
                }
                let a = self.at(r, k).abs();
                if a > tol.pivot && best.as_ref().is_none_or(|(_, b)| a > *b) {
                    best = Some((k, a));
                }
            }
            if let Some((k, _)) = best {
                let value = self.nonbasic_value(k);
                let leaving = self.basis[r];
                self.pivot(r, k);
                self.beta[r] = value;
                self.at_upper[k] = false;
                self.at_upper[leaving] = false;
            }
        }
        for k in self.nv..self.cols {
            self.range[k] = Some(S::zero());
        }
        self.refactor_values();
    }

    fn phase_two(&mut self, objective: &[S], tol: &LpTolerances<S>) -> Result<(), LpError> {
        if objective.iter().all(Zero::is_zero) {
            return Ok(());
        }
        let mut costs = objective.to_vec();
        costs.resize(self.cols, S::zero());
        self.set_costs(&costs);
        self.optimize(tol)?;
        self.refactor_values();
        Ok(())
    }

    fn optimize(&mut self, tol: &LpTolerances<S>) -> Result<(), LpError> {
        let mut degenerate_run = 0usize;
        let mut bland = false;
        self.iterations = 0;
        loop {
            if self.iterations >= tol.max_iterations {
                return Err(LpError::IterationLimit(tol.max_iterations));
            }
            self.iterations += 1;
            match self.step(tol, bland)? {
                Step::Optimal => return Ok(()),
                Step::Continue { degenerate: true } => {
                    degenerate_run += 1;
                    if degenerate_run > tol.degenerate_pivots {
                        bland = true;
                    }
                }
                Step::Continue { degenerate: false } => degenerate_run = 0,
            }
        }
    }

    fn choose_entering(&self, tol: &LpTolerances<S>, bland: bool) -> Option<usize> {
        let mut best: Option<(usize, S)> = None;
        for k in 0..self.cols {
            if self.basic_row[k].is_some() {
                continue;
            }
            if matches!(&self.range[k], Some(r) if r.is_zero()) {
                continue;
            }
            let d = &self.reduced[k];
            let improving = if self.at_upper[k] {
                *d < -tol.optimality.clone()
            } else {
                *d > tol.optimality
            };
            if !improving {
                continue;
            }
            if bland {
                return Some(k);
            }
            let score = d.abs();
            if best.as_ref().is_none_or(|(_, s)| score > *s) {
                best = Some((k, score));
            }
        }
        best.map(|(k, _)| k)
    }

    fn step(&mut self, tol: &LpTolerances<S>, bland: bool) -> Result<Step, LpError> {
        let Some(k) = self.choose_entering(tol, bland) else {
            return Ok(Step::Optimal);
        };
        let increasing = !self.at_upper[k];

        // Ratio test. `theta` is the step length of the entering variable.
        let mut theta: Option<S> = self.range[k].clone();
        let mut leave: Option<(usize, bool, S)> = None; // (row, to_upper, |alpha|)
        for i in 0..self.rows {
            let alpha = self.at(i, k).clone();
            if alpha.abs() <= tol.pivot {
                continue;
            }
            let delta = if increasing { alpha.clone() } else { -alpha.clone() };
            let beta = self.beta[i].clone();
            let (limit, to_upper) = if delta > S::zero() {
                let room = if beta < S::zero() { S::zero() } else { beta };
                (room / delta, false)
            } else {
                match &self.range[self.basis[i]] {
                    Some(r) => {
                        let room = r.clone() - beta;
                        let room = if room < S::zero() { S::zero() } else { room };
                        (room / -delta, true)
                    }
                    None => continue,
                }
            };
            let better = match (&theta, &leave) {
                (None, _) => true,
                (Some(t), _) if limit < *t => true,
                // ties: a bound flip wins; otherwise Bland prefers the smallest
                // basic index and Dantzig the largest pivot
                (Some(t), Some((r, _, a))) if limit == *t => {
                    if bland {
                        self.basis[i] < self.basis[*r]
                    } else {
                        alpha.abs() > *a
                    }
                }
                _ => false,
            };
            if better {
                theta = Some(limit);
                leave = Some((i, to_upper, alpha.abs()));
            }
        }
        let Some(theta) = theta else {
            return Err(LpError::Numerical(format!(
                "unbounded ray along column {k} in a boxed program"
            )));
        };
        let signed_step = if increasing { theta.clone() } else { -theta.clone() };
        if !theta.is_zero() {
            for i in 0..self.rows {
                let a = self.at(i, k).clone();
                if !a.is_zero() {
                    self.beta[i] = self.beta[i].clone() - signed_step.clone() * a;
                }
            }
        }
        let degenerate = theta.is_zero();
        match leave {
            None => {
                self.at_upper[k] = !self.at_upper[k];
            }
            Some((r, to_upper, _)) => {
                let entering_value = if increasing {
                    theta
                } else {
                    self.range[k].clone().expect("at upper implies finite range") - theta
                };
                let leaving = self.basis[r];
                self.pivot(r, k);
                self.beta[r] = entering_value;
                self.at_upper[k] = false;
                self.at_upper[leaving] = to_upper;
                if leaving >= self.nv {
                    // artificials never re-enter
                    self.range[leaving] = Some(S::zero());
                    self.at_upper[leaving] = false;
                }
            }
        }
        Ok(Step::Continue { degenerate })
    }

    fn pivot(&mut self, r: usize, k: usize) {
        let cols = self.cols;
        let p = self.at(r, k).clone();
        for c in 0..cols {
            let v = self.body[r * cols + c].clone() / p.clone();
            self.body[r * cols + c] = v;
        }
        self.body[r * cols + k] = S::one();
        let pivot_row: Vec<S> = self.body[r * cols..(r + 1) * cols].to_vec();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.body[i * cols + k].clone();
            if f.is_zero() {
                continue;
            }
            for (c, pr) in pivot_row.iter().enumerate() {
                if !pr.is_zero() {
                    let v = self.body[i * cols + c].clone() - f.clone() * pr.clone();
                    self.body[i * cols + c] = v;
                }
            }
            self.body[i * cols + k] = S::zero();
        }
        let f = self.reduced[k].clone();
        if !f.is_zero() {
            for (c, pr) in pivot_row.iter().enumerate() {
                if !pr.is_zero() {
                    self.reduced[c] = self.reduced[c].clone() - f.clone() * pr.clone();
                }
            }
        }
        self.reduced[k] = S::zero();
        let leaving = self.basis[r];
        self.basic_row[leaving] = None;
        self.basic_row[k] = Some(r);
        self.basis[r] = k;
        self.pivots += 1;
    }

    /// Recomputes basic values as `B^-1 (b' - N x_N)`; the artificial block of
    /// the tableau holds `B^-1`.
    fn refactor_values(&mut self) {
        let mut adjusted = self.rhs_signed.clone();
        for k in 0..self.nv {
            if self.basic_row[k].is_none() && self.at_upper[k] {
                let v = self.nonbasic_value(k);
                if v.is_zero() {
                    continue;
                }
                for (l, adj) in adjusted.iter_mut().enumerate() {
                    let a = &self.a_signed[l * self.nv + k];
                    if !a.is_zero() {
                        *adj = adj.clone() - a.clone() * v.clone();
                    }
                }
            }
        }
        for i in 0..self.rows {
            let mut v = S::zero();
            for (l, adj) in adjusted.iter().enumerate() {
                let binv = self.at(i, self.nv + l);
                if !binv.is_zero() {
                    v = v + binv.clone() * adj.clone();
                }
            }
            self.beta[i] = v;
        }
    }

    fn point(&self, lp: &LinearProgram<S>) -> Vec<S> {
        (0..self.nv)
            .map(|k| {
                let w = match self.basic_row[k] {
                    Some(i) => self.beta[i].clone(),
                    None => self.nonbasic_value(k),
                };
                let v = lp.lower[k].clone() + w;
                if v < lp.lower[k] {
                    lp.lower[k].clone()
                } else if v > lp.upper[k] {
                    lp.upper[k].clone()
                } else {
                    v
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    fn lp(obj: &[f64], rows: &[Vec<f64>], rhs: &[f64], lo: &[f64], hi: &[f64]) -> LinearProgram<f64> {
        LinearProgram::new(
            obj.to_vec(),
            Matrix::from_rows(rows).unwrap(),
            rhs.to_vec(),
            lo.to_vec(),
            hi.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn maximize_single_variable_on_simplex_row() {
        let p = lp(&[1.0, 0.0], &[vec![1.0, 1.0]], &[1.0], &[0.0, 0.0], &[1.0, 1.0]);
        let out = BoundedSimplex::default().solve(&p).unwrap();
        assert_eq!(
            out,
            LpOutcome::Optimal {
                point: vec![1.0, 0.0],
                value: 1.0
            }
        );
    }

    #[test]
    fn equality_outside_box_is_infeasible() {
        let p = lp(&[0.0], &[vec![1.0]], &[2.0], &[0.0], &[1.0]);
        assert_eq!(BoundedSimplex::default().solve(&p).unwrap(), LpOutcome::Infeasible);
        assert!(!BoundedSimplex::default().feasible(&p).unwrap());
    }

    #[test]
    fn zero_objective_is_a_feasibility_query() {
        let p = lp(
            &[0.0, 0.0, 0.0],
            &[vec![1.0, -1.0, 0.0], vec![0.0, 1.0, 1.0]],
            &[0.0, 1.5],
            &[0.0; 3],
            &[1.0; 3],
        );
        let mut s = BoundedSimplex::default();
        match s.solve(&p).unwrap() {
            LpOutcome::Optimal { point, value } => {
                assert_eq!(value, 0.0);
                assert!(p.residual(&point) < 1e-12);
                assert!(p.bound_violation(&point) <= 0.0);
            }
            LpOutcome::Infeasible => panic!("feasible program reported infeasible"),
        }
        assert!(s.feasible(&p).unwrap());
    }

    #[test]
    fn nonzero_lower_bounds_and_upper_bound_flips() {
        // maximize x + 2y, x + y = 3, 1 <= x <= 2, 0.5 <= y <= 1.5
        let p = lp(&[1.0, 2.0], &[vec![1.0, 1.0]], &[3.0], &[1.0, 0.5], &[2.0, 1.5]);
        let out = BoundedSimplex::default().solve(&p).unwrap();
        let LpOutcome::Optimal { point, value } = out else {
            panic!("expected optimum")
        };
        assert!((value - 4.5).abs() < 1e-12);
        assert!((point[0] - 1.5).abs() < 1e-12 && (point[1] - 1.5).abs() < 1e-12);
    }

    #[test]
    fn redundant_and_empty_rows() {
        let p = lp(
            &[1.0, 1.0],
            &[vec![1.0, 1.0], vec![2.0, 2.0], vec![0.0, 0.0]],
            &[1.0, 2.0, 0.0],
            &[0.0, 0.0],
            &[1.0, 1.0],
        );
        let out = BoundedSimplex::default().solve(&p).unwrap();
        assert!(matches!(out, LpOutcome::Optimal { value, .. } if (value - 1.0).abs() < 1e-12));
        let bad = lp(&[0.0], &[vec![0.0]], &[1.0], &[0.0], &[1.0]);
        assert_eq!(BoundedSimplex::default().solve(&bad).unwrap(), LpOutcome::Infeasible);
    }

    #[test]
    fn rejects_malformed_programs() {
        let err = LinearProgram::new(
            vec![0.0],
            Matrix::from_rows(&[vec![1.0]]).unwrap(),
            vec![1.0],
            vec![2.0],
            vec![1.0],
        );
        assert!(matches!(err, Err(LpError::Invalid(_))));
        let err = LinearProgram::new(
            vec![0.0, 1.0],
            Matrix::from_rows(&[vec![1.0]]).unwrap(),
            vec![1.0],
            vec![0.0],
            vec![1.0],
        );
        assert!(matches!(err, Err(LpError::Invalid(_))));
    }

    #[test]
    fn exact_rational_solve() {
        let r = |n, d| ratio(n, d);
        let p = LinearProgram::new(
            vec![r(1, 1), r(1, 1), r(0, 1)],
            Matrix::from_rows(&[vec![r(1, 1), r(2, 1), r(1, 1)], vec![r(1, 3), r(0, 1), r(-1, 1)]]).unwrap(),
            vec![r(1, 1), r(0, 1)],
            vec![r(0, 1); 3],
            vec![r(1, 1); 3],
        )
        .unwrap();
        let out = BoundedSimplex::<Rational>::default().solve(&p).unwrap();
        let LpOutcome::Optimal { point, value } = out else {
            panic!("expected optimum")
        };
        assert_eq!(p.residual(&point), r(0, 1));
        // x + 2y + z = 1, z = x/3 -> x(4/3) + 2y = 1; maximize x + y -> y = 0, x = 3/4
        assert_eq!(value, r(3, 4));
    }

    #[test]
    fn warm_and_cold_solvers_agree_on_values() {
        let p = lp(
            &[0.0; 4],
            &[vec![1.0, 1.0, 1.0, 1.0], vec![1.0, -1.0, 0.0, 0.5]],
            &[2.0, 0.25],
            &[0.0; 4],
            &[1.0; 4],
        );
        let mut warm = BoundedSimplex::default();
        for j in 0..4 {
            let mut c = vec![0.0; 4];
            c[j] = 1.0;
            let a = warm.maximize(&p, &c).unwrap();
            let b = BoundedSimplex::cold(LpTolerances::default()).maximize(&p, &c).unwrap();
            match (a, b) {
                (LpOutcome::Optimal { value: x, .. }, LpOutcome::Optimal { value: y, .. }) => {
                    assert!((x - y).abs() < 1e-12)
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }
}
