//! Reaction network data model: complexes, Kirchhoff matrices, reaction graph
//! structures and their bit-sequence encoding, and mass-action simulation.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{max_abs, powu, Scalar};

/// Directed reaction `C_source -> C_target`. Indices are 0-based; the textual
/// form is 1-based (`"2->6"`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
}

impl Edge {
    pub const fn new(source: usize, target: usize) -> Self {
        Self { source, target }
    }

    /// Builds an edge from 1-based complex labels.
    pub fn one_based(source: usize, target: usize) -> Self {
        Self::new(source - 1, target - 1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.source + 1, self.target + 1)
    }
}

impl FromStr for Edge {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (a, b) = s
            .split_once("->")
            .ok_or_else(|| format!("expected `i->j`, got `{s}`"))?;
        let parse = |t: &str| -> std::result::Result<usize, String> {
            match t.trim().parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v),
                _ => Err(format!("invalid complex index `{}` in `{s}`", t.trim())),
            }
        };
        let (a, b) = (parse(a)?, parse(b)?);
        if a == b {
            return Err(format!("loop `{s}` is not a reaction"));
        }
        Ok(Edge::one_based(a, b))
    }
}

/// Every ordered pair of distinct complexes, source-major.
pub fn all_edges(m: usize) -> impl Iterator<Item = Edge> {
    (0..m).flat_map(move |s| (0..m).filter(move |&t| t != s).map(move |t| Edge::new(s, t)))
}

/// Unweighted reaction graph: a set of loop-free directed edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphStructure {
    edges: BTreeSet<Edge>,
}

impl GraphStructure {
    pub fn new() -> Self {
        Self::default()
    }

    /// Complete digraph on `m` complexes.
    pub fn complete(m: usize) -> Self {
        all_edges(m).collect()
    }

    /// Inserts an edge; loops are ignored.
    pub fn insert(&mut self, edge: Edge) -> bool {
        edge.source != edge.target && self.edges.insert(edge)
    }

    pub fn remove(&mut self, edge: &Edge) -> bool {
        self.edges.remove(edge)
    }

    pub fn contains(&self, edge: &Edge) -> bool {
        self.edges.contains(edge)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter()
    }

    pub fn is_subset(&self, other: &GraphStructure) -> bool {
        self.edges.is_subset(&other.edges)
    }

    pub fn union(&self, other: &GraphStructure) -> GraphStructure {
        self.edges.union(&other.edges).copied().collect()
    }

    pub fn intersection(&self, other: &GraphStructure) -> GraphStructure {
        self.edges.intersection(&other.edges).copied().collect()
    }

    pub fn difference(&self, other: &GraphStructure) -> GraphStructure {
        self.edges.difference(&other.edges).copied().collect()
    }

    /// Edges leaving complex `source`, i.e. the support of Kirchhoff column `source`.
    pub fn column(&self, source: usize) -> GraphStructure {
        self.edges
            .range(Edge::new(source, 0)..Edge::new(source + 1, 0))
            .copied()
            .collect()
    }

    /// Largest complex index referenced plus one.
    pub fn vertex_bound(&self) -> usize {
        self.edges.iter().map(|e| e.source.max(e.target) + 1).max().unwrap_or(0)
    }
}

impl FromIterator<Edge> for GraphStructure {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        let mut g = GraphStructure::new();
        for e in iter {
            g.insert(e);
        }
        g
    }
}

impl<'a> IntoIterator for &'a GraphStructure {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.edges.iter()
    }
}

impl fmt::Display for GraphStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.edges.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// A kinetic polynomial system `dx/dt = M psi(x)` fixed on a complex set `Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct CrnModel<S> {
    species: Vec<String>,
    complexes: Matrix<u32>,
    coefficients: Matrix<S>,
}

impl<S: Scalar> CrnModel<S> {
    /// `complexes` is `n x m` (one column per complex), `coefficients` is `M`, `n x m`.
    pub fn new(species: Vec<String>, complexes: Matrix<u32>, coefficients: Matrix<S>) -> Result<Self> {
        let n = species.len();
        if complexes.rows() != n {
            return Err(Error::Dimension(format!(
                "{} species but complex matrix has {} rows",
                n,
                complexes.rows()
            )));
        }
        if coefficients.rows() != n || coefficients.cols() != complexes.cols() {
            return Err(Error::Dimension(format!(
                "coefficient matrix is {}x{}, expected {}x{}",
                coefficients.rows(),
                coefficients.cols(),
                n,
                complexes.cols()
            )));
        }
        let m = complexes.cols();
        let mut seen: HashMap<Vec<u32>, usize> = HashMap::with_capacity(m);
        for j in 0..m {
            if let Some(first) = seen.insert(complexes.column(j), j) {
                return Err(Error::DuplicateComplex {
                    first: first + 1,
                    second: j + 1,
                });
            }
        }
        Ok(Self {
            species,
            complexes,
            coefficients,
        })
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    /// Complex composition matrix `Y` (`n x m`).
    pub fn complexes(&self) -> &Matrix<u32> {
        &self.complexes
    }

    /// Coefficient matrix `M` (`n x m`).
    pub fn coefficients(&self) -> &Matrix<S> {
        &self.coefficients
    }

    pub fn num_species(&self) -> usize {
        self.species.len()
    }

    pub fn num_complexes(&self) -> usize {
        self.complexes.cols()
    }

    /// Stoichiometric coefficient of species `i` in complex `j`.
    pub fn stoich(&self, i: usize, j: usize) -> u32 {
        self.complexes[(i, j)]
    }

    /// Human-readable complex such as `2X1+X2`, or `0` for the zero complex.
    pub fn complex_label(&self, j: usize) -> String {
        let terms: Vec<String> = (0..self.num_species())
            .filter_map(|i| match self.stoich(i, j) {
                0 => None,
                1 => Some(self.species[i].clone()),
                c => Some(format!("{c}{}", self.species[i])),
            })
            .collect();
        if terms.is_empty() {
            "0".to_owned()
        } else {
            terms.join("+")
        }
    }

    /// Monomial map `psi_j(x) = prod_i x_i^{Y_ij}` with `0^0 = 1`.
    pub fn psi(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() != self.num_species() {
            return Err(Error::Dimension(format!(
                "state has length {}, expected {}",
                x.len(),
                self.num_species()
            )));
        }
        Ok(self.psi_unchecked(x))
    }

    fn psi_unchecked(&self, x: &[S]) -> Vec<S> {
        (0..self.num_complexes())
            .map(|j| {
                x.iter()
                    .enumerate()
                    .fold(S::one(), |acc, (i, xi)| acc * powu(xi, self.stoich(i, j)))
            })
            .collect()
    }
}

/// Validates and assembles a model from one exponent vector per complex.
pub fn build_network<S: Scalar>(
    species: &[&str],
    complexes: &[Vec<i64>],
    coefficients: &[Vec<S>],
) -> Result<CrnModel<S>> {
    let n = species.len();
    let m = complexes.len();
    let mut y = Matrix::filled(n, m, 0u32);
    for (j, c) in complexes.iter().enumerate() {
        if c.len() != n {
            return Err(Error::Dimension(format!(
                "complex C{} has {} coefficients, expected {}",
                j + 1,
                c.len(),
                n
            )));
        }
        for (i, &a) in c.iter().enumerate() {
            y[(i, j)] = u32::try_from(a).map_err(|_| Error::InvalidExponent {
                complex: j + 1,
                value: a as f64,
            })?;
        }
    }
    let mat = Matrix::from_rows(coefficients)
        .ok_or_else(|| Error::Dimension("coefficient rows have different lengths".into()))?;
    let mat = if coefficients.is_empty() {
        Matrix::filled(0, m, S::zero())
    } else {
        mat
    };
    CrnModel::new(species.iter().map(|s| s.to_string()).collect(), y, mat)
}

/// Converts a parsed stoichiometric coefficient, rejecting negative and
/// fractional values.
pub fn exponent_from_f64(complex: usize, value: f64) -> Result<i64> {
    if value.is_finite() && value >= 0.0 && value.fract() == 0.0 && value <= u32::MAX as f64 {
        Ok(value as i64)
    } else {
        Err(Error::InvalidExponent { complex, value })
    }
}

/// One parametric witness of a structure: the diagonal of `T^-1` and the
/// Kirchhoff matrix `A_k` satisfying `Y A_k = T^-1 M`.
#[derive(Clone, Debug, PartialEq)]
pub struct Realization<S> {
    pub t_inv: Vec<S>,
    pub a_k: Matrix<S>,
}

impl<S: Scalar> Realization<S> {
    /// Builds the Kirchhoff matrix from off-diagonal rates; diagonal entries are
    /// the negated column sums.
    pub fn from_rates(t_inv: Vec<S>, m: usize, rates: impl IntoIterator<Item = (Edge, S)>) -> Self {
        let mut a_k = Matrix::filled(m, m, S::zero());
        for (e, k) in rates {
            a_k[(e.target, e.source)] = k.clone();
            let d = a_k[(e.source, e.source)].clone() - k;
            a_k[(e.source, e.source)] = d;
        }
        Self { t_inv, a_k }
    }

    pub fn structure(&self, tol: &S) -> GraphStructure {
        structure_of(&self.a_k, tol)
    }

    /// `max |diag(t_inv) M - Y A_k|`.
    pub fn residual(&self, model: &CrnModel<S>) -> S {
        let (n, m) = (model.num_species(), model.num_complexes());
        let mut worst = S::zero();
        for i in 0..n {
            for j in 0..m {
                let mut ya = S::zero();
                for l in 0..m {
                    let y = model.stoich(i, l);
                    if y != 0 {
                        ya = ya + S::from_u32(y).unwrap() * self.a_k[(l, j)].clone();
                    }
                }
                let r = (self.t_inv[i].clone() * model.coefficients()[(i, j)].clone() - ya).abs();
                if r > worst {
                    worst = r;
                }
            }
        }
        worst
    }

    /// `max_j |sum_i [A_k]_ij|`.
    pub fn column_sum_error(&self) -> S {
        let m = self.a_k.cols();
        (0..m)
            .map(|j| (0..m).fold(S::zero(), |acc, i| acc + self.a_k[(i, j)].clone()).abs())
            .fold(S::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn min_off_diagonal(&self) -> S {
        let m = self.a_k.cols();
        let mut lo: Option<S> = None;
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    let v = self.a_k[(i, j)].clone();
                    if lo.as_ref().is_none_or(|l| v < *l) {
                        lo = Some(v);
                    }
                }
            }
        }
        lo.unwrap_or_else(S::zero)
    }

    pub fn max_abs_entry(&self) -> S {
        max_abs(self.a_k.iter())
    }

    /// Joint positive rescaling, which maps realizations to realizations.
    pub fn scaled(&self, c: &S) -> Self {
        Self {
            t_inv: self.t_inv.iter().map(|t| t.clone() * c.clone()).collect(),
            a_k: self.a_k.map(|a| a.clone() * c.clone()),
        }
    }

    /// Residual, column-conservation and sign checks at the given relative
    /// tolerance.
    pub fn is_valid_for(&self, model: &CrnModel<S>, rel_tol: &S) -> bool {
        let scale = S::one() + max_abs(model.coefficients().iter());
        let a_scale = self.max_abs_entry();
        self.t_inv.iter().all(|t| t > &S::zero())
            && self.residual(model) <= rel_tol.clone() * scale
            && self.column_sum_error() <= rel_tol.clone() * a_scale.clone()
            && self.min_off_diagonal() >= -(rel_tol.clone() * a_scale)
    }
}

/// Edge `i -> j` is present iff `[a_k]_{ji} > tol`.
pub fn structure_of<S: Scalar>(a_k: &Matrix<S>, tol: &S) -> GraphStructure {
    let m = a_k.cols();
    all_edges(m).filter(|e| a_k[(e.target, e.source)] > *tol).collect()
}

/// The actual rate coefficients `A'_k = A_k Phi'_T`, where
/// `[Phi'_T]_jj = psi_j(T 1)` and `T = diag(t_inv)^-1`.
pub fn recover_rate_coefficients<S: Scalar>(model: &CrnModel<S>, real: &Realization<S>) -> Matrix<S> {
    let t: Vec<S> = real.t_inv.iter().map(|v| S::one() / v.clone()).collect();
    let phi = model.psi_unchecked(&t);
    let m = model.num_complexes();
    let mut out = real.a_k.clone();
    for i in 0..m {
        for (j, p) in phi.iter().enumerate() {
            out[(i, j)] = out[(i, j)].clone() * p.clone();
        }
    }
    out
}

/// Deterministic ordering of the non-core edges of a dense structure; bit `i`
/// of a [`BitSeq`] stands for `edges()[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrdering {
    edges: Vec<Edge>,
    core: GraphStructure,
    position: HashMap<Edge, usize>,
}

impl EdgeOrdering {
    /// Non-core edges are ordered by source complex, then target complex.
    pub fn new(dense: &GraphStructure, core: &GraphStructure) -> Result<Self> {
        if let Some(e) = core.iter().find(|e| !dense.contains(e)) {
            return Err(Error::EdgeOutsideDense(*e));
        }
        let edges: Vec<Edge> = dense.difference(core).iter().copied().collect();
        let position = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
        Ok(Self {
            edges,
            core: core.clone(),
            position,
        })
    }

    /// Number of free (non-core) edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> Edge {
        self.edges[i]
    }

    pub fn position(&self, e: &Edge) -> Option<usize> {
        self.position.get(e).copied()
    }

    pub fn core(&self) -> &GraphStructure {
        &self.core
    }

    pub fn dense(&self) -> GraphStructure {
        self.core.union(&self.edges.iter().copied().collect())
    }
}

/// Fixed-length binary word; bit `i` records the presence of edge `e_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitSeq {
    len: usize,
    words: Vec<u64>,
}

impl BitSeq {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut s = Self::zeros(len);
        for i in 0..len {
            s.set(i, true);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn with(&self, i: usize, value: bool) -> Self {
        let mut s = self.clone();
        s.set(i, value);
        s
    }

    /// Population count `e(R)`.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Bitwise `self <= other`.
    pub fn is_subset_of(&self, other: &BitSeq) -> bool {
        self.len == other.len && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Sequence whose bits `0..len` are the low bits of `mask`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= 64);
        let mut s = Self::zeros(len);
        if len > 0 {
            s.words[0] = if len == 64 { mask } else { mask & ((1u64 << len) - 1) };
        }
        s
    }
}

impl fmt::Display for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitSeq {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let mut seq = BitSeq::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => seq.set(i, true),
                _ => return Err(format!("invalid bit `{c}`")),
            }
        }
        Ok(seq)
    }
}

pub fn encode(structure: &GraphStructure, ord: &EdgeOrdering) -> Result<BitSeq> {
    if let Some(e) = ord.core().iter().find(|e| !structure.contains(e)) {
        return Err(Error::MissingCoreEdge(*e));
    }
    let mut bits = BitSeq::zeros(ord.len());
    for e in structure {
        match ord.position(e) {
            Some(i) => bits.set(i, true),
            None if ord.core().contains(e) => {}
            None => return Err(Error::EdgeOutsideDense(*e)),
        }
    }
    Ok(bits)
}

pub fn decode(bits: &BitSeq, ord: &EdgeOrdering) -> Result<GraphStructure> {
    if bits.len() != ord.len() {
        return Err(Error::SequenceLength {
            expected: ord.len(),
            found: bits.len(),
        });
    }
    let mut g = ord.core().clone();
    for i in bits.ones_iter() {
        g.insert(ord.edge(i));
    }
    Ok(g)
}

/// Weakly connected components over complexes incident to at least one edge.
/// Classes are sorted and listed by their smallest complex.
pub fn linkage_classes(structure: &GraphStructure) -> Vec<Vec<usize>> {
    let bound = structure.vertex_bound();
    let mut parent: Vec<usize> = (0..bound).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut incident = vec![false; bound];
    for e in structure {
        incident[e.source] = true;
        incident[e.target] = true;
        let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for v in (0..bound).filter(|&v| incident[v]) {
        let root = find(&mut parent, v);
        let k = *slot.entry(root).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[k].push(v);
    }
    classes
}

pub fn weakly_connected(structure: &GraphStructure) -> bool {
    linkage_classes(structure).len() == 1
}

/// Right-hand side used by [`simulate`].
#[derive(Debug)]
pub enum Dynamics<'a, S> {
    /// `dx/dt = M psi(x)`.
    Kinetic,
    /// `dx/dt = Y A psi(x)` with the given Kirchhoff matrix of actual rates.
    MassAction(&'a Matrix<S>),
}

impl<S> Clone for Dynamics<'_, S> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<S> Copy for Dynamics<'_, S> {}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory<S> {
    pub times: Vec<S>,
    pub states: Vec<Vec<S>>,
}

impl<S: Scalar> CrnModel<S> {
    pub fn vector_field(&self, dynamics: Dynamics<'_, S>, x: &[S]) -> Vec<S> {
        let psi = self.psi_unchecked(x);
        let (n, m) = (self.num_species(), self.num_complexes());
        let rates: Vec<S> = match dynamics {
            Dynamics::Kinetic => psi,
            Dynamics::MassAction(a) => (0..m)
                .map(|l| (0..m).fold(S::zero(), |acc, j| acc + a[(l, j)].clone() * psi[j].clone()))
                .collect(),
        };
        let weights = |i: usize, j: usize| -> S {
            match dynamics {
                Dynamics::Kinetic => self.coefficients[(i, j)].clone(),
                Dynamics::MassAction(_) => S::from_u32(self.stoich(i, j)).unwrap(),
            }
        };
        (0..n)
            .map(|i| (0..m).fold(S::zero(), |acc, j| acc + weights(i, j) * rates[j].clone()))
            .collect()
    }
}

/// Fixed-step classical Runge-Kutta integration sampled at multiples of `dt`.
pub fn simulate<S: Scalar>(
    model: &CrnModel<S>,
    dynamics: Dynamics<'_, S>,
    x0: &[S],
    dt: &S,
    t_end: &S,
) -> Result<Trajectory<S>> {
    if x0.len() != model.num_species() {
        return Err(Error::Dimension(format!(
            "initial state has length {}, expected {}",
            x0.len(),
            model.num_species()
        )));
    }
    if let Dynamics::MassAction(a) = dynamics {
        let m = model.num_complexes();
        if a.rows() != m || a.cols() != m {
            return Err(Error::Dimension(format!("Kirchhoff matrix must be {m}x{m}")));
        }
    }
    if *dt <= S::zero() || *t_end < S::zero() {
        return Err(Error::InvalidOptions("need dt > 0 and t_end >= 0".into()));
    }
    if x0.iter().any(|v| *v <= S::zero()) {
        return Err(Error::InvalidOptions("initial state must be positive".into()));
    }
    let steps = (t_end.to_f64_lossy() / dt.to_f64_lossy() + 1e-9).floor() as usize;
    let two = S::one() + S::one();
    let six = S::from_u32(6).unwrap();
    let half = dt.clone() / two.clone();
    let axpy = |x: &[S], k: &[S], h: &S| -> Vec<S> {
        x.iter()
            .zip(k)
            .map(|(a, b)| a.clone() + h.clone() * b.clone())
            .collect()
    };

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut x = x0.to_vec();
    times.push(S::zero());
    states.push(x.clone());
    for step in 1..=steps {
        let k1 = model.vector_field(dynamics, &x);
        let k2 = model.vector_field(dynamics, &axpy(&x, &k1, &half));
        let k3 = model.vector_field(dynamics, &axpy(&x, &k2, &half));
        let k4 = model.vector_field(dynamics, &axpy(&x, &k3, dt));
        x = (0..x.len())
            .map(|i| {
                let incr = k1[i].clone() + two.clone() * (k2[i].clone() + k3[i].clone()) + k4[i].clone();
                x[i].clone() + dt.clone() * incr / six.clone()
            })
            .collect();
        let t = dt.clone() * S::from_usize_exact(step);
        if x.iter().any(|v| !v.is_finite_value()) {
            return Err(Error::NonFiniteState { time: t.to_f64_lossy() });
        }
        times.push(t);
        states.push(x.clone());
    }
    Ok(Trajectory { times, states })
}
