//! Exhaustive enumeration of realizable reaction graph structures.
//!
//! Starting from the dense structure, every discovered structure `R` is probed
//! once per present non-core edge `e_i` for the dense realization inside
//! `R - e_i`. New structures are deduplicated and pushed on the stack for
//! their edge count; `R` is emitted once all of its probes have finished. The
//! super-structure property makes this complete, and at most `e(R)` probes
//! separate two emissions in single-worker mode.
//!
//! Probes are independent, so a pool of workers consumes `(R, i)` tasks; only
//! the dedupe store orders them, and the emitted set does not depend on the
//! number of workers.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use parking_lot::{Condvar, Mutex};

use crate::error::{Error, Result};
use crate::model::{decode, encode, BitSeq, CrnModel, Edge, EdgeOrdering, GraphStructure, Realization};
use crate::realization::{
    column_core_edges, column_dense, core_edges, dense_realization, dyneq_column_without_edge, max_support,
    max_support_counted, probe_linconj, ConstraintOptions,
};
use crate::scalar::Scalar;

/// Set of discovered sequences with atomic insert-if-absent.
#[derive(Debug, Default)]
pub struct ExistStore {
    seen: Mutex<HashSet<BitSeq>>,
}

impl ExistStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `true` when `seq` was not present before.
    pub fn insert_if_absent(&self, seq: &BitSeq) -> bool {
        let mut seen = self.seen.lock();
        if seen.contains(seq) {
            false
        } else {
            seen.insert(seq.clone())
        }
    }

    pub fn contains(&self, seq: &BitSeq) -> bool {
        self.seen.lock().contains(seq)
    }

    pub fn len(&self) -> usize {
        self.seen.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn snapshot(&self) -> BTreeSet<BitSeq> {
        self.seen.lock().iter().cloned().collect()
    }
}

/// Worklists `S(0..=N)`; a sequence lives in `S(k)` only if it has `k` ones.
#[derive(Debug)]
pub struct LevelStacks<T> {
    stacks: Vec<Vec<(BitSeq, T)>>,
}

impl<T> LevelStacks<T> {
    pub fn new(len: usize) -> Self {
        Self {
            stacks: (0..=len).map(|_| Vec::new()).collect(),
        }
    }

    pub fn push(&mut self, seq: BitSeq, payload: T) {
        let k = seq.count_ones();
        self.stacks[k].push((seq, payload));
    }

    /// Pops the most recently pushed entry of the highest non-empty level.
    pub fn pop_highest(&mut self) -> Option<(usize, BitSeq, T)> {
        let k = self.stacks.iter().rposition(|s| !s.is_empty())?;
        let (seq, payload) = self.stacks[k].pop()?;
        Some((k, seq, payload))
    }

    pub fn level_len(&self, k: usize) -> usize {
        self.stacks[k].len()
    }

    pub fn is_empty(&self) -> bool {
        self.stacks.iter().all(Vec::is_empty)
    }
}

/// Per-column dedupe stores for dynamical equivalence.
#[derive(Debug)]
pub struct ColumnExistStore {
    pub orderings: Vec<EdgeOrdering>,
    pub columns: Vec<ExistStore>,
}

impl ColumnExistStore {
    pub fn new(orderings: Vec<EdgeOrdering>) -> Self {
        let columns = orderings.iter().map(|_| ExistStore::new()).collect();
        Self { orderings, columns }
    }

    /// Decoded column structures, sorted.
    pub fn column_structures(&self, j: usize) -> Result<Vec<GraphStructure>> {
        self.columns[j]
            .snapshot()
            .iter()
            .map(|s| decode(s, &self.orderings[j]))
            .collect()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Progress {
    pub found: usize,
    pub lp_solves: u64,
    pub elapsed: Duration,
}

pub type ProgressHook = Box<dyn FnMut(Progress) + Send>;

pub struct EnumerationOptions {
    /// Number of worker threads; `0` means one per available core.
    pub workers: usize,
    /// Compute core reactions up front. Without it every dense edge is a bit.
    pub compute_core: bool,
    /// Attach a witness realization to every emission.
    pub stream_witnesses: bool,
    /// Called at most once per second.
    pub progress: Option<ProgressHook>,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            workers: 1,
            compute_core: true,
            stream_witnesses: false,
            progress: None,
        }
    }
}

impl EnumerationOptions {
    pub fn with_workers(workers: usize) -> Self {
        Self {
            workers,
            ..Self::default()
        }
    }

    fn worker_count(&self) -> usize {
        match self.workers {
            0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
            w => w,
        }
    }
}

/// One reported structure.
#[derive(Clone, Debug)]
pub struct Emission<S> {
    pub seq: BitSeq,
    pub structure: GraphStructure,
    pub witness: Option<Realization<S>>,
}

#[derive(Clone, Debug)]
pub struct EnumerationSummary {
    pub total: usize,
    /// Number of structures per total reaction count.
    pub histogram: BTreeMap<usize, usize>,
    pub core: GraphStructure,
    pub dense: GraphStructure,
    pub ordering: EdgeOrdering,
    /// LP solves spent on the dense structure and the core edges.
    pub setup_lp_solves: u64,
    /// LP solves spent in exclusion probes.
    pub lp_solves: u64,
    pub probes: u64,
    pub max_probes_between_emissions: u64,
    pub max_lp_solves_between_emissions: u64,
    /// Per-column structure counts (dynamical equivalence only).
    pub column_counts: Vec<usize>,
    pub workers: usize,
    pub wall_time: Duration,
}

/// Probe result: the discovered sequence with its payload, and LP solves used.
type ProbeResult<W> = Result<(Option<(BitSeq, W)>, usize)>;

#[derive(Debug, Default)]
struct ExploreStats {
    emitted: usize,
    lp_solves: u64,
    probes: u64,
    max_probe_gap: u64,
    max_lp_gap: u64,
}

struct InFlight<W> {
    seq: BitSeq,
    payload: Mutex<Option<W>>,
    remaining: AtomicUsize,
}

struct Sched<W> {
    stacks: LevelStacks<W>,
    tasks: VecDeque<(Arc<InFlight<W>>, usize)>,
    /// popped but not yet emitted
    in_flight: usize,
    failure: Option<Error>,
}

struct Emitter<W, E> {
    emit: E,
    progress: Option<ProgressHook>,
    started: Instant,
    last_report: Instant,
    emitted: usize,
    last_probes: u64,
    last_lp: u64,
    max_probe_gap: u64,
    max_lp_gap: u64,
    _payload: std::marker::PhantomData<fn(W)>,
}

struct Engine<W, P, E> {
    sched: Mutex<Sched<W>>,
    wake: Condvar,
    exist: ExistStore,
    probe: P,
    emitter: Mutex<Emitter<W, E>>,
    lp_solves: AtomicU64,
    probes: AtomicU64,
}

enum Work<W> {
    Probe(Arc<InFlight<W>>, usize),
    Leaf(BitSeq, W),
}

impl<W, P, E> Engine<W, P, E>
where
    W: Send,
    P: Fn(&BitSeq, usize) -> ProbeResult<W> + Sync,
    E: FnMut(BitSeq, W) + Send,
{
    fn next_work(&self) -> Option<Work<W>> {
        let mut g = self.sched.lock();
        loop {
            if g.failure.is_some() {
                return None;
            }
            if let Some((fl, i)) = g.tasks.pop_front() {
                return Some(Work::Probe(fl, i));
            }
            if let Some((k, seq, payload)) = g.stacks.pop_highest() {
                debug_assert_eq!(seq.count_ones(), k);
                g.in_flight += 1;
                if k == 0 {
                    return Some(Work::Leaf(seq, payload));
                }
                let fl = Arc::new(InFlight {
                    payload: Mutex::new(Some(payload)),
                    remaining: AtomicUsize::new(k),
                    seq,
                });
                for i in fl.seq.ones_iter() {
                    g.tasks.push_back((Arc::clone(&fl), i));
                }
                self.wake.notify_all();
                continue;
            }
            if g.in_flight == 0 {
                self.wake.notify_all();
                return None;
            }
            self.wake.wait(&mut g);
        }
    }

    fn emit(&self, seq: BitSeq, payload: W) {
        {
            let mut em = self.emitter.lock();
            let probes = self.probes.load(Ordering::SeqCst);
            let lp = self.lp_solves.load(Ordering::SeqCst);
            em.max_probe_gap = em.max_probe_gap.max(probes - em.last_probes);
            em.max_lp_gap = em.max_lp_gap.max(lp - em.last_lp);
            em.last_probes = probes;
            em.last_lp = lp;
            em.emitted += 1;
            (em.emit)(seq, payload);
            if em.last_report.elapsed() >= Duration::from_secs(1) {
                em.last_report = Instant::now();
                let report = Progress {
                    found: em.emitted,
                    lp_solves: lp,
                    elapsed: em.started.elapsed(),
                };
                if let Some(hook) = em.progress.as_mut() {
                    hook(report);
                }
            }
        }
        let mut g = self.sched.lock();
        g.in_flight -= 1;
        if g.in_flight == 0 {
            self.wake.notify_all();
        }
    }

    fn fail(&self, err: Error) {
        let mut g = self.sched.lock();
        if g.failure.is_none() {
            g.failure = Some(err);
        }
        self.wake.notify_all();
    }

    fn run_worker(&self) {
        while let Some(work) = self.next_work() {
            match work {
                Work::Leaf(seq, payload) => self.emit(seq, payload),
                Work::Probe(fl, i) => {
                    match (self.probe)(&fl.seq, i) {
                        Ok((found, solves)) => {
                            self.lp_solves.fetch_add(solves as u64, Ordering::SeqCst);
                            self.probes.fetch_add(1, Ordering::SeqCst);
                            if let Some((u, w)) = found {
                                if self.exist.insert_if_absent(&u) {
                                    self.sched.lock().stacks.push(u, w);
                                    self.wake.notify_one();
                                }
                            }
                        }
                        Err(e) => {
                            self.fail(e);
                            return;
                        }
                    }
                    if fl.remaining.fetch_sub(1, Ordering::AcqRel) == 1 {
                        let payload = fl.payload.lock().take().expect("payload taken once");
                        self.emit(fl.seq.clone(), payload);
                    }
                }
            }
        }
    }
}

/// Runs the level-stack search from `root` over sequences of length `len`.
fn explore<W, P, E>(
    len: usize,
    root: W,
    workers: usize,
    probe: P,
    emit: E,
    progress: Option<ProgressHook>,
) -> Result<(ExploreStats, ExistStore)>
where
    W: Send,
    P: Fn(&BitSeq, usize) -> ProbeResult<W> + Sync,
    E: FnMut(BitSeq, W) + Send,
{
    let d = BitSeq::ones(len);
    let exist = ExistStore::new();
    exist.insert_if_absent(&d);
    let mut stacks = LevelStacks::new(len);
    stacks.push(d, root);
    let now = Instant::now();
    let engine = Engine {
        sched: Mutex::new(Sched {
            stacks,
            tasks: VecDeque::new(),
            in_flight: 0,
            failure: None,
        }),
        wake: Condvar::new(),
        exist,
        probe,
        emitter: Mutex::new(Emitter {
            emit,
            progress,
            started: now,
            last_report: now,
            emitted: 0,
            last_probes: 0,
            last_lp: 0,
            max_probe_gap: 0,
            max_lp_gap: 0,
            _payload: std::marker::PhantomData,
        }),
        lp_solves: AtomicU64::new(0),
        probes: AtomicU64::new(0),
    };
    if workers <= 1 {
        engine.run_worker();
    } else {
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| engine.run_worker());
            }
        });
    }
    let Engine {
        sched,
        exist,
        emitter,
        lp_solves,
        probes,
        ..
    } = engine;
    let em = emitter.into_inner();
    if let Some(err) = sched.into_inner().failure {
        return Err(Error::Interrupted {
            emitted: em.emitted,
            source: Box::new(err),
        });
    }
    let stats = ExploreStats {
        emitted: em.emitted,
        lp_solves: lp_solves.into_inner(),
        probes: probes.into_inner(),
        max_probe_gap: em.max_probe_gap,
        max_lp_gap: em.max_lp_gap,
    };
    Ok((stats, exist))
}

/// All linearly conjugate structures under `opts`. The sink is called once
/// per structure, serialized.
pub fn enumerate_linconj<S, F>(
    model: &CrnModel<S>,
    opts: &ConstraintOptions<S>,
    mut eopts: EnumerationOptions,
    mut sink: F,
) -> Result<EnumerationSummary>
where
    S: Scalar,
    F: FnMut(Emission<S>) + Send,
{
    let started = Instant::now();
    let dense = dense_realization(model, opts)?;
    let mut setup = dense.lp_solves as u64;
    let core = if eopts.compute_core {
        let mut counted = 0u64;
        let core = count_core(model, &dense.structure, opts, &mut counted)?;
        setup += counted;
        core
    } else {
        GraphStructure::new()
    };
    let ord = EdgeOrdering::new(&dense.structure, &core)?;
    let witnesses = eopts.stream_witnesses;
    let workers = eopts.worker_count();
    let root = witnesses.then(|| dense.witness.clone());

    let mut histogram = BTreeMap::new();
    let mut decode_error = None;
    let (stats, _) = explore(
        ord.len(),
        root,
        workers,
        |r: &BitSeq, i: usize| -> ProbeResult<Option<Realization<S>>> {
            let (found, solves) = probe_linconj(model, r, i, &ord, opts)?;
            Ok((found.map(|p| (p.seq, witnesses.then_some(p.witness))), solves))
        },
        |seq: BitSeq, witness: Option<Realization<S>>| match decode(&seq, &ord) {
            Ok(structure) => {
                *histogram.entry(structure.len()).or_insert(0) += 1;
                sink(Emission {
                    seq,
                    structure,
                    witness,
                });
            }
            Err(e) => decode_error = Some(e),
        },
        eopts.progress.take(),
    )?;
    if let Some(e) = decode_error {
        return Err(e);
    }
    Ok(EnumerationSummary {
        total: stats.emitted,
        histogram,
        core,
        dense: dense.structure,
        ordering: ord,
        setup_lp_solves: setup,
        lp_solves: stats.lp_solves,
        probes: stats.probes,
        max_probes_between_emissions: stats.max_probe_gap,
        max_lp_solves_between_emissions: stats.max_lp_gap,
        column_counts: Vec::new(),
        workers,
        wall_time: started.elapsed(),
    })
}

fn count_core<S: Scalar>(
    model: &CrnModel<S>,
    dense: &GraphStructure,
    opts: &ConstraintOptions<S>,
    solves: &mut u64,
) -> Result<GraphStructure> {
    let mut core = GraphStructure::new();
    for e in dense {
        let mut without = dense.clone();
        without.remove(e);
        let (found, spent) = max_support_counted(model, &without, opts)?;
        *solves += spent as u64;
        if found.is_none() {
            core.insert(*e);
        }
    }
    Ok(core)
}

/// Cartesian product of the column structure sets.
pub fn build_ak(columns: &ColumnExistStore) -> Result<Vec<GraphStructure>> {
    let sets = (0..columns.columns.len())
        .map(|j| columns.column_structures(j))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    product_for_each(&sets, |parts| {
        out.push(parts.iter().fold(GraphStructure::new(), |acc, g| acc.union(g)));
    })?;
    Ok(out)
}

/// Calls `f` with every combination picking one entry per set.
fn product_for_each<T>(sets: &[Vec<T>], mut f: impl FnMut(&[&T])) -> Result<()> {
    if let Some(j) = sets.iter().position(Vec::is_empty) {
        return Err(Error::EmptyColumn(j + 1));
    }
    let mut idx = vec![0usize; sets.len()];
    loop {
        let parts: Vec<&T> = idx.iter().enumerate().map(|(j, &k)| &sets[j][k]).collect();
        f(&parts);
        let mut j = sets.len();
        loop {
            if j == 0 {
                return Ok(());
            }
            j -= 1;
            idx[j] += 1;
            if idx[j] < sets[j].len() {
                break;
            }
            idx[j] = 0;
        }
    }
}

/// All dynamically equivalent structures, computed column by column and
/// combined.
pub fn enumerate_dyneq<S, F>(
    model: &CrnModel<S>,
    opts: &ConstraintOptions<S>,
    mut eopts: EnumerationOptions,
    mut sink: F,
) -> Result<EnumerationSummary>
where
    S: Scalar,
    F: FnMut(Emission<S>) + Send,
{
    let started = Instant::now();
    let m = model.num_complexes();
    let workers = eopts.worker_count();
    let witnesses = eopts.stream_witnesses;
    let mut setup = 0u64;
    let mut orderings = Vec::with_capacity(m);
    let mut roots = Vec::with_capacity(m);
    for j in 0..m {
        let dense_j = column_dense(model, j, opts)?.ok_or(Error::NotRealizable)?;
        setup += dense_j.lp_solves as u64;
        let core_j = if eopts.compute_core {
            let core = column_core_edges(model, j, &dense_j.structure, opts)?;
            setup += dense_j.structure.len() as u64;
            core
        } else {
            GraphStructure::new()
        };
        orderings.push(EdgeOrdering::new(&dense_j.structure, &core_j)?);
        roots.push(dense_j.rates);
    }

    let store = ColumnExistStore::new(orderings);
    let mut column_rates: Vec<HashMap<BitSeq, Vec<(Edge, S)>>> = vec![HashMap::new(); m];
    let (mut lp_solves, mut probes) = (0u64, 0u64);
    let mut progress = eopts.progress.take();
    for (j, root) in roots.into_iter().enumerate() {
        let ord_j = &store.orderings[j];
        let rates_j = Mutex::new(&mut column_rates[j]);
        let (stats, exist) = explore(
            ord_j.len(),
            root,
            workers,
            |r: &BitSeq, i: usize| -> ProbeResult<Vec<(Edge, S)>> {
                Ok(match dyneq_column_without_edge(model, j, r, i, ord_j, opts)? {
                    Some((seq, col)) => {
                        let solves = col.lp_solves;
                        (Some((seq, col.rates)), solves)
                    }
                    None => (None, 1),
                })
            },
            |seq: BitSeq, rates: Vec<(Edge, S)>| {
                if witnesses {
                    rates_j.lock().insert(seq, rates);
                }
            },
            progress.take(),
        )?;
        lp_solves += stats.lp_solves;
        probes += stats.probes;
        for seq in exist.snapshot() {
            store.columns[j].insert_if_absent(&seq);
        }
    }

    let dense = store
        .orderings
        .iter()
        .fold(GraphStructure::new(), |acc, o| acc.union(&o.dense()));
    let core = store
        .orderings
        .iter()
        .fold(GraphStructure::new(), |acc, o| acc.union(o.core()));
    let ord = EdgeOrdering::new(&dense, &core)?;
    let column_seqs: Vec<Vec<BitSeq>> = store
        .columns
        .iter()
        .map(|c| c.snapshot().into_iter().collect())
        .collect();
    let column_counts: Vec<usize> = column_seqs.iter().map(Vec::len).collect();
    let mut histogram = BTreeMap::new();
    let mut total = 0usize;
    let mut failure = None;
    let unit_t = vec![S::one(); model.num_species()];
    product_for_each(&column_seqs, |parts| {
        if failure.is_some() {
            return;
        }
        let mut structure = GraphStructure::new();
        for (j, seq) in parts.iter().enumerate() {
            match decode(seq, &store.orderings[j]) {
                Ok(g) => structure = structure.union(&g),
                Err(e) => failure = Some(e),
            }
        }
        let seq = match encode(&structure, &ord) {
            Ok(s) => s,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        let witness = witnesses.then(|| {
            let rates = parts
                .iter()
                .enumerate()
                .flat_map(|(j, s)| column_rates[j].get(*s).cloned().unwrap_or_default());
            Realization::from_rates(unit_t.clone(), m, rates)
        });
        *histogram.entry(structure.len()).or_insert(0) += 1;
        total += 1;
        sink(Emission {
            seq,
            structure,
            witness,
        });
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(EnumerationSummary {
        total,
        histogram,
        core,
        dense,
        ordering: ord,
        setup_lp_solves: setup,
        lp_solves,
        probes,
        max_probes_between_emissions: 0,
        max_lp_solves_between_emissions: 0,
        column_counts,
        workers,
        wall_time: started.elapsed(),
    })
}

/// Oracle for small instances: tests every subset of the non-core dense
/// edges directly.
#[derive(Clone, Debug)]
pub struct BruteForce {
    pub ordering: EdgeOrdering,
    pub structures: BTreeSet<BitSeq>,
}

/// Default limit on the number of free edges for [`brute_force_enumerate`].
pub const BRUTE_FORCE_CAP: usize = 16;

pub fn brute_force_enumerate<S: Scalar>(
    model: &CrnModel<S>,
    opts: &ConstraintOptions<S>,
    cap: usize,
) -> Result<BruteForce> {
    let dense = dense_realization(model, opts)?;
    let core = core_edges(model, &dense.structure, opts)?;
    let ord = EdgeOrdering::new(&dense.structure, &core)?;
    let n = ord.len();
    if n > cap || n >= 64 {
        return Err(Error::CapExceeded { edges: n, cap });
    }
    let mut structures = BTreeSet::new();
    for mask in 0..(1u64 << n) {
        let seq = BitSeq::from_mask(n, mask);
        let candidate = decode(&seq, &ord)?;
        if let Some(found) = max_support(model, &candidate, opts)? {
            if found.structure == candidate {
                structures.insert(seq);
            }
        }
    }
    Ok(BruteForce {
        ordering: ord,
        structures,
    })
}
