//! Certified minimisation of a statistic over all families of a given size.
//!
//! Families are enumerated as increasing chains of lex ranks. The tree is
//! split at its first free branch into partitions that are searched
//! independently (in parallel with the `parallel` feature) and merged in
//! rank order, so certificates do not depend on scheduling.

pub mod conjecture;
mod graph;
pub mod lemmas;
pub mod local;

use std::fs;
use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::counting::count_statistic;
use crate::family::lex_segment;
use crate::formulas::ceil_nonneg;
use crate::kneser::spectral_lower_bound;
use crate::params::u128_string;
use crate::{Error, KSet, LexRank, Params, Result, SetFamily, Statistic};

pub(crate) use graph::ConflictGraph;
pub use graph::MAX_VERTICES;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    BranchAndBound,
    LocalSearch,
}

/// Lower bound on what the remaining `m` members add to the statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Zero.
    Trivial,
    /// `m` times the smallest increment of any remaining candidate.
    MinIncrement,
    /// Sum of the `m` smallest increments.
    SortedIncrements,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub mode: Mode,
    /// Fix `{1, ..., k}` as a member. Valid because every statistic is
    /// invariant under relabelling and `S_n` is transitive on k-sets.
    pub symmetry_pruning: bool,
    pub node_budget: u64,
    pub seed: u64,
    pub bound: BoundKind,
    /// `subfamily_floor[m]` is a lower bound on the statistic of every
    /// `m`-member family; entries beyond the end count as `0`.
    pub subfamily_floor: Vec<u128>,
    pub parallel: bool,
    /// Random restarts for local search, on top of the lex start.
    pub restarts: u32,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            mode: Mode::BranchAndBound,
            symmetry_pruning: true,
            node_budget: DEFAULT_NODE_BUDGET,
            seed: 0,
            bound: BoundKind::SortedIncrements,
            subfamily_floor: Vec::new(),
            parallel: true,
            restarts: 8,
        }
    }
}

impl SearchConfig {
    pub fn exhaustive() -> Self {
        SearchConfig {
            mode: Mode::Exhaustive,
            ..Default::default()
        }
    }

    pub fn branch_and_bound() -> Self {
        Self::default()
    }

    pub fn local_search(seed: u64) -> Self {
        SearchConfig {
            mode: Mode::LocalSearch,
            seed,
            ..Default::default()
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn with_symmetry(mut self, on: bool) -> Self {
        self.symmetry_pruning = on;
        self
    }

    pub fn with_bound(mut self, bound: BoundKind) -> Self {
        self.bound = bound;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.node_budget == 0 {
            return Err(Error::range("node_budget", "need a positive node budget"));
        }
        Ok(())
    }
}

/// Outcome of a search. `complete` certificates prove `minimum` is the
/// smallest value over all families of size `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCertificate {
    pub params: Params,
    pub statistic: Statistic,
    pub mode: Mode,
    #[serde(with = "u128_string")]
    pub minimum: u128,
    pub witness: SetFamily,
    #[serde(with = "u128_string")]
    pub lex_value: u128,
    pub lex_optimal: bool,
    pub nodes_visited: u64,
    pub complete: bool,
}

impl SearchCertificate {
    /// Builds a certificate after re-counting the witness independently.
    fn new(
        params: Params,
        statistic: Statistic,
        mode: Mode,
        witness: SetFamily,
        lex_value: u128,
        nodes_visited: u64,
        complete: bool,
    ) -> Result<Self> {
        let minimum = count_statistic(&witness, statistic, params.t, params.q)?;
        assert!(minimum <= lex_value, "witness worse than the lex segment");
        Ok(SearchCertificate {
            params,
            statistic,
            mode,
            minimum,
            witness,
            lex_value,
            lex_optimal: minimum == lex_value,
            nodes_visited,
            complete,
        })
    }
}

/// Shared node budget. Searchers report in batches.
struct Budget {
    used: AtomicU64,
    limit: u64,
    exhausted: AtomicBool,
}

const FLUSH_EVERY: u64 = 1024;

impl Budget {
    fn new(limit: u64) -> Self {
        Budget {
            used: AtomicU64::new(0),
            limit,
            exhausted: AtomicBool::new(false),
        }
    }

    fn charge(&self, nodes: u64) -> bool {
        let total = self.used.fetch_add(nodes, Ordering::Relaxed) + nodes;
        if total > self.limit {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted.load(Ordering::Relaxed)
    }
}

#[derive(Debug, Clone, Copy)]
struct PartitionResult {
    /// Strict improvement on the starting value, if any.
    best: Option<(u128, u128)>,
    nodes: u64,
    complete: bool,
}

struct Searcher<'a> {
    g: &'a ConflictGraph,
    s: usize,
    bound: Option<BoundKind>,
    floor: &'a [u128],
    budget: &'a Budget,
    nodes: u64,
    unflushed: u64,
    aborted: bool,
    best: u128,
    best_mask: Option<u128>,
    scratch: Vec<Vec<u128>>,
}

impl<'a> Searcher<'a> {
    fn tick(&mut self) {
        self.nodes += 1;
        self.unflushed += 1;
        if self.unflushed >= FLUSH_EVERY {
            if !self.budget.charge(self.unflushed) {
                self.aborted = true;
            }
            self.unflushed = 0;
        }
    }

    fn finish(self) -> PartitionResult {
        if self.unflushed > 0 {
            self.budget.charge(self.unflushed);
        }
        PartitionResult {
            best: self.best_mask.map(|m| (self.best, m)),
            nodes: self.nodes,
            complete: !self.aborted,
        }
    }

    fn floor(&self, m: usize) -> u128 {
        self.floor.get(m).copied().unwrap_or(0)
    }

    fn dfs(&mut self, start: usize, chosen: u128, depth: usize, value: u128) {
        if self.aborted {
            return;
        }
        self.tick();
        if depth == self.s {
            if value < self.best {
                self.best = value;
                self.best_mask = Some(chosen);
            }
            return;
        }
        let m = self.s - depth;
        let n_vertices = self.g.len();
        let last = n_vertices - m;
        let Some(kind) = self.bound else {
            for c in start..=last {
                let inc = self.g.increment(c, chosen);
                self.dfs(c + 1, chosen | 1u128 << c, depth + 1, value + inc);
                if self.aborted {
                    return;
                }
            }
            return;
        };

        let mut incs = std::mem::take(&mut self.scratch[depth]);
        incs.clear();
        incs.extend((start..n_vertices).map(|c| self.g.increment(c, chosen)));
        let lb = match kind {
            BoundKind::Trivial => 0,
            BoundKind::MinIncrement => m as u128 * incs.iter().copied().min().unwrap_or(0),
            BoundKind::SortedIncrements => {
                let mut sorted = incs.clone();
                sorted.select_nth_unstable(m - 1);
                sorted[..m].iter().sum()
            }
        } + self.floor(m);
        if value + lb < self.best {
            for c in start..=last {
                let inc = incs[c - start];
                self.dfs(c + 1, chosen | 1u128 << c, depth + 1, value + inc);
                if self.aborted {
                    break;
                }
            }
        }
        self.scratch[depth] = incs;
    }
}

/// The fixed prefix and the first free branch of the search tree.
struct Plan {
    prefix: Vec<usize>,
    /// Each partition extends `prefix` by one rank; empty when the prefix is
    /// already a whole family.
    branches: Vec<usize>,
}

fn plan(n_vertices: usize, s: usize, symmetry: bool) -> Plan {
    let prefix: Vec<usize> = if symmetry && s > 0 { vec![0] } else { vec![] };
    if prefix.len() == s {
        return Plan {
            prefix,
            branches: Vec::new(),
        };
    }
    let start = prefix.last().map_or(0, |&p| p + 1);
    let last = n_vertices - (s - prefix.len());
    Plan {
        prefix,
        branches: (start..=last).collect(),
    }
}

struct Job<'a> {
    g: &'a ConflictGraph,
    s: usize,
    bound: Option<BoundKind>,
    floor: &'a [u128],
    start_best: u128,
    budget: &'a Budget,
    plan: &'a Plan,
}

impl Job<'_> {
    fn searcher(&self) -> Searcher<'_> {
        Searcher {
            g: self.g,
            s: self.s,
            bound: self.bound,
            floor: self.floor,
            budget: self.budget,
            nodes: 0,
            unflushed: 0,
            aborted: self.budget.exhausted.load(Ordering::Relaxed),
            best: self.start_best,
            best_mask: None,
            scratch: vec![Vec::new(); self.s + 1],
        }
    }

    fn prefix_state(&self, extra: Option<usize>) -> (u128, u128, usize) {
        let mut chosen = 0u128;
        let mut value = 0u128;
        for &v in self.plan.prefix.iter().chain(extra.iter()) {
            value += self.g.increment(v, chosen);
            chosen |= 1u128 << v;
        }
        let depth = self.plan.prefix.len() + extra.is_some() as usize;
        (chosen, value, depth)
    }

    fn run(&self, index: Option<usize>) -> PartitionResult {
        let extra = index.map(|i| self.plan.branches[i]);
        let (chosen, value, depth) = self.prefix_state(extra);
        let start = extra.or(self.plan.prefix.last().copied()).map_or(0, |v| v + 1);
        let mut searcher = self.searcher();
        if !searcher.aborted {
            searcher.dfs(start, chosen, depth, value);
        }
        searcher.finish()
    }
}

fn merge(base: (u128, u128), results: impl IntoIterator<Item = PartitionResult>) -> ((u128, u128), u64, bool) {
    let mut best = base;
    let mut nodes = 0;
    let mut complete = true;
    for r in results {
        nodes += r.nodes;
        complete &= r.complete;
        if let Some((v, m)) = r.best {
            if v < best.0 {
                best = (v, m);
            }
        }
    }
    (best, nodes, complete)
}

/// Subfamily floors for the disjoint-pair statistic from the Kneser
/// eigenvalue bound, merged with any floors already in the config.
fn effective_floor(params: &Params, statistic: Statistic, config: &SearchConfig) -> Result<Vec<u128>> {
    let s = params.s as usize;
    let mut floor = vec![0u128; s + 1];
    for (m, f) in config.subfamily_floor.iter().enumerate().take(s + 1) {
        floor[m] = *f;
    }
    if statistic == Statistic::DisjointPairs {
        for (m, f) in floor.iter_mut().enumerate() {
            let spectral = ceil_nonneg(&spectral_lower_bound(params.n, params.k, m as u128)?);
            let spectral: u128 = spectral.try_into().unwrap_or(0);
            *f = (*f).max(spectral);
        }
    }
    Ok(floor)
}

fn family_from_mask(g: &ConflictGraph, mask: u128) -> SetFamily {
    SetFamily::from_sorted_unchecked(g.n, g.k, g.members(mask))
}

/// Certifies (or, out of budget, bounds) the minimum of `statistic` over all
/// families of `params.s` k-sets of `[params.n]`. Uses `params.t` and
/// `params.q`.
///
/// Among minimizers the lexicographically least family (as a sorted list of
/// ranks) is returned; the lex segment itself whenever it is optimal.
pub fn certify_minimum(params: &Params, statistic: Statistic, config: &SearchConfig) -> Result<SearchCertificate> {
    run_search(params, statistic, config, None)
}

/// Like [`certify_minimum`], but runs partitions in order and records
/// progress in `checkpoint` after each one. An existing checkpoint for the
/// same problem is resumed.
pub fn certify_with_checkpoint(
    params: &Params,
    statistic: Statistic,
    config: &SearchConfig,
    checkpoint: &Path,
) -> Result<SearchCertificate> {
    run_search(params, statistic, config, Some(checkpoint))
}

/// Progress of a checkpointed search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub params: Params,
    pub statistic: Statistic,
    pub mode: Mode,
    pub symmetry_pruning: bool,
    pub partitions: usize,
    /// Partitions `0..next_partition` are fully explored.
    pub next_partition: usize,
    /// Rank of the branching member of the last explored partition.
    pub last_completed_rank: Option<LexRank>,
    #[serde(with = "u128_string")]
    pub best: u128,
    pub witness: Vec<LexRank>,
    pub nodes: u64,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Option<Checkpoint>> {
        match fs::read_to_string(path) {
            Ok(text) => serde_json::from_str(&text).map(Some).map_err(|e| Error::Parse {
                line: e.line(),
                message: format!("checkpoint: {e}"),
            }),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string_pretty(self).expect("serialisable"))?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    fn matches(&self, params: &Params, statistic: Statistic, config: &SearchConfig, partitions: usize) -> bool {
        self.params == *params
            && self.statistic == statistic
            && self.mode == config.mode
            && self.symmetry_pruning == config.symmetry_pruning
            && self.partitions == partitions
    }
}

fn run_search(
    params: &Params,
    statistic: Statistic,
    config: &SearchConfig,
    checkpoint: Option<&Path>,
) -> Result<SearchCertificate> {
    config.validate()?;
    let lex = lex_segment(params.n, params.k, params.s)?;
    let lex_value = count_statistic(&lex, statistic, params.t, params.q)?;
    if config.mode == Mode::LocalSearch {
        return local::certify_local(params, statistic, config, lex, lex_value);
    }

    let g = ConflictGraph::new(params.n, params.k, statistic, params.t, params.q)?;
    let s = params.s as usize;
    let lex_mask = if s == 0 { 0 } else { (!0u128) >> (128 - s) };
    let plan = plan(g.len(), s, config.symmetry_pruning);
    let floor = effective_floor(params, statistic, config)?;
    let (bound, start_best) = match config.mode {
        Mode::Exhaustive => (None, u128::MAX),
        _ => (Some(config.bound), lex_value),
    };

    let mut resumed = None;
    if let Some(path) = checkpoint {
        if let Some(cp) = Checkpoint::load(path)? {
            if cp.matches(params, statistic, config, plan.branches.len()) {
                resumed = Some(cp);
            }
        }
    }
    let (mut base, first, nodes_before) = match &resumed {
        Some(cp) => {
            let mask = cp.witness.iter().fold(0u128, |m, r| m | 1u128 << r.0);
            ((cp.best, mask), cp.next_partition, cp.nodes)
        }
        None => ((lex_value, lex_mask), 0, 0),
    };

    let budget = Budget::new(config.node_budget);
    let job = Job {
        g: &g,
        s,
        bound,
        floor: &floor,
        start_best,
        budget: &budget,
        plan: &plan,
    };

    let (best, nodes, complete) = if plan.branches.is_empty() {
        merge(base, [job.run(None)])
    } else if let Some(path) = checkpoint {
        let mut nodes = nodes_before;
        let mut complete = true;
        for i in first..plan.branches.len() {
            let r = job.run(Some(i));
            let (b, n, c) = merge(base, [r]);
            base = b;
            nodes += n;
            if !c {
                complete = false;
                break;
            }
            Checkpoint {
                params: *params,
                statistic,
                mode: config.mode,
                symmetry_pruning: config.symmetry_pruning,
                partitions: plan.branches.len(),
                next_partition: i + 1,
                last_completed_rank: Some(LexRank(plan.branches[i] as u128)),
                best: base.0,
                witness: ranks(base.1),
                nodes,
            }
            .save(path)?;
        }
        (base, nodes, complete)
    } else {
        let results = run_partitions(&job, config.parallel);
        merge(base, results)
    };

    let witness = family_from_mask(&g, best.1);
    SearchCertificate::new(*params, statistic, config.mode, witness, lex_value, nodes, complete)
}

fn ranks(mask: u128) -> Vec<LexRank> {
    (0..128)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| LexRank(i as u128))
        .collect()
}

#[cfg(feature = "parallel")]
fn run_partitions(job: &Job<'_>, parallel: bool) -> Vec<PartitionResult> {
    use rayon::prelude::*;
    let count = job.plan.branches.len();
    if parallel {
        (0..count).into_par_iter().map(|i| job.run(Some(i))).collect()
    } else {
        (0..count).map(|i| job.run(Some(i))).collect()
    }
}

#[cfg(not(feature = "parallel"))]
fn run_partitions(job: &Job<'_>, _parallel: bool) -> Vec<PartitionResult> {
    (0..job.plan.branches.len()).map(|i| job.run(Some(i))).collect()
}

/// The lex rank list of a family, for comparing witnesses.
pub fn rank_list(f: &SetFamily) -> Vec<LexRank> {
    f.iter().map(KSet::lex_rank).collect()
}
