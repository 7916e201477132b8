//! Counting balanced quotients of the alternating cycle.
//!
//! `F(2k, j)` is the number of partitions of the `2k` cycle vertices into `j`
//! blocks whose quotient is balanced (see [`crate::graph`]). Partitions are
//! generated as restricted growth strings in cycle order, so assigning vertex
//! `i` fixes exactly one new edge `e_{i-1}`. An [`ImbalanceLedger`] tracks the
//! red-minus-blue mismatch per ordered block pair; every remaining edge moves
//! one ledger entry by one, so a prefix whose total mismatch exceeds the
//! number of edges still to place can never close and is pruned.
//!
//! The search tree is split into independent subtrees by expanding a prefix
//! frontier; each subtree is counted with private state and the per-`j`
//! totals are added. Addition is associative, so counts do not depend on the
//! worker count.

use std::collections::BTreeMap;

use log::warn;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::graph::{edge_color, AlternatingCycle, EdgeColor, SetPartition};
use crate::pool::{effective_workers, with_workers};

/// Largest `k` run without a warning.
pub const DEFAULT_MAX_K: usize = 8;
/// Largest `k` accepted by the unpruned oracle [`count_brute`].
pub const BRUTE_MAX_K: usize = 5;
/// Hard ceiling: blocks are stored in a `u8` and the ledger is dense.
pub const HARD_MAX_K: usize = 16;

/// Signed red-minus-blue counts per ordered block pair.
///
/// Entry `(u, v)` is `#red(u -> v) - #blue(v -> u)` over the edges applied so
/// far. Storage is dense; a zero entry means the pair is absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImbalanceLedger {
    side: usize,
    entries: Vec<i32>,
    l1_total: u32,
}

impl ImbalanceLedger {
    pub fn new(side: usize) -> Self {
        Self { side, entries: vec![0; side * side], l1_total: 0 }
    }

    #[inline]
    pub fn add(&mut self, u: usize, v: usize, delta: i32) {
        let slot = &mut self.entries[u * self.side + v];
        let before = slot.unsigned_abs();
        *slot += delta;
        self.l1_total = self.l1_total - before + slot.unsigned_abs();
    }

    /// Records edge `tail -> head` (both given as blocks).
    #[inline]
    pub fn apply_edge(&mut self, tail: usize, head: usize, color: EdgeColor) {
        match color {
            EdgeColor::Red => self.add(tail, head, 1),
            EdgeColor::Blue => self.add(head, tail, -1),
        }
    }

    #[inline]
    pub fn undo_edge(&mut self, tail: usize, head: usize, color: EdgeColor) {
        match color {
            EdgeColor::Red => self.add(tail, head, -1),
            EdgeColor::Blue => self.add(head, tail, 1),
        }
    }

    pub fn get(&self, u: usize, v: usize) -> i32 {
        self.entries[u * self.side + v]
    }

    pub fn l1_total(&self) -> u32 {
        self.l1_total
    }

    pub fn is_balanced(&self) -> bool {
        self.l1_total == 0
    }

    /// Nonzero entries as `((u, v), count)`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), i32)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| ((i / self.side, i % self.side), c))
    }
}

/// A partially assigned cycle: vertices `0..next_vertex` carry blocks.
///
/// The ledger holds edges `e_0 .. e_{next_vertex - 2}`; the wrap edge
/// `e_{2k-1}` is applied only when a leaf is evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchNode {
    pub next_vertex: usize,
    pub rgs: Vec<u8>,
    pub ledger: ImbalanceLedger,
    pub blocks_used: usize,
}

impl SearchNode {
    /// Vertex 0 pinned to block 0.
    pub fn root(k: usize) -> Self {
        Self { next_vertex: 1, rgs: vec![0], ledger: ImbalanceLedger::new(2 * k), blocks_used: 1 }
    }

    fn children(&self, k: usize, prune: bool) -> Vec<SearchNode> {
        let n = 2 * k;
        let i = self.next_vertex;
        debug_assert!(i < n);
        let prev = self.rgs[i - 1] as usize;
        (0..=self.blocks_used)
            .filter_map(|b| {
                let mut child = self.clone();
                child.ledger.apply_edge(prev, b, edge_color(i - 1));
                if prune && child.ledger.l1_total() as usize > n - i {
                    return None;
                }
                child.rgs.push(b as u8);
                child.next_vertex = i + 1;
                child.blocks_used = self.blocks_used.max(b + 1);
                Some(child)
            })
            .collect()
    }
}

/// One column of the `F` table: `counts[j - 1] = F(2k, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FRow {
    k: usize,
    // indexed by j - 1 for j = 1..=2k
    all: Vec<u128>,
}

impl FRow {
    pub fn from_counts(k: usize, counts: Vec<u128>) -> Self {
        let mut all = counts;
        all.resize(all.len().max(2 * k), 0);
        Self { k, all }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn two_k(&self) -> usize {
        2 * self.k
    }

    /// `F(2k, j)` for `j = 1..=k+1`.
    pub fn counts(&self) -> &[u128] {
        &self.all[..self.k + 1]
    }

    /// Every bucket `j = 1..=2k`; entries beyond `k + 1` are always zero.
    pub fn all_buckets(&self) -> &[u128] {
        &self.all
    }

    pub fn get(&self, j: usize) -> u128 {
        if j == 0 {
            0
        } else {
            self.all.get(j - 1).copied().unwrap_or(0)
        }
    }

    /// Total number of balanced partitions, `sum_j F(2k, j)`.
    pub fn total(&self) -> u128 {
        self.all.iter().sum()
    }
}

/// `F(2k, j)` for several `k`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FTable {
    rows: BTreeMap<usize, FRow>,
}

impl FTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, row: FRow) {
        self.rows.insert(row.k(), row);
    }

    pub fn row(&self, k: usize) -> Option<&FRow> {
        self.rows.get(&k)
    }

    pub fn get(&self, two_k: usize, j: usize) -> Option<u128> {
        if two_k % 2 != 0 {
            return None;
        }
        self.rows.get(&(two_k / 2)).map(|r| r.get(j))
    }

    pub fn rows(&self) -> impl Iterator<Item = &FRow> {
        self.rows.values()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountOptions {
    /// `0` uses the available parallelism.
    pub workers: usize,
    pub prune: bool,
    /// Requests above this `k` run, but log a warning about runtime.
    pub warn_above_k: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self { workers: 0, prune: true, warn_above_k: DEFAULT_MAX_K }
    }
}

/// Per-`j` counts of a subtree plus the number of leaves visited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubtreeCount {
    pub buckets: Vec<u128>,
    pub leaves: u128,
}

impl SubtreeCount {
    fn zero(k: usize) -> Self {
        Self { buckets: vec![0; 2 * k], leaves: 0 }
    }

    fn add(mut self, other: Self) -> Self {
        for (a, b) in self.buckets.iter_mut().zip(other.buckets) {
            *a += b;
        }
        self.leaves += other.leaves;
        self
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(invalid("k must be at least 1"));
    }
    if k > HARD_MAX_K {
        return Err(Error::ScaleLimit { what: "k", limit: HARD_MAX_K, got: k });
    }
    Ok(())
}

/// Computes `F(2k, j)` for all `j` with the pruned parallel search.
pub fn count_ddcg_partitions(k: usize, opts: &CountOptions) -> Result<FRow> {
    check_k(k)?;
    if k > opts.warn_above_k {
        warn!("counting F({}, j) for k = {k} > {}; this may take a long time", 2 * k, opts.warn_above_k);
    }
    let total = count_with_stats(k, opts)?;
    Ok(FRow::from_counts(k, total.buckets))
}

/// As [`count_ddcg_partitions`], also reporting the number of leaves reached.
pub fn count_with_stats(k: usize, opts: &CountOptions) -> Result<SubtreeCount> {
    check_k(k)?;
    let workers = effective_workers(opts.workers);
    let plan = parallel_plan(k, workers, opts.prune);
    Ok(with_workers(workers, || {
        plan.par_iter()
            .map(|node| count_subtree(k, node, opts.prune))
            .reduce(|| SubtreeCount::zero(k), SubtreeCount::add)
    }))
}

/// Unpruned oracle: enumerates every partition of the `2k` vertices, builds
/// the quotient graph and tests it directly.
pub fn count_brute(k: usize) -> Result<FRow> {
    check_k(k)?;
    if k > BRUTE_MAX_K {
        return Err(Error::ScaleLimit { what: "k (brute force)", limit: BRUTE_MAX_K, got: k });
    }
    let cycle = AlternatingCycle::new(k)?;
    let mut counts = vec![0u128; 2 * k];
    for pi in SetPartition::all(2 * k) {
        if cycle.graph().quotient(&pi)?.is_ddcg() {
            counts[pi.block_count() - 1] += 1;
        }
    }
    Ok(FRow::from_counts(k, counts))
}

/// Expands the search tree breadth-first until at least `4 * workers` nodes
/// exist (or the tree is exhausted). A single worker gets the root alone.
pub fn parallel_plan(k: usize, workers: usize, prune: bool) -> Vec<SearchNode> {
    let target = 4 * workers.max(1);
    let mut frontier = vec![SearchNode::root(k)];
    if workers <= 1 {
        return frontier;
    }
    let n = 2 * k;
    let mut depth = 1;
    while frontier.len() < target && depth < n {
        frontier = frontier.iter().flat_map(|node| node.children(k, prune)).collect();
        depth += 1;
    }
    frontier
}

/// All viable prefixes with `depth` assigned vertices (vertex 0 counts, and
/// depths 0 and 1 both give the root).
pub fn expand_to_depth(k: usize, depth: usize, prune: bool) -> Vec<SearchNode> {
    let mut frontier = vec![SearchNode::root(k)];
    for _ in 1..depth.min(2 * k) {
        frontier = frontier.iter().flat_map(|node| node.children(k, prune)).collect();
    }
    frontier
}

/// Counts every leaf below `node`.
pub fn count_subtree(k: usize, node: &SearchNode, prune: bool) -> SubtreeCount {
    let n = 2 * k;
    let mut rgs = vec![0usize; n];
    for (slot, &b) in rgs.iter_mut().zip(&node.rgs) {
        *slot = b as usize;
    }
    let mut search = Search {
        n,
        rgs,
        ledger: node.ledger.clone(),
        out: SubtreeCount::zero(k),
        prune,
    };
    search.descend(node.next_vertex, node.blocks_used);
    search.out
}

struct Search {
    n: usize,
    rgs: Vec<usize>,
    ledger: ImbalanceLedger,
    out: SubtreeCount,
    prune: bool,
}

impl Search {
    fn descend(&mut self, i: usize, blocks: usize) {
        if i == self.n {
            self.leaf(blocks);
            return;
        }
        let prev = self.rgs[i - 1];
        let color = edge_color(i - 1);
        // edges still unplaced after this step, wrap edge included
        let remaining = (self.n - i) as u32;
        for b in 0..=blocks {
            self.ledger.apply_edge(prev, b, color);
            if !self.prune || self.ledger.l1_total() <= remaining {
                self.rgs[i] = b;
                self.descend(i + 1, blocks.max(b + 1));
            }
            self.ledger.undo_edge(prev, b, color);
        }
    }

    fn leaf(&mut self, blocks: usize) {
        self.out.leaves += 1;
        let last = self.rgs[self.n - 1];
        let color = edge_color(self.n - 1);
        self.ledger.apply_edge(last, self.rgs[0], color);
        if self.ledger.is_balanced() {
            self.out.buckets[blocks - 1] += 1;
        }
        self.ledger.undo_edge(last, self.rgs[0], color);
    }
}
