//! Exact independent-set search over explicit adjacency rows.
//!
//! Rows are symmetric, loop-free bitsets of equal length. The size search is
//! a branch and bound with a greedy clique-cover bound, branching on a
//! maximum-degree vertex and splitting off connected components. The
//! enumerators branch on the lowest candidate, so their output comes in
//! lexicographic order of sorted member lists.

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Work limits shared by every search in this module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverLimits {
    /// Search-tree nodes before giving up.
    pub node_limit: u64,
    /// Largest number of sets an enumeration may report.
    pub max_solutions: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits {
            node_limit: 200_000_000,
            max_solutions: 1_000_000,
        }
    }
}

struct Counter<'a> {
    nodes: &'a AtomicU64,
    limit: u64,
    exceeded: &'a AtomicBool,
}

impl Counter<'_> {
    #[inline]
    fn tick(&self) -> bool {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.limit {
            self.exceeded.store(true, Ordering::Relaxed);
        }
        !self.exceeded.load(Ordering::Relaxed)
    }
}

fn node_error(limit: u64) -> Error {
    Error::budget("search nodes", format!("more than {limit}"), limit)
}

/// Size of a greedy partition of `cand` into cliques; an upper bound on the
/// independence number of the induced subgraph.
pub fn clique_cover_bound(adj: &[FixedBitSet], cand: &FixedBitSet) -> usize {
    let mut rest = cand.clone();
    let mut count = 0;
    let mut pool = FixedBitSet::with_capacity(cand.len());
    while let Some(u) = rest.minimum() {
        rest.set(u, false);
        count += 1;
        pool.clone_from(&rest);
        pool.intersect_with(&adj[u]);
        while let Some(w) = pool.minimum() {
            rest.set(w, false);
            pool.intersect_with(&adj[w]);
        }
    }
    count
}

fn component_of(adj: &[FixedBitSet], cand: &FixedBitSet, start: usize) -> FixedBitSet {
    let mut comp = FixedBitSet::with_capacity(cand.len());
    comp.insert(start);
    let mut frontier = comp.clone();
    let mut next = FixedBitSet::with_capacity(cand.len());
    while !frontier.is_clear() {
        next.clear();
        for v in frontier.ones() {
            next.union_with(&adj[v]);
        }
        next.intersect_with(cand);
        next.difference_with(&comp);
        comp.union_with(&next);
        std::mem::swap(&mut frontier, &mut next);
    }
    comp
}

struct SizeSearch<'a> {
    adj: &'a [FixedBitSet],
    counter: Counter<'a>,
}

impl SizeSearch<'_> {
    /// Independence number of `G[cand]`, but only exactly when it exceeds
    /// `floor`; otherwise any value `<= floor` may be returned.
    fn alpha(&self, cand: &FixedBitSet, floor: usize) -> usize {
        if !self.counter.tick() {
            return 0;
        }
        let total = cand.count_ones(..);
        if total <= floor {
            return total;
        }
        // isolated vertices are always taken
        let mut rest = cand.clone();
        let mut free = 0;
        let mut best_v = usize::MAX;
        let mut best_d = 0;
        for v in cand.ones() {
            let d = self.adj[v].intersection_count(cand);
            if d == 0 {
                rest.set(v, false);
                free += 1;
            } else if d > best_d {
                best_d = d;
                best_v = v;
            }
        }
        if best_v == usize::MAX {
            return free;
        }
        let floor = floor.saturating_sub(free);
        let comp = component_of(self.adj, &rest, best_v);
        if comp.count_ones(..) < rest.count_ones(..) {
            // solve components independently; every component must be exact
            let mut sum = 0;
            let mut left = rest;
            while let Some(s) = left.minimum() {
                let c = component_of(self.adj, &left, s);
                left.difference_with(&c);
                sum += self.alpha(&c, 0);
            }
            return free + sum;
        }
        if clique_cover_bound(self.adj, &rest) <= floor {
            return free;
        }
        let mut with = rest.clone();
        with.difference_with(&self.adj[best_v]);
        with.set(best_v, false);
        let a = 1 + self.alpha(&with, floor.saturating_sub(1));
        let floor = floor.max(a);
        rest.set(best_v, false);
        let b = self.alpha(&rest, floor);
        free + a.max(b)
    }
}

/// Independence number of the graph given by `adj`.
///
/// The top level is split into the disjoint branches "take v_i, drop
/// v_1..v_{i-1}" over a max-degree-first order and run in parallel.
pub fn independence_number(adj: &[FixedBitSet], limits: SolverLimits) -> Result<usize> {
    let n = adj.len();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    independence_number_within(adj, &all, limits)
}

/// Independence number of the subgraph induced on `cand`.
pub fn independence_number_within(adj: &[FixedBitSet], cand: &FixedBitSet, limits: SolverLimits) -> Result<usize> {
    let nodes = AtomicU64::new(0);
    let exceeded = AtomicBool::new(false);
    let incumbent = AtomicUsize::new(0);
    let mut order: Vec<usize> = cand.ones().collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].intersection_count(cand)));
    let branches: Vec<(usize, FixedBitSet)> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut c = cand.clone();
            for &u in &order[..i] {
                c.set(u, false);
            }
            c.difference_with(&adj[v]);
            c.set(v, false);
            (v, c)
        })
        .collect();
    branches.par_iter().for_each(|(_, c)| {
        let search = SizeSearch {
            adj,
            counter: Counter {
                nodes: &nodes,
                limit: limits.node_limit,
                exceeded: &exceeded,
            },
        };
        let floor = incumbent.load(Ordering::Relaxed).saturating_sub(1);
        let a = 1 + search.alpha(c, floor);
        incumbent.fetch_max(a, Ordering::Relaxed);
    });
    if exceeded.load(Ordering::Relaxed) {
        return Err(node_error(limits.node_limit));
    }
    Ok(incumbent.load(Ordering::Relaxed))
}

struct Enumerator<'a, F> {
    adj: &'a [FixedBitSet],
    target: usize,
    nodes: u64,
    limit: u64,
    found: usize,
    max_solutions: usize,
    chosen: Vec<usize>,
    emit: F,
}

enum Stop {
    Budget,
    Solutions,
    Callback,
}

impl<F: FnMut(&[usize]) -> ControlFlow<()>> Enumerator<'_, F> {
    fn run(&mut self, cand: &FixedBitSet) -> std::result::Result<(), Stop> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Stop::Budget);
        }
        let need = self.target - self.chosen.len();
        if need == 0 {
            self.found += 1;
            if self.found > self.max_solutions {
                return Err(Stop::Solutions);
            }
            return match (self.emit)(&self.chosen) {
                ControlFlow::Continue(()) => Ok(()),
                ControlFlow::Break(()) => Err(Stop::Callback),
            };
        }
        if cand.count_ones(..) < need || clique_cover_bound(self.adj, cand) < need {
            return Ok(());
        }
        let v = cand.minimum().expect("candidates are nonempty");
        let mut with = cand.clone();
        with.difference_with(&self.adj[v]);
        with.set(v, false);
        self.chosen.push(v);
        self.run(&with)?;
        self.chosen.pop();
        let mut without = cand.clone();
        without.set(v, false);
        self.run(&without)
    }
}

/// Calls `emit` with every independent set of size exactly `size` (sorted
/// member lists, lexicographic order). Returns whether the enumeration ran
/// to completion; `false` means `emit` asked to stop.
pub fn for_each_independent_set_of_size(
    adj: &[FixedBitSet],
    size: usize,
    limits: SolverLimits,
    emit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<bool> {
    let mut all = FixedBitSet::with_capacity(adj.len());
    all.insert_range(..);
    enumerate_from(adj, &all, Vec::new(), size, limits, emit)
}

/// As [`for_each_independent_set_of_size`], restricted to sets containing
/// `vertex`.
pub fn for_each_independent_set_of_size_through(
    adj: &[FixedBitSet],
    vertex: usize,
    size: usize,
    limits: SolverLimits,
    emit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<bool> {
    if size == 0 {
        return Ok(true);
    }
    let mut cand = FixedBitSet::with_capacity(adj.len());
    cand.insert_range(..);
    cand.difference_with(&adj[vertex]);
    cand.set(vertex, false);
    let mut sorted = Vec::new();
    let mut emit = emit;
    enumerate_from(adj, &cand, vec![vertex], size, limits, |s| {
        sorted.clear();
        sorted.extend_from_slice(s);
        sorted.sort_unstable();
        emit(&sorted)
    })
}

fn enumerate_from(
    adj: &[FixedBitSet],
    cand: &FixedBitSet,
    chosen: Vec<usize>,
    size: usize,
    limits: SolverLimits,
    emit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<bool> {
    let mut e = Enumerator {
        adj,
        target: size,
        nodes: 0,
        limit: limits.node_limit,
        found: 0,
        max_solutions: limits.max_solutions,
        chosen,
        emit,
    };
    match e.run(cand) {
        Ok(()) => Ok(true),
        Err(Stop::Callback) => Ok(false),
        Err(Stop::Budget) => Err(node_error(limits.node_limit)),
        Err(Stop::Solutions) => Err(Error::budget(
            "independent sets",
            format!("more than {}", limits.max_solutions),
            limits.max_solutions,
        )),
    }
}

/// Every maximum independent set, in lexicographic order.
pub fn maximum_independent_sets(adj: &[FixedBitSet], limits: SolverLimits) -> Result<(usize, Vec<Vec<usize>>)> {
    let alpha = independence_number(adj, limits)?;
    let mut out = Vec::new();
    for_each_independent_set_of_size(adj, alpha, limits, |s| {
        out.push(s.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok((alpha, out))
}

/// Calls `visit` with every independent set (including the empty one) in
/// lexicographic pre-order. Only sets whose members all lie in `within`
/// are visited; when `first` is given every visited nonempty set contains it.
pub fn for_each_independent_set(
    adj: &[FixedBitSet],
    within: &FixedBitSet,
    first: Option<usize>,
    max_size: usize,
    limits: SolverLimits,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<bool> {
    fn walk(
        adj: &[FixedBitSet],
        cand: &FixedBitSet,
        chosen: &mut Vec<usize>,
        max_size: usize,
        nodes: &mut u64,
        limit: u64,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> std::result::Result<(), Stop> {
        *nodes += 1;
        if *nodes > limit {
            return Err(Stop::Budget);
        }
        if visit(chosen).is_break() {
            return Err(Stop::Callback);
        }
        if chosen.len() == max_size {
            return Ok(());
        }
        let mut next = FixedBitSet::with_capacity(cand.len());
        for v in cand.ones() {
            next.clone_from(cand);
            next.remove_range(..v + 1);
            next.difference_with(&adj[v]);
            chosen.push(v);
            walk(adj, &next, chosen, max_size, nodes, limit, visit)?;
            chosen.pop();
        }
        Ok(())
    }

    let mut nodes = 0;
    let mut chosen = Vec::new();
    let result = match first {
        None => walk(
            adj,
            within,
            &mut chosen,
            max_size,
            &mut nodes,
            limits.node_limit,
            &mut visit,
        ),
        Some(v) => {
            if visit(&[]).is_break() {
                return Ok(false);
            }
            if max_size == 0 || !within.contains(v) {
                return Ok(true);
            }
            let mut cand = within.clone();
            cand.difference_with(&adj[v]);
            cand.set(v, false);
            chosen.push(v);
            walk(
                adj,
                &cand,
                &mut chosen,
                max_size,
                &mut nodes,
                limits.node_limit,
                &mut visit,
            )
        }
    };
    match result {
        Ok(()) => Ok(true),
        Err(Stop::Callback) => Ok(false),
        Err(Stop::Budget) => Err(node_error(limits.node_limit)),
        Err(Stop::Solutions) => unreachable!("no solution cap while walking all sets"),
    }
}

/// Adjacency rows from an edge list.
pub fn rows_from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<FixedBitSet> {
    let mut rows = vec![FixedBitSet::with_capacity(n); n];
    for &(a, b) in edges {
        rows[a].insert(b);
        rows[b].insert(a);
    }
    rows
}
