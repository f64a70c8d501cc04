//! Deterministic parallel backtracking over table cells.
//!
//! A [`Problem`] fills slots `0..slots()` in order, each with a value from a
//! candidate list. The tree is cut at a fixed depth into prefixes; that depth
//! depends only on the problem, never on the worker count. Prefixes are
//! explored independently and their accumulators are returned in prefix
//! order, so folding them gives the same result for any number of workers.

mod ring;
mod table;

use std::ops::ControlFlow;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::model::{CellSet, HyperTable};

pub use ring::{abelian_groups, mul_tables, AddSearch, MulSearch, MulShape};
pub use table::{Domain, TableSearch};

/// Number of prefixes the tree is cut into before parallel exploration.
const TARGET_PREFIXES: usize = 512;

pub trait Problem: Sync {
    type State: Clone + Send + Sync;

    fn slots(&self) -> usize;

    fn root(&self) -> Self::State;

    /// Candidate values for slot `k`, given that slots `< k` are assigned.
    /// Candidates are explored in the order they are pushed.
    fn choices(&self, s: &Self::State, k: usize, out: &mut Vec<CellSet>);

    /// Assign slot `k` and check every constraint that this assignment
    /// settles. Returning `false` prunes the subtree. Slots `> k` may hold
    /// stale values and must not be read.
    fn assign(&self, s: &mut Self::State, k: usize, v: CellSet) -> bool;
}

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { workers: 1 }
    }
}

impl SearchConfig {
    pub fn new(workers: usize) -> Self {
        SearchConfig {
            workers: workers.max(1),
        }
    }
}

/// Per-prefix result of a sweep.
#[derive(Clone, Debug)]
pub struct Part<A> {
    pub acc: A,
    pub nodes: u64,
    pub pruned: u64,
}

#[derive(Clone, Debug)]
pub struct Sweep<A> {
    /// Accumulators in prefix order. After an early stop this is cut just
    /// past the prefix that stopped, which makes it deterministic.
    pub parts: Vec<Part<A>>,
    pub stopped: bool,
}

impl<A> Sweep<A> {
    pub fn nodes(&self) -> u64 {
        self.parts.iter().map(|p| p.nodes).sum()
    }

    pub fn pruned(&self) -> u64 {
        self.parts.iter().map(|p| p.pruned).sum()
    }

    pub fn accs(&self) -> impl Iterator<Item = &A> {
        self.parts.iter().map(|p| &p.acc)
    }

    pub fn into_accs(self) -> impl Iterator<Item = A> {
        self.parts.into_iter().map(|p| p.acc)
    }
}

struct Walker<'a, P: Problem, A, F> {
    problem: &'a P,
    leaf: &'a F,
    bufs: Vec<Vec<CellSet>>,
    acc: A,
    nodes: u64,
    pruned: u64,
    /// Abort when this prefix index is beyond an already stopped one.
    my_index: usize,
    stop_at: &'a AtomicUsize,
}

impl<P, A, F> Walker<'_, P, A, F>
where
    P: Problem,
    F: Fn(&mut A, &P::State) -> ControlFlow<()>,
{
    fn dfs(&mut self, s: &mut P::State, k: usize) -> ControlFlow<()> {
        if k == self.problem.slots() {
            return (self.leaf)(&mut self.acc, s);
        }
        if self.stop_at.load(Ordering::Relaxed) < self.my_index {
            return ControlFlow::Break(());
        }
        let mut buf = std::mem::take(&mut self.bufs[k]);
        buf.clear();
        self.problem.choices(s, k, &mut buf);
        let mut flow = ControlFlow::Continue(());
        for &v in &buf {
            self.nodes += 1;
            if !self.problem.assign(s, k, v) {
                self.pruned += 1;
                continue;
            }
            flow = self.dfs(s, k + 1);
            if flow.is_break() {
                break;
            }
        }
        self.bufs[k] = buf;
        flow
    }
}

/// `(xy)z` when every cell it reads lies in the assigned prefix `0..=k`.
pub(crate) fn left(t: &HyperTable, k: usize, x: usize, y: usize, z: usize) -> Option<CellSet> {
    let n = t.order();
    let i = x * n + y;
    if i > k {
        return None;
    }
    let xy = t.cell(i);
    match xy.max() {
        None => Some(CellSet::EMPTY),
        Some(m) if m * n + z <= k => Some(t.product_right(xy, z)),
        _ => None,
    }
}

/// `x(yz)` when every cell it reads lies in the assigned prefix `0..=k`.
pub(crate) fn right(t: &HyperTable, k: usize, x: usize, y: usize, z: usize) -> Option<CellSet> {
    let n = t.order();
    let i = y * n + z;
    if i > k {
        return None;
    }
    let yz = t.cell(i);
    match yz.max() {
        None => Some(CellSet::EMPTY),
        Some(m) if x * n + m <= k => Some(t.product_left(x, yz)),
        _ => None,
    }
}

/// Associativity on every triple the prefix `0..=k` settles.
pub(crate) fn assoc_ok(t: &HyperTable, k: usize) -> bool {
    let n = t.order();
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| match (left(t, k, x, y, z), right(t, k, x, y, z)) {
                (Some(l), Some(r)) => l == r,
                _ => true,
            })
        })
    })
}

/// Cut the tree into prefixes at the first depth with enough of them.
fn prefixes<P: Problem>(p: &P) -> (Vec<P::State>, usize, u64, u64) {
    let mut level = vec![p.root()];
    let mut depth = 0;
    let (mut nodes, mut pruned) = (0, 0);
    let mut buf = Vec::new();
    while depth < p.slots() && level.len() < TARGET_PREFIXES {
        let mut next = Vec::new();
        for s in &level {
            buf.clear();
            p.choices(s, depth, &mut buf);
            nodes += buf.len() as u64;
            for &v in &buf {
                let mut t = s.clone();
                if p.assign(&mut t, depth, v) {
                    next.push(t);
                } else {
                    pruned += 1;
                }
            }
        }
        level = next;
        depth += 1;
        if level.is_empty() {
            break;
        }
    }
    (level, depth, nodes, pruned)
}

/// Explore the whole tree. `leaf` sees every complete assignment that
/// survived pruning, in depth-first order within each prefix; returning
/// `Break` stops the sweep at that prefix.
pub fn sweep<P, A, I, F>(p: &P, cfg: SearchConfig, init: I, leaf: F) -> Sweep<A>
where
    P: Problem,
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, &P::State) -> ControlFlow<()> + Sync,
{
    let (roots, depth, top_nodes, top_pruned) = prefixes(p);
    let stop_at = AtomicUsize::new(usize::MAX);
    let run = |(i, root): (usize, &P::State)| -> (Part<A>, bool) {
        let mut w = Walker {
            problem: p,
            leaf: &leaf,
            bufs: vec![Vec::new(); p.slots()],
            acc: init(),
            nodes: 0,
            pruned: 0,
            my_index: i,
            stop_at: &stop_at,
        };
        if stop_at.load(Ordering::Relaxed) < i {
            return (
                Part {
                    acc: w.acc,
                    nodes: 0,
                    pruned: 0,
                },
                false,
            );
        }
        let mut s = root.clone();
        let flow = w.dfs(&mut s, depth);
        let stopped = flow.is_break() && stop_at.load(Ordering::Relaxed) >= i;
        if stopped {
            stop_at.fetch_min(i, Ordering::Relaxed);
        }
        (
            Part {
                acc: w.acc,
                nodes: w.nodes,
                pruned: w.pruned,
            },
            stopped,
        )
    };
    let results: Vec<(Part<A>, bool)> = if cfg.workers <= 1 {
        roots.iter().enumerate().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .expect("thread pool");
        pool.install(|| roots.par_iter().enumerate().map(run).collect())
    };
    let cut = stop_at.load(Ordering::Relaxed);
    let mut parts: Vec<Part<A>> = Vec::with_capacity(results.len());
    for (i, (part, _)) in results.into_iter().enumerate() {
        if i > cut {
            break;
        }
        parts.push(part);
    }
    if let Some(first) = parts.first_mut() {
        first.nodes += top_nodes;
        first.pruned += top_pruned;
    }
    Sweep {
        parts,
        stopped: cut != usize::MAX,
    }
}

/// Convenience: collect every leaf accepted by `keep`, in search order.
pub fn collect<P, T, F>(p: &P, cfg: SearchConfig, keep: F) -> (Vec<T>, u64)
where
    P: Problem,
    T: Send,
    F: Fn(&P::State) -> Option<T> + Sync,
{
    let sw = sweep(p, cfg, Vec::new, |acc: &mut Vec<T>, s| {
        if let Some(t) = keep(s) {
            acc.push(t);
        }
        ControlFlow::Continue(())
    });
    let pruned = sw.pruned();
    (sw.into_accs().flatten().collect(), pruned)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All bit strings of a given length, as singleton-or-empty cells.
    struct Bits(usize);

    impl Problem for Bits {
        type State = Vec<bool>;
        fn slots(&self) -> usize {
            self.0
        }
        fn root(&self) -> Vec<bool> {
            vec![false; self.0]
        }
        fn choices(&self, _: &Vec<bool>, _: usize, out: &mut Vec<CellSet>) {
            out.extend([CellSet::EMPTY, CellSet::singleton(0)]);
        }
        fn assign(&self, s: &mut Vec<bool>, k: usize, v: CellSet) -> bool {
            s[k] = !v.is_empty();
            // no two adjacent ones
            !(s[k] && k > 0 && s[k - 1])
        }
    }

    fn value(s: &[bool]) -> u32 {
        s.iter().fold(0, |a, &b| 2 * a + b as u32)
    }

    #[test]
    fn order_independent_of_workers() {
        let p = Bits(14);
        let (one, _) = collect(&p, SearchConfig::new(1), |s| Some(value(s)));
        let (four, _) = collect(&p, SearchConfig::new(4), |s| Some(value(s)));
        assert_eq!(one, four);
        assert!(one.windows(2).all(|w| w[0] < w[1]));
        // Fibonacci count of binary strings without adjacent ones
        assert_eq!(one.len(), 987);
    }

    #[test]
    fn early_stop_is_deterministic() {
        let p = Bits(16);
        let first = |workers| {
            let sw = sweep(
                &p,
                SearchConfig::new(workers),
                || None,
                |acc: &mut Option<u32>, s| {
                    if value(s) % 97 == 5 {
                        *acc = Some(value(s));
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                },
            );
            assert!(sw.stopped);
            sw.into_accs().flatten().next()
        };
        assert_eq!(first(1), first(3));
        assert_eq!(first(1), Some(5));
    }
}
