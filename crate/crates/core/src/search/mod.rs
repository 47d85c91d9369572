//! Branch-and-bound kernels: BasicBB (BK branching) and FastBB (Sym-BK
//! branching with pivot-based ordering).

mod basic;
mod fast;
mod gamma;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize, Serializer};

use crate::biplex::{Branch, PruneReason, ResultPool, SearchParams, Status};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Side, VertexRef};

pub use gamma::gamma_k;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    Basic,
    #[default]
    Fast,
}

impl Kernel {
    pub const ALL: [Kernel; 2] = [Kernel::Basic, Kernel::Fast];
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kernel::Basic => "basic",
            Kernel::Fast => "fast",
        })
    }
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "basic" => Ok(Kernel::Basic),
            "fast" => Ok(Kernel::Fast),
            other => Err(Error::InvalidArgument(format!("unknown kernel {other:?}"))),
        }
    }
}

/// Wall-clock limit and cooperative cancellation shared by all workers of
/// one search.
#[derive(Debug, Default)]
pub struct Limits {
    deadline: Option<Instant>,
    cancelled: AtomicBool,
}

impl Limits {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn with_time_limit(limit: Duration) -> Self {
        Limits { deadline: Some(Instant::now() + limit), cancelled: AtomicBool::new(false) }
    }

    pub fn cancel(&self) {
        self.cancelled.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.cancelled.load(Ordering::Relaxed)
    }

    /// Cancels once the deadline has passed. Returns whether the search
    /// must stop.
    pub fn poll(&self) -> bool {
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.cancel();
        }
        self.is_cancelled()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    #[serde(rename = "branches")]
    pub branches_explored: u64,
    #[serde(rename = "pruned", serialize_with = "prune_map")]
    pub pruned: [u64; 5],
    pub terminals: u64,
    #[serde(rename = "ms", serialize_with = "millis")]
    pub elapsed: Duration,
    /// Branches that created children.
    #[serde(skip)]
    pub branchings: u64,
    /// FastBB branchings whose child count exceeded a+1 (pivot in S) or
    /// a+2 (pivot in C), or whose a exceeded k.
    #[serde(skip)]
    pub symbk_violations: u64,
    #[serde(skip)]
    pub max_children: usize,
    #[serde(skip)]
    pub max_prefix: usize,
    #[serde(skip)]
    pub max_a: usize,
    #[serde(skip)]
    pub timed_out: bool,
}

fn prune_map<S: Serializer>(pruned: &[u64; 5], s: S) -> std::result::Result<S::Ok, S::Error> {
    let map: BTreeMap<&str, u64> =
        PruneReason::ALL.iter().map(|r| (r.as_str(), pruned[*r as usize])).collect();
    map.serialize(s)
}

fn millis<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

impl SearchStats {
    pub fn pruned_by(&self, reason: PruneReason) -> u64 {
        self.pruned[reason as usize]
    }

    pub fn pruned_total(&self) -> u64 {
        self.pruned.iter().sum()
    }

    /// Adds the counters of `other`. Elapsed time is left to the caller.
    pub fn absorb(&mut self, other: &SearchStats) {
        self.branches_explored += other.branches_explored;
        for (a, b) in self.pruned.iter_mut().zip(other.pruned) {
            *a += b;
        }
        self.terminals += other.terminals;
        self.branchings += other.branchings;
        self.symbk_violations += other.symbk_violations;
        self.max_children = self.max_children.max(other.max_children);
        self.max_prefix = self.max_prefix.max(other.max_prefix);
        self.max_a = self.max_a.max(other.max_a);
        self.timed_out |= other.timed_out;
    }
}

/// Maps a local graph back to the graph results are reported in. The local
/// graph must be the subgraph of `graph` induced by the listed ids.
#[derive(Clone, Copy, Debug)]
pub struct Target<'a> {
    pub graph: &'a BipartiteGraph,
    pub left_ids: Option<&'a [u32]>,
    pub right_ids: Option<&'a [u32]>,
}

impl<'a> Target<'a> {
    pub fn identity(graph: &'a BipartiteGraph) -> Self {
        Target { graph, left_ids: None, right_ids: None }
    }
}

pub(crate) struct Ctx<'a> {
    pub params: &'a SearchParams,
    pub pool: &'a ResultPool,
    pub limits: &'a Limits,
    pub target: Target<'a>,
    pub stats: SearchStats,
}

impl Ctx<'_> {
    /// Counts a branch and reports whether the search must stop.
    #[inline]
    fn enter(&mut self) -> bool {
        self.stats.branches_explored += 1;
        if self.stats.branches_explored.is_multiple_of(1024) {
            self.limits.poll()
        } else {
            self.limits.is_cancelled()
        }
    }

    fn offer(&mut self, b: &Branch<'_>) {
        self.stats.terminals += 1;
        // local graphs are induced subgraphs, so the pool would reject these
        let small = b.sc_size(Side::Left) < self.params.theta_l || b.sc_size(Side::Right) < self.params.theta_r;
        if small || self.pool.threshold().is_some_and(|t| b.sc_edges() < t) {
            return;
        }
        let (mut left, mut right) = b.sc_sets();
        if let Some(ids) = self.target.left_ids {
            left.iter_mut().for_each(|v| *v = ids[*v as usize]);
        }
        if let Some(ids) = self.target.right_ids {
            right.iter_mut().for_each(|u| *u = ids[*u as usize]);
        }
        self.pool.offer(self.target.graph, left, right, self.params);
    }

    fn prune(&mut self, b: &mut Branch<'_>) -> bool {
        match crate::biplex::should_prune(b, self.params, self.pool) {
            Some(r) => {
                self.stats.pruned[r as usize] += 1;
                true
            }
            None => false,
        }
    }

    /// Decides from [`Branch::include_lookahead`] whether the branch that
    /// includes `x` would fail the size or edge bound. If so it is counted
    /// as explored and pruned without being built.
    fn include_is_hopeless(&mut self, b: &mut Branch<'_>, x: u32) -> bool {
        let Some(la) = b.include_lookahead(x) else { return false };
        let (theta_own, theta_opp) = match b.vertex_ref(x).side {
            Side::Left => (self.params.theta_l, self.params.theta_r),
            Side::Right => (self.params.theta_r, self.params.theta_l),
        };
        let reason = if la.opp_size < theta_opp || la.own_size < theta_own {
            PruneReason::SizeBound
        } else if self.pool.threshold().is_some_and(|t| la.edges <= t) {
            PruneReason::EdgeBound
        } else {
            return false;
        };
        self.stats.branches_explored += 1;
        self.stats.pruned[reason as usize] += 1;
        true
    }
}

/// Runs `kernel` from `start` on the calling thread. Recursion depth is
/// bounded by the number of vertices of the branch's graph; callers own the
/// stack size (see [`with_search_stack`]).
pub fn run_kernel(
    kernel: Kernel,
    start: &mut Branch<'_>,
    target: Target<'_>,
    params: &SearchParams,
    pool: &ResultPool,
    limits: &Limits,
) -> SearchStats {
    let t0 = Instant::now();
    let mut ctx = Ctx { params, pool, limits, target, stats: SearchStats::default() };
    if !limits.is_cancelled() {
        start.set_degree_floor(params.theta_l, params.theta_r);
        let m = start.mark();
        start.refine_d();
        match kernel {
            Kernel::Basic => basic::recurse(&mut ctx, start),
            Kernel::Fast => fast::recurse(&mut ctx, start),
        }
        start.undo(m);
    }
    ctx.stats.timed_out = limits.is_cancelled();
    ctx.stats.elapsed = t0.elapsed();
    ctx.stats
}

/// Stack size for threads that run kernels.
pub const SEARCH_STACK_BYTES: usize = 512 << 20;

/// Runs `f` on a scoped thread with [`SEARCH_STACK_BYTES`] of stack.
pub fn with_search_stack<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(SEARCH_STACK_BYTES)
            .spawn_scoped(s, f)
            .expect("spawn search thread")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}

fn run_plain(
    kernel: Kernel,
    g: &BipartiteGraph,
    p: &SearchParams,
    pool: &ResultPool,
    start: Option<Branch<'_>>,
) -> SearchStats {
    let limits = Limits::none();
    with_search_stack(|| {
        let mut b = start.unwrap_or_else(|| Branch::root(g, p.k));
        run_kernel(kernel, &mut b, Target::identity(g), p, pool, &limits)
    })
}

/// BasicBB from `start`, or from the root branch (∅, L ∪ R, ∅).
pub fn basic_bb(
    g: &BipartiteGraph,
    p: &SearchParams,
    pool: &ResultPool,
    start: Option<Branch<'_>>,
) -> SearchStats {
    run_plain(Kernel::Basic, g, p, pool, start)
}

/// FastBB from `start`, or from the root branch (∅, L ∪ R, ∅).
pub fn fast_bb(
    g: &BipartiteGraph,
    p: &SearchParams,
    pool: &ResultPool,
    start: Option<Branch<'_>>,
) -> SearchStats {
    run_plain(Kernel::Fast, g, p, pool, start)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PivotChoice {
    pub vertex: VertexRef,
    pub in_partial: bool,
    /// k − δ̄(v̂, S_opp)
    pub a: usize,
    /// δ̄(v̂, C_opp)
    pub b: usize,
}

/// Unified id, membership in S, a, b.
pub(crate) fn pivot_raw(br: &Branch<'_>) -> Option<(u32, bool, usize, usize)> {
    let k = br.k();
    for (status, in_s) in [(Status::S, true), (Status::C, false)] {
        let best = [0, 1]
            .into_iter()
            .flat_map(|side| br.members(status, side).iter().copied())
            .filter(|&x| br.nd_sc(x) > k)
            .min_by_key(|&x| (std::cmp::Reverse(br.nd_sc(x)), x));
        if let Some(x) = best {
            let nd_s = br.nd_s(x);
            let a = k.saturating_sub(nd_s);
            let b = br.nd_sc(x) - nd_s;
            return Some((x, in_s, a, b));
        }
    }
    None
}

/// The branching pivot: among vertices of S ∪ C missing more than k vertices
/// of (S ∪ C)_opp, prefer S, then the largest miss count, then Left before
/// Right, then the smaller index.
pub fn select_pivot(br: &Branch<'_>) -> Result<PivotChoice> {
    let (x, in_partial, a, b) = pivot_raw(br)
        .ok_or_else(|| Error::Contract("no pivot: S ∪ C is already a k-biplex".into()))?;
    Ok(PivotChoice { vertex: br.vertex_ref(x), in_partial, a, b })
}

pub(crate) fn prefix_raw(br: &mut Branch<'_>, x: u32, in_s: bool, a: usize, out: &mut Vec<u32>) {
    br.smallest_c_non_neighbors(x, a + 1, out);
    if !in_s {
        out.insert(0, x);
    }
}

/// The materialized head of the Sym-BK ordering: the a+1 first
/// non-neighbours of the pivot in C_opp (pivot in S), or the pivot followed
/// by a+1 of them (pivot in C). Non-neighbours are ordered by ascending
/// δ(u, S ∪ C), then index.
pub fn build_ordering(br: &mut Branch<'_>, pivot: &PivotChoice) -> Vec<VertexRef> {
    let x = br.unify(pivot.vertex);
    let mut out = Vec::new();
    prefix_raw(br, x, pivot.in_partial, pivot.a, &mut out);
    out.into_iter().map(|y| br.vertex_ref(y)).collect()
}
