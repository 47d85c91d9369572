//! The k-biplex predicate and everything a search needs around it: branch
//! state, pruning conditions and the top-K pool.

mod branch;
mod pool;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Side, VertexRef};

pub use branch::{should_prune, Branch, PruneReason, Status};
pub use pool::ResultPool;

/// Search parameters. `new` enforces `theta >= 2k+1` on both sides; the
/// fields are public so that oracle-only tests can relax the thresholds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchParams {
    pub k: usize,
    pub topk: usize,
    pub theta_l: usize,
    pub theta_r: usize,
    pub ub_l: Option<usize>,
    pub ub_r: Option<usize>,
}

impl SearchParams {
    pub fn new(k: usize, topk: usize, theta_l: usize, theta_r: usize) -> Result<Self> {
        let p = SearchParams { k, topk, theta_l, theta_r, ub_l: None, ub_r: None };
        p.validate()?;
        Ok(p)
    }

    /// `k`, `topk` and the default thresholds `2k+1`.
    pub fn with_defaults(k: usize, topk: usize) -> Result<Self> {
        Self::new(k, topk, 2 * k + 1, 2 * k + 1)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        if self.topk == 0 {
            return Err(Error::InvalidArgument("topk must be positive".into()));
        }
        let min = 2 * self.k + 1;
        if self.theta_l < min || self.theta_r < min {
            return Err(Error::InvalidArgument(format!(
                "thresholds must be at least 2k+1 = {min}, got ({}, {})",
                self.theta_l, self.theta_r
            )));
        }
        if self.ub_l.is_some_and(|u| u < self.theta_l) || self.ub_r.is_some_and(|u| u < self.theta_r)
        {
            return Err(Error::InvalidArgument("side upper bounds below thresholds".into()));
        }
        Ok(())
    }

    pub fn with_upper_bounds(&self, ub_l: usize, ub_r: usize) -> Self {
        SearchParams { ub_l: Some(ub_l), ub_r: Some(ub_r), ..self.clone() }
    }
}

/// A maximal k-biplex reported by a search, in the index space of the graph
/// it was searched in.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FoundBiplex {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
    pub edges: u64,
}

impl FoundBiplex {
    pub fn new(g: &BipartiteGraph, mut left: Vec<u32>, mut right: Vec<u32>) -> Self {
        left.sort_unstable();
        right.sort_unstable();
        let edges = g.induced_edge_count(&left, &right);
        FoundBiplex { left, right, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Canonical report order: more edges first, then lexicographic sets.
    pub fn canonical_cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .edges
            .cmp(&self.edges)
            .then_with(|| self.left.cmp(&other.left))
            .then_with(|| self.right.cmp(&other.right))
    }

    /// `{"left": [labels], "right": [labels], "edges": n}` with the graph's
    /// original labels.
    pub fn to_labeled_json(&self, g: &BipartiteGraph) -> serde_json::Value {
        let side = |ids: &[u32], mk: fn(u32) -> VertexRef| -> Vec<String> {
            ids.iter().map(|&i| g.label(mk(i)).into_owned()).collect()
        };
        serde_json::json!({
            "left": side(&self.left, VertexRef::left),
            "right": side(&self.right, VertexRef::right),
            "edges": self.edges,
        })
    }
}

fn membership(n: usize, ids: &[u32]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &i in ids {
        m[i as usize] = true;
    }
    m
}

/// True iff every vertex of `x` misses at most `k` vertices of `y` and vice
/// versa. Sets may be given in any order but must not repeat vertices.
pub fn is_k_biplex(g: &BipartiteGraph, x: &[u32], y: &[u32], k: usize) -> bool {
    let in_y = membership(g.right_count(), y);
    let mut hits_right = vec![0usize; g.right_count()];
    for &v in x {
        let adj = g.neighbors_left(v).iter().filter(|&&u| in_y[u as usize]);
        let mut d = 0;
        for &u in adj {
            hits_right[u as usize] += 1;
            d += 1;
        }
        if y.len() - d > k {
            return false;
        }
    }
    y.iter().all(|&u| x.len() - hits_right[u as usize] <= k)
}

/// True iff no single vertex outside `(x, y)` can join while keeping a
/// k-biplex. By heredity this is equivalent to maximality.
pub fn is_maximal(g: &BipartiteGraph, x: &[u32], y: &[u32], k: usize) -> Result<bool> {
    if !is_k_biplex(g, x, y, k) {
        return Err(Error::Contract("maximality asked of a set that is not a k-biplex".into()));
    }
    Ok(extension_candidate(g, Side::Left, x, y, k).is_none()
        && extension_candidate(g, Side::Right, y, x, k).is_none())
}

/// Some vertex of side `side` outside `own` whose addition to `(own, other)`
/// keeps a k-biplex. `own` lies on `side`, `other` on the opposite side.
fn extension_candidate(
    g: &BipartiteGraph,
    side: Side,
    own: &[u32],
    other: &[u32],
    k: usize,
) -> Option<u32> {
    let n_own = g.side_count(side);
    let in_own = membership(n_own, own);
    let nbrs = |s: Side, i: u32| g.neighbors(VertexRef { side: s, index: i });
    // hits[w] = |Γ(w) ∩ other| for w on `side`
    let mut hits = vec![0usize; n_own];
    for &u in other {
        for &w in nbrs(side.opposite(), u) {
            hits[w as usize] += 1;
        }
    }
    // other-side vertices already missing k vertices of `own`
    let mut saturated = Vec::new();
    let in_own_ref = &in_own;
    for &u in other {
        let d = nbrs(side.opposite(), u).iter().filter(|&&w| in_own_ref[w as usize]).count();
        if own.len() - d >= k {
            saturated.push(u);
        }
    }
    let in_saturated = membership(g.side_count(side.opposite()), &saturated);
    (0..n_own as u32).find(|&w| {
        if in_own[w as usize] || other.len() - hits[w as usize] > k {
            return false;
        }
        let adj_sat = nbrs(side, w).iter().filter(|&&u| in_saturated[u as usize]).count();
        adj_sat == saturated.len()
    })
}

/// True iff the subgraph induced by `(x, y)` has a single connected component.
pub fn is_connected(g: &BipartiteGraph, x: &[u32], y: &[u32]) -> Result<bool> {
    if x.is_empty() && y.is_empty() {
        return Err(Error::Contract("connectivity of an empty subgraph".into()));
    }
    let in_x = membership(g.left_count(), x);
    let in_y = membership(g.right_count(), y);
    let mut seen_x = vec![false; g.left_count()];
    let mut seen_y = vec![false; g.right_count()];
    let start = if let Some(&v) = x.first() { VertexRef::left(v) } else { VertexRef::right(y[0]) };
    let mut queue = VecDeque::from([start]);
    let mut reached = 0usize;
    match start.side {
        Side::Left => seen_x[start.index as usize] = true,
        Side::Right => seen_y[start.index as usize] = true,
    }
    while let Some(v) = queue.pop_front() {
        reached += 1;
        let (seen, member, side) = match v.side {
            Side::Left => (&mut seen_y, &in_y, Side::Right),
            Side::Right => (&mut seen_x, &in_x, Side::Left),
        };
        for &w in g.neighbors(v) {
            if member[w as usize] && !seen[w as usize] {
                seen[w as usize] = true;
                queue.push_back(VertexRef { side, index: w });
            }
        }
    }
    Ok(reached == x.len() + y.len())
}
