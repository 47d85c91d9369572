use super::{dispatch, Exec};
use crate::biplex::{Branch, ResultPool, SearchParams};
use crate::graph::{two_hop_left, BipartiteGraph, InducedSubgraph, VertexRef};
use crate::search::{run_kernel, Kernel, Limits, SearchStats, Target};

/// The IE subproblem of one left seed v_i: the graph around v_i and a start
/// branch with S = {v_i}, earlier seeds in D and everything else in C.
#[derive(Clone, Debug)]
pub struct Subproblem {
    /// Parent ids. The left side also holds the earlier seeds placed in D.
    pub vertices: InducedSubgraph,
    /// `vertices` materialized; local ids index into `vertices.left/right`.
    pub graph: BipartiteGraph,
    /// Parent id of v_i.
    pub seed: u32,
    pub s: Vec<VertexRef>,
    pub c: Vec<VertexRef>,
    pub d: Vec<VertexRef>,
}

impl Subproblem {
    /// The refined start branch over `self.graph`.
    pub fn start(&self, k: usize) -> Branch<'_> {
        Branch::seeded(&self.graph, k, &self.s, &self.c, &self.d).expect("subproblem sets are valid")
    }
}

const UNSEEN: u8 = 0;
const ALIVE: u8 = 1;
const GONE: u8 = 2;

/// Builds IE subproblems. Left vertices are ordered by ascending degree,
/// ties by index; subproblem `i` belongs to the `i`-th vertex of that order.
///
/// Vertices are pruned to a fixpoint, with v_i exempt: a left vertex with
/// fewer than `min_r − k` neighbours in R_i or fewer than `min_r − 2k`
/// neighbours shared with v_i, and a right vertex with fewer than
/// `min_l − k` neighbours in L_i.
#[derive(Clone, Debug)]
pub struct IeDecomposer<'g> {
    g: &'g BipartiteGraph,
    k: usize,
    min_l: usize,
    min_r: usize,
    order: Vec<u32>,
    rank: Vec<u32>,
    state_l: Vec<u8>,
    state_r: Vec<u8>,
    deg_l: Vec<u32>,
    common: Vec<u32>,
    deg_r: Vec<u32>,
    seed_nbr: Vec<bool>,
}

impl<'g> IeDecomposer<'g> {
    pub fn new(g: &'g BipartiteGraph, k: usize, min_l: usize, min_r: usize) -> Self {
        let mut order: Vec<u32> = (0..g.left_count() as u32).collect();
        order.sort_by_key(|&v| (g.neighbors_left(v).len(), v));
        let mut rank = vec![0; g.left_count()];
        for (i, &v) in order.iter().enumerate() {
            rank[v as usize] = i as u32;
        }
        IeDecomposer {
            g,
            k,
            min_l,
            min_r,
            order,
            rank,
            state_l: vec![UNSEEN; g.left_count()],
            state_r: vec![UNSEEN; g.right_count()],
            deg_l: vec![0; g.left_count()],
            common: vec![0; g.left_count()],
            deg_r: vec![0; g.right_count()],
            seed_nbr: vec![false; g.right_count()],
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    /// The subproblem of the `i`-th seed, or `None` when pruning removes the
    /// seed or leaves a side below its threshold.
    pub fn subproblem(&mut self, i: usize) -> Option<Subproblem> {
        let g = self.g;
        let v = self.order[i];
        if g.neighbors_left(v).is_empty() {
            return None;
        }
        let hop = two_hop_left(g, v);
        let (mut lefts, earlier): (Vec<u32>, Vec<u32>) =
            hop.iter().partition(|&&w| self.rank[w as usize] >= self.rank[v as usize]);
        let mut rights = Vec::new();
        for &w in &lefts {
            self.state_l[w as usize] = ALIVE;
            for &u in g.neighbors_left(w) {
                if self.state_r[u as usize] == UNSEEN {
                    self.state_r[u as usize] = ALIVE;
                    rights.push(u);
                }
            }
        }
        for &u in g.neighbors_left(v) {
            self.seed_nbr[u as usize] = true;
        }
        for &w in &lefts {
            let nb = g.neighbors_left(w);
            self.deg_l[w as usize] = nb.len() as u32;
            self.common[w as usize] = nb.iter().filter(|&&u| self.seed_nbr[u as usize]).count() as u32;
        }
        for &u in &rights {
            self.deg_r[u as usize] =
                g.neighbors_right(u).iter().filter(|&&w| self.state_l[w as usize] == ALIVE).count() as u32;
        }
        let seed_ok = self.peel(v, &lefts, &rights);

        let result = if seed_ok {
            lefts.retain(|&w| self.state_l[w as usize] == ALIVE);
            let kept_r: Vec<u32> =
                rights.iter().copied().filter(|&u| self.state_r[u as usize] == ALIVE).collect();
            if lefts.len() >= self.min_l && kept_r.len() >= self.min_r {
                Some(self.build(v, &lefts, &earlier, kept_r))
            } else {
                None
            }
        } else {
            None
        };

        for &w in &hop {
            self.state_l[w as usize] = UNSEEN;
        }
        for &u in &rights {
            self.state_r[u as usize] = UNSEEN;
        }
        for &u in g.neighbors_left(v) {
            self.seed_nbr[u as usize] = false;
        }
        result
    }

    /// Peels to the fixpoint. Returns false when the seed itself fails.
    fn peel(&mut self, v: u32, lefts: &[u32], rights: &[u32]) -> bool {
        let k = self.k;
        let need_deg_l = self.min_r.saturating_sub(k) as u32;
        let need_common = self.min_r.saturating_sub(2 * k) as u32;
        let need_deg_r = self.min_l.saturating_sub(k) as u32;
        let fails_l = |s: &Self, w: u32| {
            s.deg_l[w as usize] < need_deg_l || s.common[w as usize] < need_common
        };
        if fails_l(self, v) {
            return false;
        }
        // queued vertices are already marked GONE
        let mut queue: Vec<(bool, u32)> = Vec::new();
        for &w in lefts {
            if w != v && fails_l(self, w) {
                self.state_l[w as usize] = GONE;
                queue.push((true, w));
            }
        }
        for &u in rights {
            if self.deg_r[u as usize] < need_deg_r {
                self.state_r[u as usize] = GONE;
                queue.push((false, u));
            }
        }
        let g = self.g;
        while let Some((is_left, x)) = queue.pop() {
            if is_left {
                for &u in g.neighbors_left(x) {
                    if self.state_r[u as usize] == ALIVE {
                        self.deg_r[u as usize] -= 1;
                        if self.deg_r[u as usize] < need_deg_r {
                            self.state_r[u as usize] = GONE;
                            queue.push((false, u));
                        }
                    }
                }
            } else {
                let through_seed = self.seed_nbr[x as usize];
                for &w in g.neighbors_right(x) {
                    if self.state_l[w as usize] != ALIVE {
                        continue;
                    }
                    self.deg_l[w as usize] -= 1;
                    if through_seed {
                        self.common[w as usize] -= 1;
                    }
                    if fails_l(self, w) {
                        if w == v {
                            return false;
                        }
                        self.state_l[w as usize] = GONE;
                        queue.push((true, w));
                    }
                }
            }
        }
        true
    }

    fn build(&self, v: u32, lefts: &[u32], earlier: &[u32], rights: Vec<u32>) -> Subproblem {
        let mut all_left = lefts.to_vec();
        all_left.extend_from_slice(earlier);
        let vertices = InducedSubgraph::new(all_left, rights);
        let graph = vertices.materialize(self.g);
        let local = |w: u32| vertices.left.binary_search(&w).expect("listed") as u32;
        let s = vec![VertexRef::left(local(v))];
        let d = earlier.iter().map(|&w| VertexRef::left(local(w))).collect();
        let mut c: Vec<VertexRef> =
            lefts.iter().filter(|&&w| w != v).map(|&w| VertexRef::left(local(w))).collect();
        c.extend((0..vertices.right.len() as u32).map(VertexRef::right));
        Subproblem { vertices, graph, seed: v, s, c, d }
    }
}

/// All non-skipped IE subproblems of `g` under the thresholds of `p`.
pub fn ie_decompose<'g>(g: &'g BipartiteGraph, p: &SearchParams) -> impl Iterator<Item = Subproblem> + 'g {
    let mut dec = IeDecomposer::new(g, p.k, p.theta_l, p.theta_r);
    (0..dec.len()).filter_map(move |i| dec.subproblem(i))
}

/// Runs `kernel` on every IE subproblem of `g`.
pub fn ie_run(g: &BipartiteGraph, p: &SearchParams, pool: &ResultPool, kernel: Kernel) -> SearchStats {
    ie_run_with(g, p, pool, kernel, Exec::serial(&Limits::none()))
}

pub(crate) fn ie_run_with(
    g: &BipartiteGraph,
    p: &SearchParams,
    pool: &ResultPool,
    kernel: Kernel,
    exec: Exec<'_>,
) -> SearchStats {
    ie_over(g, None, g, p, (p.theta_l, p.theta_r), pool, kernel, exec)
}

/// IE over `h`, a graph whose vertices map to `global` through `ids`
/// (identity when `None`). `mins` are the side-size lower bounds used for
/// vertex pruning.
#[allow(clippy::too_many_arguments)]
pub(super) fn ie_over(
    h: &BipartiteGraph,
    ids: Option<(&[u32], &[u32])>,
    global: &BipartiteGraph,
    p: &SearchParams,
    mins: (usize, usize),
    pool: &ResultPool,
    kernel: Kernel,
    exec: Exec<'_>,
) -> SearchStats {
    dispatch(
        h.left_count(),
        exec.workers,
        exec.limits,
        || IeDecomposer::new(h, p.k, mins.0, mins.1),
        |dec, i| {
            let Some(sub) = dec.subproblem(i) else { return SearchStats::default() };
            let lift = |local: &[u32], map: Option<&[u32]>| -> Vec<u32> {
                local.iter().map(|&x| map.map_or(x, |m| m[x as usize])).collect()
            };
            let left_ids = lift(&sub.vertices.left, ids.map(|i| i.0));
            let right_ids = lift(&sub.vertices.right, ids.map(|i| i.1));
            let target = Target { graph: global, left_ids: Some(&left_ids), right_ids: Some(&right_ids) };
            let mut b = sub.start(p.k);
            run_kernel(kernel, &mut b, target, p, pool, exec.limits)
        },
    )
}
