use serde::Serialize;

use super::{ResultPool, SearchParams};
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Side, VertexRef};

/// Upper bounds on a child branch, see [`Branch::include_lookahead`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Lookahead {
    pub opp_size: usize,
    pub own_size: usize,
    pub edges: u64,
}

/// Where a vertex sits in a branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Out,
    /// Partial set S.
    S,
    /// Candidate set C.
    C,
    /// Exclusion set D.
    D,
}

impl Status {
    fn slot(self) -> Option<usize> {
        match self {
            Status::Out => None,
            Status::S => Some(0),
            Status::C => Some(1),
            Status::D => Some(2),
        }
    }

    fn in_sc(self) -> bool {
        matches!(self, Status::S | Status::C)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PruneReason {
    NotBiplex,
    SizeBound,
    EdgeBound,
    NonMaximal,
    PbUpperBound,
}

impl PruneReason {
    pub const ALL: [PruneReason; 5] = [
        PruneReason::NotBiplex,
        PruneReason::SizeBound,
        PruneReason::EdgeBound,
        PruneReason::NonMaximal,
        PruneReason::PbUpperBound,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PruneReason::NotBiplex => "not_biplex",
            PruneReason::SizeBound => "size_bound",
            PruneReason::EdgeBound => "edge_bound",
            PruneReason::NonMaximal => "non_maximal",
            PruneReason::PbUpperBound => "pb_upper_bound",
        }
    }
}

/// A search branch (S, C, D) over one graph, with incremental counters and
/// an undo trail.
///
/// Internally vertices use unified ids: left vertex `v` is `v`, right vertex
/// `u` is `left_count + u`. For every vertex, `deg_s` and `deg_sc` count its
/// neighbours in S and in S ∪ C on the opposite side, whatever its status.
#[derive(Clone, Debug)]
pub struct Branch<'g> {
    g: &'g BipartiteGraph,
    k: usize,
    nl: usize,
    status: Vec<Status>,
    pos: Vec<u32>,
    // sets[slot][side]
    sets: [[Vec<u32>; 2]; 3],
    deg_s: Vec<u32>,
    deg_sc: Vec<u32>,
    s_size: [usize; 2],
    sc_size: [usize; 2],
    sc_edges: u64,
    trail: Vec<(u32, Status)>,
    stamp: Vec<u32>,
    // zero outside include_lookahead
    hits: Vec<u32>,
    cnt: Vec<u32>,
    look: [Vec<u32>; 3],
    epoch: u32,
    scratch: Vec<u32>,
    // C members with fewer S ∪ C neighbours than floor[side] are dropped
    floor: [u32; 2],
    // vertices whose deg_sc fell below their floor since the last refine_d
    below_floor: Vec<u32>,
}

const LEFT: usize = 0;
const RIGHT: usize = 1;

impl<'g> Branch<'g> {
    fn blank(g: &'g BipartiteGraph, k: usize) -> Self {
        let n = g.vertex_count();
        Branch {
            g,
            k,
            nl: g.left_count(),
            status: vec![Status::Out; n],
            pos: vec![0; n],
            sets: Default::default(),
            deg_s: vec![0; n],
            deg_sc: vec![0; n],
            s_size: [0; 2],
            sc_size: [0; 2],
            sc_edges: 0,
            trail: Vec::new(),
            stamp: vec![0; n],
            hits: vec![0; n],
            cnt: vec![0; n],
            look: Default::default(),
            epoch: 0,
            scratch: Vec::new(),
            floor: [0; 2],
            below_floor: Vec::new(),
        }
    }

    /// The root branch (∅, L ∪ R, ∅).
    pub fn root(g: &'g BipartiteGraph, k: usize) -> Self {
        let mut b = Self::blank(g, k);
        let n = g.vertex_count() as u32;
        for x in 0..n {
            let side = b.side_idx(x);
            b.pos[x as usize] = b.sets[1][side].len() as u32;
            b.sets[1][side].push(x);
            b.status[x as usize] = Status::C;
            b.deg_sc[x as usize] = b.nbrs(x).len() as u32;
        }
        b.sc_size = [g.left_count(), g.right_count()];
        b.sc_edges = g.edge_count();
        b
    }

    /// A branch with exactly the given sets and no refinement. Vertices not
    /// listed are outside the branch.
    pub fn from_sets(
        g: &'g BipartiteGraph,
        k: usize,
        s: &[VertexRef],
        c: &[VertexRef],
        d: &[VertexRef],
    ) -> Result<Self> {
        let mut b = Self::blank(g, k);
        for (list, status) in [(s, Status::S), (c, Status::C), (d, Status::D)] {
            for &v in list {
                if v.index as usize >= g.side_count(v.side) {
                    return Err(Error::InvalidArgument(format!("{v} is not a vertex")));
                }
                let x = b.unify(v);
                if b.status[x as usize] != Status::Out {
                    return Err(Error::InvalidArgument(format!("{v} listed twice")));
                }
                b.apply(x, status);
            }
        }
        Ok(b)
    }

    /// `from_sets` followed by a full refinement of C and D.
    pub fn seeded(
        g: &'g BipartiteGraph,
        k: usize,
        s: &[VertexRef],
        c: &[VertexRef],
        d: &[VertexRef],
    ) -> Result<Self> {
        let mut b = Self::from_sets(g, k, s, c, d)?;
        b.refine_full();
        b.trail.clear();
        Ok(b)
    }

    pub fn graph(&self) -> &'g BipartiteGraph {
        self.g
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub(crate) fn side_idx(&self, x: u32) -> usize {
        (x as usize >= self.nl) as usize
    }

    pub(crate) fn unify(&self, v: VertexRef) -> u32 {
        match v.side {
            Side::Left => v.index,
            Side::Right => self.nl as u32 + v.index,
        }
    }

    pub(crate) fn vertex_ref(&self, x: u32) -> VertexRef {
        if (x as usize) < self.nl {
            VertexRef::left(x)
        } else {
            VertexRef::right(x - self.nl as u32)
        }
    }

    /// Neighbours of `x` as side-local indices of the opposite side.
    #[inline]
    fn nbrs(&self, x: u32) -> &'g [u32] {
        if (x as usize) < self.nl {
            self.g.neighbors_left(x)
        } else {
            self.g.neighbors_right(x - self.nl as u32)
        }
    }

    /// Offset turning a neighbour of `x` into a unified id.
    #[inline]
    fn nbr_offset(&self, x: u32) -> u32 {
        if (x as usize) < self.nl {
            self.nl as u32
        } else {
            0
        }
    }

    pub fn status(&self, v: VertexRef) -> Status {
        self.status[self.unify(v) as usize]
    }

    pub(crate) fn status_of(&self, x: u32) -> Status {
        self.status[x as usize]
    }

    pub(crate) fn members(&self, status: Status, side: usize) -> &[u32] {
        match status.slot() {
            Some(slot) => &self.sets[slot][side],
            None => &[],
        }
    }

    /// Side-local indices of the vertices with `status` on `side`, sorted.
    pub fn side_members(&self, status: Status, side: Side) -> Vec<u32> {
        let s = match side {
            Side::Left => LEFT,
            Side::Right => RIGHT,
        };
        let off = if s == LEFT { 0 } else { self.nl as u32 };
        let mut out: Vec<u32> = self.members(status, s).iter().map(|&x| x - off).collect();
        out.sort_unstable();
        out
    }

    /// Vertex sets of G[S ∪ C] as side-local sorted lists.
    pub fn sc_sets(&self) -> (Vec<u32>, Vec<u32>) {
        let mut left = self.side_members(Status::S, Side::Left);
        left.extend(self.side_members(Status::C, Side::Left));
        left.sort_unstable();
        let mut right = self.side_members(Status::S, Side::Right);
        right.extend(self.side_members(Status::C, Side::Right));
        right.sort_unstable();
        (left, right)
    }

    pub fn s_size(&self, side: Side) -> usize {
        self.s_size[side as usize]
    }

    pub fn sc_size(&self, side: Side) -> usize {
        self.sc_size[side as usize]
    }

    pub fn c_size(&self) -> usize {
        self.sets[1][LEFT].len() + self.sets[1][RIGHT].len()
    }

    /// |E(G[S ∪ C])|.
    pub fn sc_edges(&self) -> u64 {
        self.sc_edges
    }

    /// δ̄(v, S_opp).
    pub fn nondeg_in_s(&self, v: VertexRef) -> usize {
        self.nd_s(self.unify(v))
    }

    /// δ̄(v, (S ∪ C)_opp).
    pub fn nondeg_in_sc(&self, v: VertexRef) -> usize {
        self.nd_sc(self.unify(v))
    }

    #[inline]
    pub(crate) fn nd_s(&self, x: u32) -> usize {
        self.s_size[1 - self.side_idx(x)] - self.deg_s[x as usize] as usize
    }

    #[inline]
    pub(crate) fn nd_sc(&self, x: u32) -> usize {
        self.sc_size[1 - self.side_idx(x)] - self.deg_sc[x as usize] as usize
    }

    /// δ(x, (S ∪ C)_opp).
    #[inline]
    pub(crate) fn deg_sc(&self, x: u32) -> usize {
        self.deg_sc[x as usize] as usize
    }

    /// Moves `x` to `to`, updating counters. Not logged.
    fn apply(&mut self, x: u32, to: Status) {
        let from = self.status[x as usize];
        if from == to {
            return;
        }
        let side = self.side_idx(x);
        let ds: i32 = match (from == Status::S, to == Status::S) {
            (false, true) => 1,
            (true, false) => -1,
            _ => 0,
        };
        let dsc: i32 = match (from.in_sc(), to.in_sc()) {
            (false, true) => 1,
            (true, false) => -1,
            _ => 0,
        };
        if dsc == 1 {
            self.sc_edges += self.deg_sc[x as usize] as u64;
        } else if dsc == -1 {
            self.sc_edges -= self.deg_sc[x as usize] as u64;
        }
        if ds != 0 || dsc != 0 {
            let off = self.nbr_offset(x);
            let nb = self.nbrs(x);
            if ds != 0 {
                for &y in nb {
                    let c = &mut self.deg_s[(y + off) as usize];
                    *c = c.wrapping_add_signed(ds);
                }
            }
            if dsc > 0 {
                for &y in nb {
                    self.deg_sc[(y + off) as usize] += 1;
                }
            } else if dsc < 0 {
                let f = self.floor[1 - side];
                for &y in nb {
                    let c = &mut self.deg_sc[(y + off) as usize];
                    *c -= 1;
                    if *c + 1 == f {
                        self.below_floor.push(y + off);
                    }
                }
            }
            self.s_size[side] = (self.s_size[side] as isize + ds as isize) as usize;
            self.sc_size[side] = (self.sc_size[side] as isize + dsc as isize) as usize;
        }
        if let Some(slot) = from.slot() {
            let set = &mut self.sets[slot][side];
            let p = self.pos[x as usize] as usize;
            let last = *set.last().expect("member of a non-empty set");
            set.swap_remove(p);
            if last != x {
                self.pos[last as usize] = p as u32;
            }
        }
        if let Some(slot) = to.slot() {
            let set = &mut self.sets[slot][side];
            self.pos[x as usize] = set.len() as u32;
            set.push(x);
        }
        self.status[x as usize] = to;
    }

    fn move_logged(&mut self, x: u32, to: Status) {
        let from = self.status[x as usize];
        if from != to {
            self.trail.push((x, from));
            self.apply(x, to);
        }
    }

    /// C → S.
    pub(crate) fn include(&mut self, x: u32) {
        debug_assert_eq!(self.status[x as usize], Status::C);
        self.move_logged(x, Status::S);
    }

    /// C → D.
    pub(crate) fn exclude(&mut self, x: u32) {
        debug_assert_eq!(self.status[x as usize], Status::C);
        self.move_logged(x, Status::D);
    }

    /// Removes `x` from the branch entirely.
    pub(crate) fn drop_vertex(&mut self, x: u32) {
        self.move_logged(x, Status::Out);
    }

    pub fn include_vertex(&mut self, v: VertexRef) {
        self.include(self.unify(v));
    }

    pub fn exclude_vertex(&mut self, v: VertexRef) {
        self.exclude(self.unify(v));
    }

    /// A position in the undo trail.
    pub fn mark(&self) -> usize {
        self.trail.len()
    }

    /// Reverts every move made since `mark`.
    pub fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (x, from) = self.trail.pop().expect("trail longer than mark");
            self.apply(x, from);
        }
        self.below_floor.clear();
    }

    fn next_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
        self.epoch
    }

    fn stamp_neighbors(&mut self, x: u32) -> u32 {
        let e = self.next_epoch();
        let off = self.nbr_offset(x);
        for &y in self.nbrs(x) {
            self.stamp[(y + off) as usize] = e;
        }
        e
    }

    /// Drops every member of C and D on `side` for which `doomed` holds.
    fn drop_where(&mut self, side: usize, doomed: impl Fn(&Self, u32) -> bool) {
        for slot in [1, 2] {
            let mut i = self.sets[slot][side].len();
            while i > 0 {
                i -= 1;
                let w = self.sets[slot][side][i];
                if doomed(self, w) {
                    self.drop_vertex(w);
                }
            }
        }
    }

    /// Restores "every vertex of C ∪ D can join S alone" after `x` joined S.
    pub(crate) fn refine_after_include(&mut self, x: u32) {
        let k = self.k;
        let s = self.side_idx(x);
        let o = 1 - s;
        let e = self.stamp_neighbors(x);
        let x_saturated = self.nd_s(x) >= k;
        self.drop_where(o, |b, w| b.stamp[w as usize] != e && (x_saturated || b.nd_s(w) > k));
        let mut newly = std::mem::take(&mut self.scratch);
        newly.clear();
        newly.extend(
            self.sets[0][o]
                .iter()
                .copied()
                .filter(|&v| self.stamp[v as usize] != e && self.nd_s(v) == k),
        );
        for &v in &newly {
            let ev = self.stamp_neighbors(v);
            self.drop_where(s, |b, w| b.stamp[w as usize] != ev);
        }
        self.scratch = newly;
    }

    /// Bounds for the branch built by `include(x)`, `refine_after_include(x)`
    /// and the degree floors, computed without building it: the sizes of
    /// (S ∪ C)_opp and (S ∪ C)_own and the edge count of G[S ∪ C], each at
    /// least the child's. Only answers when `x` misses at least k vertices
    /// of S_opp, so that (S ∪ C)_opp shrinks into S_opp ∪ Γ(x), and when the
    /// floors are set.
    pub(crate) fn include_lookahead(&mut self, x: u32) -> Option<Lookahead> {
        let k = self.k;
        let s = self.side_idx(x);
        let o = 1 - s;
        let (floor_s, floor_o) = (self.floor[s], self.floor[o]);
        if self.nd_s(x) < k || floor_s == 0 {
            return None;
        }
        let [mut sat, mut opp, mut touched] = std::mem::take(&mut self.look);
        let ex = self.stamp_neighbors(x);
        // S_o members saturated by x; the own side keeps only their common
        // neighbours
        sat.clear();
        sat.extend(
            self.sets[0][o].iter().copied().filter(|&v| self.stamp[v as usize] != ex && self.nd_s(v) + 1 == k),
        );
        for &v in &sat {
            let off = self.nbr_offset(v);
            for &y in self.nbrs(v) {
                self.hits[(y + off) as usize] += 1;
            }
        }
        let m = sat.len() as u32;
        let own_ok = |b: &Self, y: u32| match b.status[y as usize] {
            Status::S => true,
            Status::C => y == x || b.hits[y as usize] == m,
            _ => false,
        };
        opp.clear();
        opp.extend(self.sets[0][o].iter().copied());
        let off = self.nbr_offset(x);
        opp.extend(self.nbrs(x).iter().map(|&y| y + off).filter(|&y| self.status[y as usize] == Status::C));
        // cnt[y]: neighbours of own-side y in `opp`
        touched.clear();
        for &w in &opp {
            let off = self.nbr_offset(w);
            for &y in self.nbrs(w) {
                let y = y + off;
                if own_ok(self, y) {
                    if self.cnt[y as usize] == 0 {
                        touched.push(y);
                    }
                    self.cnt[y as usize] += 1;
                }
            }
        }
        let alive = |b: &Self, y: u32| {
            own_ok(b, y) && (b.status[y as usize] == Status::S || y == x || b.cnt[y as usize] >= floor_s)
        };
        // peel C_o members of `opp` below their floor
        let mut edges;
        loop {
            edges = 0u64;
            let mut i = 0;
            let mut changed = false;
            while i < opp.len() {
                let w = opp[i];
                let off = self.nbr_offset(w);
                let d = self.nbrs(w).iter().filter(|&&y| alive(self, y + off)).count() as u32;
                if self.status[w as usize] == Status::C && d < floor_o {
                    for &y in self.nbrs(w) {
                        if own_ok(self, y + off) {
                            self.cnt[(y + off) as usize] -= 1;
                        }
                    }
                    opp.swap_remove(i);
                    changed = true;
                } else {
                    edges += d as u64;
                    i += 1;
                }
            }
            if !changed {
                break;
            }
        }
        let own = self.s_size[s]
            + 1
            + touched
                .iter()
                .filter(|&&y| y != x && self.status[y as usize] == Status::C && self.cnt[y as usize] >= floor_s)
                .count();
        let out = Lookahead { opp_size: opp.len(), own_size: own, edges };
        for &y in &touched {
            self.cnt[y as usize] = 0;
        }
        for &v in &sat {
            let off = self.nbr_offset(v);
            for &y in self.nbrs(v) {
                self.hits[(y + off) as usize] = 0;
            }
        }
        self.look = [sat, opp, touched];
        Some(out)
    }

    /// Sets the degree floors implied by the side thresholds: a vertex of a
    /// k-biplex with `theta_r` right vertices has at least `theta_r − k` right
    /// neighbours in it, and symmetrically. Takes effect at the next
    /// [`Self::refine_d`].
    pub fn set_degree_floor(&mut self, theta_l: usize, theta_r: usize) {
        self.floor = [
            theta_r.saturating_sub(self.k) as u32,
            theta_l.saturating_sub(self.k) as u32,
        ];
        self.below_floor.clear();
        for side in [LEFT, RIGHT] {
            let f = self.floor[side];
            let low = self.sets[1][side].iter().filter(|&&w| self.deg_sc[w as usize] < f);
            self.below_floor.extend(low);
        }
    }

    /// Drops C members below their side's degree floor until none is left.
    fn refine_degree(&mut self) {
        while let Some(w) = self.below_floor.pop() {
            let side = self.side_idx(w);
            if self.status[w as usize] == Status::C && self.deg_sc[w as usize] < self.floor[side] {
                self.drop_vertex(w);
            }
        }
    }

    /// Applies the degree floors, then drops D vertices missing more than k
    /// vertices of (S ∪ C)_opp.
    pub(crate) fn refine_d(&mut self) {
        self.refine_degree();
        let k = self.k;
        for side in [LEFT, RIGHT] {
            let mut i = self.sets[2][side].len();
            while i > 0 {
                i -= 1;
                let w = self.sets[2][side][i];
                if self.nd_sc(w) > k {
                    self.drop_vertex(w);
                }
            }
        }
    }

    /// Can `w` join S on its own while S stays a k-biplex?
    pub(crate) fn addable(&self, w: u32) -> bool {
        if self.nd_s(w) > self.k {
            return false;
        }
        let o = 1 - self.side_idx(w);
        let off = self.nbr_offset(w);
        let nb = self.nbrs(w);
        self.sets[0][o]
            .iter()
            .filter(|&&v| self.nd_s(v) >= self.k)
            .all(|&v| nb.binary_search(&(v - off)).is_ok())
    }

    /// The `count` members of C on the side opposite `x` that are not adjacent
    /// to `x`, smallest (δ(w, S ∪ C), id) first. Returns fewer when C holds
    /// fewer such vertices.
    pub(crate) fn smallest_c_non_neighbors(&mut self, x: u32, count: usize, out: &mut Vec<u32>) {
        out.clear();
        if count == 0 {
            return;
        }
        let e = self.stamp_neighbors(x);
        let o = 1 - self.side_idx(x);
        // `out` stays sorted by key and never exceeds `count`
        for &w in &self.sets[1][o] {
            if self.stamp[w as usize] == e {
                continue;
            }
            let key = (self.deg_sc[w as usize], w);
            if out.len() == count {
                let last = out[count - 1];
                if key >= (self.deg_sc[last as usize], last) {
                    continue;
                }
                out.pop();
            }
            let at = out.partition_point(|&y| (self.deg_sc[y as usize], y) < key);
            out.insert(at, w);
        }
    }

    /// Recomputes C and D from scratch: keeps only vertices that can join S
    /// alone, then applies the D rule.
    pub fn refine_full(&mut self) {
        for side in [LEFT, RIGHT] {
            self.drop_where(side, |b, w| !b.addable(w));
        }
        self.refine_d();
    }

    /// Is G[S] a k-biplex?
    pub fn s_is_biplex(&self) -> bool {
        self.sets[0].iter().flatten().all(|&x| self.nd_s(x) <= self.k)
    }

    /// Is G[S ∪ C] a k-biplex?
    pub fn is_terminal(&self) -> bool {
        self.sets[..2].iter().flatten().flatten().all(|&x| self.nd_sc(x) <= self.k)
    }

    /// Upper bounds on the side sizes of any k-biplex extending S inside
    /// S ∪ C: τ_L = min over u ∈ S_R of δ(u, S_L ∪ C_L) + k, or |S_L ∪ C_L|
    /// when S_R is empty; symmetric for τ_R.
    pub fn tau_bounds(&self) -> (usize, usize) {
        let tau = |own: usize| {
            self.sets[0][1 - own]
                .iter()
                .map(|&u| self.deg_sc(u) + self.k)
                .min()
                .unwrap_or(self.sc_size[own])
        };
        (tau(LEFT), tau(RIGHT))
    }

    /// Condition (4): a D vertex whose addition would keep every k-biplex of
    /// this branch a k-biplex.
    fn has_dominating_exclusion(&mut self) -> bool {
        let k = self.k;
        for t in [LEFT, RIGHT] {
            let o = 1 - t;
            if !self.sets[2][t].iter().any(|&v| self.nd_sc(v) <= k) {
                continue;
            }
            // W_o: members of (S ∪ C)_o already missing k of (S ∪ C)_t
            let e = self.next_epoch();
            let mut critical = 0usize;
            for slot in [0, 1] {
                for i in 0..self.sets[slot][o].len() {
                    let w = self.sets[slot][o][i];
                    if self.nd_sc(w) >= k {
                        self.stamp[w as usize] = e;
                        critical += 1;
                    }
                }
            }
            for &v in &self.sets[2][t] {
                if self.nd_sc(v) > k {
                    continue;
                }
                let off = self.nbr_offset(v);
                let hit = self.nbrs(v).iter().filter(|&&y| self.stamp[(y + off) as usize] == e).count();
                if hit == critical {
                    return true;
                }
            }
        }
        false
    }

    /// Recomputes every counter and set index and compares with the
    /// incremental state.
    pub fn check_consistency(&self) -> Result<()> {
        let n = self.g.vertex_count();
        let mut s_size = [0usize; 2];
        let mut sc_size = [0usize; 2];
        for x in 0..n as u32 {
            let st = self.status[x as usize];
            let side = self.side_idx(x);
            if st == Status::S {
                s_size[side] += 1;
            }
            if st.in_sc() {
                sc_size[side] += 1;
            }
            if let Some(slot) = st.slot() {
                let p = self.pos[x as usize] as usize;
                if self.sets[slot][side].get(p) != Some(&x) {
                    return Err(Error::Contract(format!("set index broken at {x}")));
                }
            }
        }
        let listed: usize = self.sets.iter().flatten().map(Vec::len).sum();
        let placed = self.status.iter().filter(|s| **s != Status::Out).count();
        if listed != placed || s_size != self.s_size || sc_size != self.sc_size {
            return Err(Error::Contract("set sizes out of sync".into()));
        }
        let mut sc_edges = 0u64;
        for x in 0..n as u32 {
            let off = self.nbr_offset(x);
            let (mut ds, mut dsc) = (0u32, 0u32);
            for &y in self.nbrs(x) {
                let st = self.status[(y + off) as usize];
                ds += (st == Status::S) as u32;
                dsc += st.in_sc() as u32;
            }
            if ds != self.deg_s[x as usize] || dsc != self.deg_sc[x as usize] {
                return Err(Error::Contract(format!("degree counters wrong at {x}")));
            }
            if x < self.nl as u32 && self.status[x as usize].in_sc() {
                sc_edges += dsc as u64;
            }
        }
        if sc_edges != self.sc_edges {
            return Err(Error::Contract("edge counter out of sync".into()));
        }
        Ok(())
    }
}

/// The first pruning condition that holds for `b`, checked in the order
/// NotBiplex, SizeBound, EdgeBound, NonMaximal, PbUpperBound.
pub fn should_prune(b: &mut Branch<'_>, p: &SearchParams, pool: &ResultPool) -> Option<PruneReason> {
    if !b.s_is_biplex() {
        return Some(PruneReason::NotBiplex);
    }
    let (tau_l, tau_r) = b.tau_bounds();
    let tau_l = tau_l.min(b.sc_size[LEFT]);
    let tau_r = tau_r.min(b.sc_size[RIGHT]);
    if tau_l < p.theta_l || tau_r < p.theta_r {
        return Some(PruneReason::SizeBound);
    }
    if let Some(kth) = pool.threshold() {
        if b.sc_edges <= kth || (tau_l as u64) * (tau_r as u64) <= kth {
            return Some(PruneReason::EdgeBound);
        }
    }
    if b.has_dominating_exclusion() {
        return Some(PruneReason::NonMaximal);
    }
    if p.ub_l.is_some_and(|u| b.s_size[LEFT] > u) || p.ub_r.is_some_and(|u| b.s_size[RIGHT] > u) {
        return Some(PruneReason::PbUpperBound);
    }
    None
}
