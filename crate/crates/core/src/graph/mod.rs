//! Bipartite graph storage and the reduction primitives used by the search
//! frameworks.
//!
//! Vertices are addressed per side: left vertices are `0..left_count()` and
//! right vertices are `0..right_count()`. Adjacency lists are strictly sorted
//! and symmetric, so a graph is immutable once built and can be shared across
//! threads freely.

mod generate;
mod io;
mod reduce;

use std::borrow::Cow;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use generate::{edges_for_density, generate_er};
pub use io::{load_edge_list, EdgeListFormat};
pub use reduce::{ab_core, two_hop_left};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A vertex together with the side it lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexRef {
    pub side: Side,
    pub index: u32,
}

impl VertexRef {
    pub fn left(index: u32) -> Self {
        VertexRef { side: Side::Left, index }
    }

    pub fn right(index: u32) -> Self {
        VertexRef { side: Side::Right, index }
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Left => write!(f, "L{}", self.index),
            Side::Right => write!(f, "R{}", self.index),
        }
    }
}

/// Original vertex labels, kept when a graph is read from a file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Labels {
    pub left: Vec<String>,
    pub right: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    adj_left: Vec<Vec<u32>>,
    adj_right: Vec<Vec<u32>>,
    edge_count: u64,
    labels: Option<Labels>,
}

impl BipartiteGraph {
    pub fn empty() -> Self {
        Self::from_edges(0, 0, std::iter::empty()).expect("empty graph is valid")
    }

    /// Builds a graph from `(left, right)` pairs. Duplicate pairs collapse.
    pub fn from_edges<I>(left_count: usize, right_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut adj_left = vec![Vec::new(); left_count];
        let mut adj_right = vec![Vec::new(); right_count];
        for (v, u) in edges {
            if v as usize >= left_count || u as usize >= right_count {
                return Err(Error::InvalidArgument(format!(
                    "edge ({v}, {u}) out of range for a {left_count}x{right_count} graph"
                )));
            }
            adj_left[v as usize].push(u);
        }
        let mut edge_count = 0u64;
        for (v, list) in adj_left.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len() as u64;
            for &u in list.iter() {
                adj_right[u as usize].push(v as u32);
            }
        }
        // right lists are filled in increasing v order, so they are already sorted
        Ok(BipartiteGraph {
            adj_left,
            adj_right,
            edge_count,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Labels) -> Result<Self> {
        if labels.left.len() != self.left_count() || labels.right.len() != self.right_count() {
            return Err(Error::InvalidArgument(
                "label table does not match the graph's side sizes".into(),
            ));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn left_count(&self) -> usize {
        self.adj_left.len()
    }

    pub fn right_count(&self) -> usize {
        self.adj_right.len()
    }

    pub fn side_count(&self, side: Side) -> usize {
        match side {
            Side::Left => self.left_count(),
            Side::Right => self.right_count(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.left_count() + self.right_count()
    }

    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    pub fn neighbors_left(&self, v: u32) -> &[u32] {
        &self.adj_left[v as usize]
    }

    pub fn neighbors_right(&self, u: u32) -> &[u32] {
        &self.adj_right[u as usize]
    }

    pub fn neighbors(&self, v: VertexRef) -> &[u32] {
        match v.side {
            Side::Left => self.neighbors_left(v.index),
            Side::Right => self.neighbors_right(v.index),
        }
    }

    pub fn degree(&self, v: VertexRef) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, left: u32, right: u32) -> bool {
        self.adj_left[left as usize].binary_search(&right).is_ok()
    }

    /// Largest degree among left vertices (the bound on any right side).
    pub fn max_left_degree(&self) -> usize {
        self.adj_left.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Largest degree among right vertices.
    pub fn max_right_degree(&self) -> usize {
        self.adj_right.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.max_left_degree().max(self.max_right_degree())
    }

    /// Edge density `2|E| / (|L| + |R|)`.
    pub fn density(&self) -> f64 {
        if self.vertex_count() == 0 {
            0.0
        } else {
            2.0 * self.edge_count as f64 / self.vertex_count() as f64
        }
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    /// The original label of a vertex, or its index when the graph is unlabeled.
    pub fn label(&self, v: VertexRef) -> Cow<'_, str> {
        let table = self.labels.as_ref().map(|l| match v.side {
            Side::Left => &l.left,
            Side::Right => &l.right,
        });
        match table {
            Some(t) => Cow::Borrowed(t[v.index as usize].as_str()),
            None => Cow::Owned(v.index.to_string()),
        }
    }

    /// Two-column `index<TAB>label` text for one side.
    pub fn label_map(&self, side: Side) -> String {
        let mut out = String::new();
        for i in 0..self.side_count(side) as u32 {
            let v = VertexRef { side, index: i };
            out.push_str(&format!("{}\t{}\n", i, self.label(v)));
        }
        out
    }

    /// All edges as `(left, right)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj_left
            .iter()
            .enumerate()
            .flat_map(|(v, list)| list.iter().map(move |&u| (v as u32, u)))
    }

    /// Number of edges between `left` and `right`. Both slices must be sorted.
    pub fn induced_edge_count(&self, left: &[u32], right: &[u32]) -> u64 {
        left.iter()
            .map(|&v| sorted_intersection_count(self.neighbors_left(v), right) as u64)
            .sum()
    }

    /// Checks the structural invariants: symmetric, strictly sorted adjacency
    /// and a consistent edge counter.
    pub fn validate(&self) -> Result<()> {
        let mut total_left = 0u64;
        for (v, list) in self.adj_left.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Contract(format!("left {v}: adjacency not strictly sorted")));
            }
            for &u in list {
                if self.adj_right[u as usize].binary_search(&(v as u32)).is_err() {
                    return Err(Error::Contract(format!("edge ({v}, {u}) missing on the right")));
                }
            }
            total_left += list.len() as u64;
        }
        let mut total_right = 0u64;
        for (u, list) in self.adj_right.iter().enumerate() {
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Contract(format!("right {u}: adjacency not strictly sorted")));
            }
            for &v in list {
                if self.adj_left[v as usize].binary_search(&(u as u32)).is_err() {
                    return Err(Error::Contract(format!("edge ({v}, {u}) missing on the left")));
                }
            }
            total_right += list.len() as u64;
        }
        if total_left != self.edge_count || total_right != self.edge_count {
            return Err(Error::Contract("edge counter out of sync".into()));
        }
        Ok(())
    }
}

/// Vertex sets of an induced subgraph of some parent graph. Both lists are
/// sorted parent indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

impl InducedSubgraph {
    pub fn new(mut left: Vec<u32>, mut right: Vec<u32>) -> Self {
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();
        InducedSubgraph { left, right }
    }

    pub fn whole(g: &BipartiteGraph) -> Self {
        InducedSubgraph {
            left: (0..g.left_count() as u32).collect(),
            right: (0..g.right_count() as u32).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    pub fn edge_count(&self, parent: &BipartiteGraph) -> u64 {
        parent.induced_edge_count(&self.left, &self.right)
    }

    /// Builds the subgraph as a standalone graph. Local vertex `i` on a side
    /// corresponds to parent vertex `self.left[i]` (resp. `self.right[i]`).
    pub fn materialize(&self, parent: &BipartiteGraph) -> BipartiteGraph {
        let mut right_local = vec![u32::MAX; parent.right_count()];
        for (i, &u) in self.right.iter().enumerate() {
            right_local[u as usize] = i as u32;
        }
        let edges = self.left.iter().enumerate().flat_map(|(i, &v)| {
            let right_local = &right_local;
            parent
                .neighbors_left(v)
                .iter()
                .filter_map(move |&u| match right_local[u as usize] {
                    u32::MAX => None,
                    j => Some((i as u32, j)),
                })
        });
        BipartiteGraph::from_edges(self.left.len(), self.right.len(), edges)
            .expect("local indices are in range")
    }
}

/// Size of the intersection of two strictly sorted slices.
pub(crate) fn sorted_intersection_count(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}
