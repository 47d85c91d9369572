#![allow(dead_code)]

use maxbp::graph::VertexRef;
use maxbp::BipartiteGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Each of the `l * r` pairs is an edge with probability `p`.
pub fn bernoulli_graph(l: usize, r: usize, p: f64, seed: u64) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 0..l as u32 {
        for u in 0..r as u32 {
            if rng.gen_bool(p) {
                edges.push((v, u));
            }
        }
    }
    BipartiteGraph::from_edges(l, r, edges).unwrap()
}

/// The criterion-1 instance family: sides in [4, 8], p in {0.3, 0.5, 0.7}.
pub fn instance(i: u64) -> BipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + i);
    let l = rng.gen_range(4..=8);
    let r = rng.gen_range(4..=8);
    let p = [0.3, 0.5, 0.7][(i % 3) as usize];
    bernoulli_graph(l, r, p, rng.gen())
}

pub fn l(i: u32) -> VertexRef {
    VertexRef::left(i)
}

pub fn r(i: u32) -> VertexRef {
    VertexRef::right(i)
}

/// Left u0..u6, right v0..v4, built so that the disconnections used in the
/// worked pivot example hold at k = 2.
pub fn pivot_example() -> BipartiteGraph {
    let adj: [&[u32]; 7] = [
        &[0, 1, 2, 3, 4],
        &[1, 2, 3, 4],
        &[1, 2, 3, 4],
        &[0, 4],
        &[1, 2, 3, 4],
        &[0, 1, 2, 3, 4],
        &[0, 1, 2, 3, 4],
    ];
    let edges = adj.iter().enumerate().flat_map(|(v, list)| list.iter().map(move |&u| (v as u32, u)));
    BipartiteGraph::from_edges(7, 5, edges).unwrap()
}
