use std::collections::VecDeque;

use super::{BipartiteGraph, InducedSubgraph};

/// The (alpha, beta)-core: the largest induced subgraph in which every left
/// vertex has degree at least `alpha` and every right vertex degree at least
/// `beta`. Computed by queue-based peeling; the fixpoint does not depend on
/// the peeling order.
pub fn ab_core(g: &BipartiteGraph, alpha: usize, beta: usize) -> InducedSubgraph {
    let nl = g.left_count();
    let mut deg: Vec<usize> = (0..nl as u32)
        .map(|v| g.neighbors_left(v).len())
        .chain((0..g.right_count() as u32).map(|u| g.neighbors_right(u).len()))
        .collect();
    let mut alive = vec![true; deg.len()];
    let mut queue = VecDeque::new();
    for (x, &d) in deg.iter().enumerate() {
        let need = if x < nl { alpha } else { beta };
        if d < need {
            alive[x] = false;
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        let (nbrs, offset, need) = if x < nl {
            (g.neighbors_left(x as u32), nl, beta)
        } else {
            (g.neighbors_right((x - nl) as u32), 0, alpha)
        };
        for &y in nbrs {
            let y = y as usize + offset;
            if alive[y] {
                deg[y] -= 1;
                if deg[y] < need {
                    alive[y] = false;
                    queue.push_back(y);
                }
            }
        }
    }
    let left = (0..nl).filter(|&v| alive[v]).map(|v| v as u32).collect();
    let right = (0..g.right_count())
        .filter(|&u| alive[nl + u])
        .map(|u| u as u32)
        .collect();
    InducedSubgraph { left, right }
}

/// Left vertices sharing at least one right neighbour with `v`, sorted.
/// Contains `v` itself whenever `v` has a neighbour.
pub fn two_hop_left(g: &BipartiteGraph, v: u32) -> Vec<u32> {
    let mut out: Vec<u32> = g
        .neighbors_left(v)
        .iter()
        .flat_map(|&u| g.neighbors_right(u).iter().copied())
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: u32) -> BipartiteGraph {
        BipartiteGraph::from_edges(1, leaves as usize, (0..leaves).map(|u| (0, u))).unwrap()
    }

    #[test]
    fn star_core_keeps_everything_when_bounds_hold() {
        let g = star(5);
        assert_eq!(ab_core(&g, 2, 1), InducedSubgraph::whole(&g));
    }

    #[test]
    fn star_core_cascades_to_empty() {
        let g = star(5);
        assert!(ab_core(&g, 2, 2).is_empty());
    }

    #[test]
    fn isolated_vertices_never_survive_a_positive_core() {
        let g = BipartiteGraph::from_edges(3, 3, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let core = ab_core(&g, 1, 1);
        assert_eq!(core.left, vec![0, 1]);
        assert_eq!(core.right, vec![0, 1]);
        assert_eq!(ab_core(&g, 0, 0), InducedSubgraph::whole(&g));
    }

    #[test]
    fn two_hop_examples() {
        let k22 = BipartiteGraph::from_edges(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(two_hop_left(&k22, 0), vec![0, 1]);
        let disjoint = BipartiteGraph::from_edges(2, 2, [(0, 0), (1, 1)]).unwrap();
        assert_eq!(two_hop_left(&disjoint, 0), vec![0]);
        let isolated = BipartiteGraph::from_edges(2, 1, [(1, 0)]).unwrap();
        assert!(two_hop_left(&isolated, 0).is_empty());
    }
}
