use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::BipartiteGraph;
use crate::error::{Error, Result};

/// Erdős–Rényi style bipartite graph with exactly `edge_count` distinct edges
/// drawn uniformly without replacement from all `left_count * right_count`
/// pairs. The same seed always yields the same edge set.
pub fn generate_er(
    left_count: usize,
    right_count: usize,
    edge_count: usize,
    seed: u64,
) -> Result<BipartiteGraph> {
    let pairs = left_count
        .checked_mul(right_count)
        .ok_or_else(|| Error::InvalidArgument("left_count * right_count overflows".into()))?;
    if edge_count > pairs {
        return Err(Error::InvalidArgument(format!(
            "{edge_count} edges requested but only {pairs} vertex pairs exist"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = index::sample(&mut rng, pairs, edge_count);
    let edges = picks
        .into_iter()
        .map(|p| ((p / right_count) as u32, (p % right_count) as u32));
    BipartiteGraph::from_edges(left_count, right_count, edges)
}

/// Number of edges giving density `2|E| / (|L| + |R|)` of `density`.
pub fn edges_for_density(left_count: usize, right_count: usize, density: f64) -> usize {
    (density * (left_count + right_count) as f64 / 2.0).round() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_pairs_gives_complete_graph() {
        for seed in 0..5 {
            let g = generate_er(2, 2, 4, seed).unwrap();
            assert_eq!(g.edge_count(), 4);
            assert!(g.edges().eq([(0, 0), (0, 1), (1, 0), (1, 1)]));
        }
    }

    #[test]
    fn deterministic_for_a_seed() {
        let a = generate_er(5, 5, 10, 42).unwrap();
        let b = generate_er(5, 5, 10, 42).unwrap();
        assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
        assert_eq!(a.edge_count(), 10);
        let c = generate_er(5, 5, 10, 43).unwrap();
        assert_ne!(a.edges().collect::<Vec<_>>(), c.edges().collect::<Vec<_>>());
    }

    #[test]
    fn too_many_edges() {
        assert!(generate_er(2, 3, 7, 0).is_err());
    }

    #[test]
    fn density_twenty_at_large_scale() {
        let m = edges_for_density(100_000, 100_000, 20.0);
        assert_eq!(m, 2_000_000);
        let g = generate_er(100_000, 100_000, m, 7).unwrap();
        assert_eq!(g.edge_count(), 2_000_000);
        assert!((g.density() - 20.0).abs() < 1e-12);
    }
}
