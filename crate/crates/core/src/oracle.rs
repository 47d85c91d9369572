//! Exhaustive reference enumeration of maximal k-biplexes for small graphs.
//!
//! Maximality is tested by single-vertex extension, which is complete because
//! every subset of a k-biplex is again a k-biplex.

use serde::{Deserialize, Serialize};

use crate::biplex::{FoundBiplex, SearchParams};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;

/// Largest |L| + |R| the oracle accepts.
pub const ORACLE_LIMIT: usize = 24;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    /// Every maximal k-biplex meeting both thresholds, in canonical order.
    pub all_mbps: Vec<FoundBiplex>,
    /// The first K entries of `all_mbps`.
    pub topk: Vec<FoundBiplex>,
}

fn bits(mask: u32) -> impl Iterator<Item = u32> {
    (0..32).filter(move |i| mask >> i & 1 == 1)
}

/// Enumerates all maximal k-biplexes of `g` meeting `p.theta_l`, `p.theta_r`.
/// Only `k`, `topk` and the thresholds of `p` are read, and they are not
/// validated, so relaxed thresholds are allowed.
pub fn enumerate_all_mbps(g: &BipartiteGraph, p: &SearchParams) -> Result<OracleResult> {
    if g.vertex_count() > ORACLE_LIMIT {
        return Err(Error::TooLarge { vertices: g.vertex_count(), limit: ORACLE_LIMIT });
    }
    let k = p.k as u32;
    let nl = g.left_count();
    let nr = g.right_count();
    let full_l: u32 = if nl == 0 { 0 } else { u32::MAX >> (32 - nl) };
    let full_r: u32 = if nr == 0 { 0 } else { u32::MAX >> (32 - nr) };
    let adj_l: Vec<u32> =
        (0..nl as u32).map(|v| g.neighbors_left(v).iter().fold(0, |m, &u| m | 1 << u)).collect();
    let adj_r: Vec<u32> =
        (0..nr as u32).map(|u| g.neighbors_right(u).iter().fold(0, |m, &v| m | 1 << v)).collect();
    let miss_l = |v: usize, y: u32| (y & !adj_l[v]).count_ones();
    let miss_r = |u: usize, x: u32| (x & !adj_r[u]).count_ones();

    let mut all = Vec::new();
    for x in 0..=full_l {
        if (x.count_ones() as usize) < p.theta_l {
            continue;
        }
        let cand_r = (0..nr).filter(|&u| miss_r(u, x) <= k).fold(0u32, |m, u| m | 1 << u);
        if (cand_r.count_ones() as usize) < p.theta_r {
            continue;
        }
        // all submasks y of cand_r, including cand_r itself and 0
        let mut y = cand_r;
        loop {
            if y.count_ones() as usize >= p.theta_r
                && bits(x).all(|v| miss_l(v as usize, y) <= k)
                && is_maximal_mask(x, y, full_l, full_r, k, &miss_l, &miss_r, &adj_l, &adj_r)
            {
                let left: Vec<u32> = bits(x).collect();
                let right: Vec<u32> = bits(y).collect();
                all.push(FoundBiplex::new(g, left, right));
            }
            if y == 0 {
                break;
            }
            y = (y - 1) & cand_r;
        }
    }
    all.sort_by(FoundBiplex::canonical_cmp);
    let topk = all.iter().take(p.topk).cloned().collect();
    Ok(OracleResult { all_mbps: all, topk })
}

#[allow(clippy::too_many_arguments)]
fn is_maximal_mask(
    x: u32,
    y: u32,
    full_l: u32,
    full_r: u32,
    k: u32,
    miss_l: &impl Fn(usize, u32) -> u32,
    miss_r: &impl Fn(usize, u32) -> u32,
    adj_l: &[u32],
    adj_r: &[u32],
) -> bool {
    let left_ext = bits(full_l & !x).any(|w| {
        miss_l(w as usize, y) <= k
            && bits(y & !adj_l[w as usize]).all(|u| miss_r(u as usize, x) < k)
    });
    if left_ext {
        return false;
    }
    !bits(full_r & !y).any(|w| {
        miss_r(w as usize, x) <= k
            && bits(x & !adj_r[w as usize]).all(|v| miss_l(v as usize, y) < k)
    })
}
