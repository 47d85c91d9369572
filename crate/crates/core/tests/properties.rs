#![allow(clippy::needless_range_loop)]

mod common;

use maxbp::biplex::{is_connected, is_k_biplex, is_maximal, should_prune, Branch, PruneReason, Status};
use maxbp::graph::{ab_core, generate_er, two_hop_left};
use maxbp::oracle::enumerate_all_mbps;
use maxbp::{BipartiteGraph, ResultPool, SearchParams, Side, VertexRef};
use proptest::prelude::*;

fn graph_from_mask(l: usize, r: usize, mask: u64) -> BipartiteGraph {
    let edges = (0..l * r).filter(|i| mask >> i & 1 == 1).map(|i| ((i / r) as u32, (i % r) as u32));
    BipartiteGraph::from_edges(l, r, edges).unwrap()
}

fn small_graph() -> impl Strategy<Value = BipartiteGraph> {
    (2usize..7, 2usize..7, any::<u64>()).prop_map(|(l, r, m)| graph_from_mask(l, r, m))
}

fn bits(mask: u32, n: usize) -> Vec<u32> {
    (0..n as u32).filter(|i| mask >> i & 1 == 1).collect()
}

/// A k-biplex S grown greedily from a random vertex order.
fn greedy_biplex(g: &BipartiteGraph, k: usize, order: &[usize]) -> (Vec<u32>, Vec<u32>) {
    let (mut x, mut y) = (Vec::new(), Vec::new());
    let n = g.vertex_count();
    for &o in order {
        let i = o % n;
        let v = if i < g.left_count() { VertexRef::left(i as u32) } else { VertexRef::right((i - g.left_count()) as u32) };
        let (mut tx, mut ty) = (x.clone(), y.clone());
        match v.side {
            Side::Left if !x.contains(&v.index) => tx.push(v.index),
            Side::Right if !y.contains(&v.index) => ty.push(v.index),
            _ => continue,
        }
        if is_k_biplex(g, &tx, &ty, k) {
            (x, y) = (tx, ty);
        }
    }
    (x, y)
}

fn refs(side: Side, ids: &[u32]) -> Vec<VertexRef> {
    ids.iter().map(|&index| VertexRef { side, index }).collect()
}

/// Seeds S = (x, y), puts every other vertex in C and refines.
fn seeded<'g>(g: &'g BipartiteGraph, k: usize, x: &[u32], y: &[u32]) -> Branch<'g> {
    let mut s = refs(Side::Left, x);
    s.extend(refs(Side::Right, y));
    let c: Vec<VertexRef> = (0..g.left_count() as u32)
        .filter(|v| !x.contains(v))
        .map(VertexRef::left)
        .chain((0..g.right_count() as u32).filter(|u| !y.contains(u)).map(VertexRef::right))
        .collect();
    Branch::seeded(g, k, &s, &c, &[]).unwrap()
}

/// Every k-biplex H with S ⊆ H ⊆ S ∪ C of the branch.
fn biplexes_in_branch(g: &BipartiteGraph, b: &Branch<'_>) -> Vec<(Vec<u32>, Vec<u32>)> {
    let sl = b.side_members(Status::S, Side::Left);
    let sr = b.side_members(Status::S, Side::Right);
    let cl = b.side_members(Status::C, Side::Left);
    let cr = b.side_members(Status::C, Side::Right);
    let mut out = Vec::new();
    for ml in 0u32..1 << cl.len() {
        for mr in 0u32..1 << cr.len() {
            let mut x = sl.clone();
            x.extend(bits(ml, cl.len()).iter().map(|&i| cl[i as usize]));
            let mut y = sr.clone();
            y.extend(bits(mr, cr.len()).iter().map(|&i| cr[i as usize]));
            if is_k_biplex(g, &x, &y, b.k()) {
                out.push((x, y));
            }
        }
    }
    out
}

proptest! {
    #[test]
    fn heredity(g in small_graph(), k in 0usize..3, xm in any::<u32>(), ym in any::<u32>(), drop in any::<usize>()) {
        let x = bits(xm, g.left_count());
        let y = bits(ym, g.right_count());
        prop_assume!(is_k_biplex(&g, &x, &y, k));
        let n = x.len() + y.len();
        prop_assume!(n > 0);
        let i = drop % n;
        let (mut x2, mut y2) = (x.clone(), y.clone());
        if i < x.len() { x2.remove(i); } else { y2.remove(i - x.len()); }
        prop_assert!(is_k_biplex(&g, &x2, &y2, k));
    }

    #[test]
    fn oracle_results_are_maximal_and_unnested(g in small_graph(), k in 1usize..3) {
        let p = SearchParams { k, topk: 3, theta_l: 1, theta_r: 1, ub_l: None, ub_r: None };
        let all = enumerate_all_mbps(&g, &p).unwrap().all_mbps;
        for h in &all {
            prop_assert!(is_maximal(&g, &h.left, &h.right, k).unwrap());
            for h2 in &all {
                let nested = h != h2
                    && h.left.iter().all(|v| h2.left.contains(v))
                    && h.right.iter().all(|u| h2.right.contains(u));
                prop_assert!(!nested);
            }
        }
    }

    #[test]
    fn large_sides_are_connected(g in small_graph(), k in 1usize..3) {
        let t = 2 * k + 1;
        let p = SearchParams { k, topk: 1, theta_l: t, theta_r: t, ub_l: None, ub_r: None };
        for h in enumerate_all_mbps(&g, &p).unwrap().all_mbps {
            prop_assert!(is_connected(&g, &h.left, &h.right).unwrap());
        }
    }

    #[test]
    fn random_moves_keep_counters_and_undo_restores(
        g in small_graph(),
        k in 1usize..3,
        moves in prop::collection::vec((any::<bool>(), any::<usize>(), any::<bool>()), 0..12),
    ) {
        let mut b = Branch::root(&g, k);
        let before = (b.sc_sets(), b.sc_edges(), b.c_size());
        let m = b.mark();
        for (include, pick, refine) in moves {
            let c: Vec<VertexRef> = [Side::Left, Side::Right]
                .into_iter()
                .flat_map(|s| refs(s, &b.side_members(Status::C, s)))
                .collect();
            if c.is_empty() {
                break;
            }
            let v = c[pick % c.len()];
            if include { b.include_vertex(v) } else { b.exclude_vertex(v) }
            if refine {
                b.refine_full();
            }
            b.check_consistency().unwrap();
        }
        b.undo(m);
        b.check_consistency().unwrap();
        prop_assert_eq!((b.sc_sets(), b.sc_edges(), b.c_size()), before);
    }

    #[test]
    fn refined_candidates_are_exactly_the_addable_vertices(
        g in small_graph(),
        k in 1usize..3,
        order in prop::collection::vec(any::<usize>(), 0..6),
    ) {
        let (x, y) = greedy_biplex(&g, k, &order);
        let b = seeded(&g, k, &x, &y);
        for v in 0..g.left_count() as u32 {
            if x.contains(&v) { continue; }
            let mut x2 = x.clone();
            x2.push(v);
            let want = is_k_biplex(&g, &x2, &y, k);
            prop_assert_eq!(b.status(VertexRef::left(v)) == Status::C, want, "left {}", v);
        }
        for u in 0..g.right_count() as u32 {
            if y.contains(&u) { continue; }
            let mut y2 = y.clone();
            y2.push(u);
            let want = is_k_biplex(&g, &x, &y2, k);
            prop_assert_eq!(b.status(VertexRef::right(u)) == Status::C, want, "right {}", u);
        }
    }

    #[test]
    fn tau_bounds_every_biplex_of_the_branch(
        g in small_graph(),
        k in 1usize..3,
        order in prop::collection::vec(any::<usize>(), 1..5),
    ) {
        let (x, y) = greedy_biplex(&g, k, &order);
        let b = seeded(&g, k, &x, &y);
        let (tl, tr) = b.tau_bounds();
        for (hx, hy) in biplexes_in_branch(&g, &b) {
            prop_assert!(hx.len() <= tl && hy.len() <= tr);
        }
    }

    #[test]
    fn pruned_branches_hold_no_qualifying_maximal_biplex(
        g in small_graph(),
        k in 1usize..3,
        order in prop::collection::vec(any::<usize>(), 1..5),
        excluded in prop::collection::vec(any::<usize>(), 0..3),
    ) {
        let (x, y) = greedy_biplex(&g, k, &order);
        let mut b = seeded(&g, k, &x, &y);
        for pick in excluded {
            let c: Vec<VertexRef> = [Side::Left, Side::Right]
                .into_iter()
                .flat_map(|s| refs(s, &b.side_members(Status::C, s)))
                .collect();
            if c.is_empty() { break; }
            b.exclude_vertex(c[pick % c.len()]);
        }
        let t = 2 * k + 1;
        let p = SearchParams::new(k, 1, t, t).unwrap();
        let pool = ResultPool::new(1);
        let reason = should_prune(&mut b, &p, &pool);
        prop_assume!(reason.is_some());
        for (hx, hy) in biplexes_in_branch(&g, &b) {
            let qualifies = hx.len() >= t && hy.len() >= t;
            match reason.unwrap() {
                PruneReason::NonMaximal => prop_assert!(!is_maximal(&g, &hx, &hy, k).unwrap()),
                _ => prop_assert!(!(qualifies && is_maximal(&g, &hx, &hy, k).unwrap())),
            }
        }
    }

    #[test]
    fn ab_core_matches_naive_peeling(g in small_graph(), alpha in 0usize..4, beta in 0usize..4) {
        let (mut xl, mut xr) = (vec![true; g.left_count()], vec![true; g.right_count()]);
        loop {
            let mut changed = false;
            for v in 0..g.left_count() {
                let d = g.neighbors_left(v as u32).iter().filter(|&&u| xr[u as usize]).count();
                if xl[v] && d < alpha { xl[v] = false; changed = true; }
            }
            for u in 0..g.right_count() {
                let d = g.neighbors_right(u as u32).iter().filter(|&&v| xl[v as usize]).count();
                if xr[u] && d < beta { xr[u] = false; changed = true; }
            }
            if !changed { break; }
        }
        let core = ab_core(&g, alpha, beta);
        let want_l: Vec<u32> = (0..g.left_count() as u32).filter(|&v| xl[v as usize]).collect();
        let want_r: Vec<u32> = (0..g.right_count() as u32).filter(|&u| xr[u as usize]).collect();
        prop_assert_eq!(&core.left, &want_l);
        prop_assert_eq!(&core.right, &want_r);

        // idempotent on its own result, and monotone in both parameters
        let h = core.materialize(&g);
        let again = ab_core(&h, alpha, beta);
        prop_assert_eq!((again.left.len(), again.right.len()), (h.left_count(), h.right_count()));
        let tighter = ab_core(&g, alpha + 1, beta);
        prop_assert!(tighter.left.iter().all(|v| core.left.contains(v)));
        prop_assert!(tighter.right.iter().all(|u| core.right.contains(u)));
    }

    #[test]
    fn two_hop_matches_brute_force(g in small_graph(), v in 0u32..6) {
        prop_assume!((v as usize) < g.left_count());
        let want: Vec<u32> = (0..g.left_count() as u32)
            .filter(|&w| (0..g.right_count() as u32).any(|u| g.has_edge(v, u) && g.has_edge(w, u)))
            .collect();
        prop_assert_eq!(two_hop_left(&g, v), want);
    }

    #[test]
    fn generator_is_deterministic_and_exact(l in 1usize..30, r in 1usize..30, frac in 0.0f64..1.0, seed in any::<u64>()) {
        let m = ((l * r) as f64 * frac) as usize;
        let a = generate_er(l, r, m, seed).unwrap();
        let b = generate_er(l, r, m, seed).unwrap();
        prop_assert_eq!(a.edge_count(), m as u64);
        prop_assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
    }
}

#[test]
fn generator_rejects_impossible_edge_counts() {
    assert!(generate_er(3, 3, 10, 0).is_err());
    assert_eq!(generate_er(3, 3, 9, 0).unwrap().edge_count(), 9);
}

#[test]
fn raising_k_never_lowers_the_best_edge_count() {
    for i in 0..40 {
        let g = common::instance(i);
        let best = |k| {
            let p = SearchParams { k, topk: 1, theta_l: 3, theta_r: 3, ub_l: None, ub_r: None };
            enumerate_all_mbps(&g, &p).unwrap().topk.first().map(|h| h.edges)
        };
        if let Some(e1) = best(1) {
            assert!(best(2).unwrap_or(0) >= e1, "instance {i}");
        }
    }
}
