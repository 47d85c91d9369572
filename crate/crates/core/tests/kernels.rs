mod common;

use common::{l, pivot_example, r};
use maxbp::biplex::{Branch, Status};
use maxbp::frameworks::{ie_decompose, IeDecomposer};
use maxbp::graph::generate_er;
use maxbp::oracle::enumerate_all_mbps;
use maxbp::search::{build_ordering, select_pivot};
use maxbp::{solve, FoundBiplex, Framework, Kernel, SearchParams, SolveOptions, VertexRef};
use serde::Deserialize;

fn seeded_example<'g>(g: &'g maxbp::BipartiteGraph, s: &[VertexRef]) -> Branch<'g> {
    let c: Vec<VertexRef> = (0..7).map(l).chain((0..5).map(r)).filter(|v| !s.contains(v)).collect();
    Branch::seeded(g, 2, s, &c, &[]).unwrap()
}

#[test]
fn pivot_in_s_orders_its_non_neighbours() {
    let g = pivot_example();
    let mut b = seeded_example(&g, &[l(0), r(0)]);
    let p = select_pivot(&b).unwrap();
    assert_eq!((p.vertex, p.in_partial, p.a), (r(0), true, 2));
    assert_eq!(build_ordering(&mut b, &p), vec![l(1), l(2), l(4)]);
}

#[test]
fn pivot_in_c_leads_its_own_ordering() {
    let g = pivot_example();
    let mut b = seeded_example(&g, &[l(0), r(0), l(1), l(2)]);
    // r0 now misses k vertices of S, so its last non-neighbour l4 is gone
    assert_eq!(b.status(l(4)), Status::Out);
    let p = select_pivot(&b).unwrap();
    assert_eq!((p.vertex, p.in_partial, p.a), (l(3), false, 2));
    assert_eq!(build_ordering(&mut b, &p), vec![l(3), r(1), r(2), r(3)]);
}

#[test]
fn pivot_quantities_respect_their_bounds() {
    for i in 0..60 {
        let g = common::instance(i);
        for k in 1..3 {
            let mut b = Branch::root(&g, k);
            b.refine_full();
            let Ok(p) = select_pivot(&b) else { continue };
            assert!(p.a <= k && p.a < p.b, "instance {i}: {p:?}");
            let order = build_ordering(&mut b, &p);
            let want = if p.in_partial { p.a + 1 } else { p.a + 2 };
            assert!(order.len() <= want && order.len() <= k + 2, "instance {i}");
        }
    }
}

#[test]
fn ie_subgraphs_stay_within_the_cubic_degree_bound() {
    for seed in 0..5 {
        let g = generate_er(120, 120, 1200, seed).unwrap();
        let d = g.max_degree();
        let p = SearchParams::with_defaults(1, 1).unwrap();
        let mut seen = 0;
        for sp in ie_decompose(&g, &p) {
            assert!(sp.vertices.vertex_count() <= d * d * d, "seed {seed}");
            assert!(sp.s.len() == 1 && sp.d.iter().all(|v| v.side == maxbp::Side::Left));
            seen += 1;
        }
        assert!(seen > 0);
    }
}

#[test]
fn ie_order_is_by_ascending_degree() {
    let g = generate_er(40, 30, 300, 3).unwrap();
    let dec = IeDecomposer::new(&g, 1, 3, 3);
    let degs: Vec<usize> = dec.order().iter().map(|&v| g.neighbors_left(v).len()).collect();
    assert!(degs.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn ie_never_reports_a_set_twice() {
    // PB windows share their boundary size, so only plain IE is checked
    for seed in 0..4 {
        let g = generate_er(60, 60, 900, seed).unwrap();
        for workers in [1, 3] {
            let opts = SolveOptions { framework: Framework::Ie, workers, ..SolveOptions::default() };
            let p = SearchParams::with_defaults(1, 5).unwrap();
            let sol = solve(&g, &p, &opts).unwrap();
            assert_eq!(sol.duplicates, 0, "seed {seed}, {workers} workers");
        }
    }
}

#[derive(Deserialize)]
struct Golden {
    left_count: usize,
    right_count: usize,
    edge_count: usize,
    seed: u64,
    k: usize,
    edges: Vec<(u32, u32)>,
    theta_1: Vec<FoundBiplex>,
    theta_3: Vec<FoundBiplex>,
}

fn golden() -> Golden {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/er_6x6_k1.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn oracle_matches_the_golden_enumeration() {
    let gold = golden();
    let g = generate_er(gold.left_count, gold.right_count, gold.edge_count, gold.seed).unwrap();
    assert_eq!(g.edges().collect::<Vec<_>>(), gold.edges);
    for (t, want) in [(1, &gold.theta_1), (3, &gold.theta_3)] {
        let p = SearchParams { k: gold.k, topk: 3, theta_l: t, theta_r: t, ub_l: None, ub_r: None };
        let got = enumerate_all_mbps(&g, &p).unwrap();
        assert_eq!(&got.all_mbps, want, "theta {t}");
        assert_eq!(got.topk[..], want[..3]);
    }
}

#[test]
fn every_solver_reproduces_the_golden_top_three() {
    let gold = golden();
    let g = generate_er(gold.left_count, gold.right_count, gold.edge_count, gold.seed).unwrap();
    let p = SearchParams::new(gold.k, 3, 3, 3).unwrap();
    let want: Vec<u64> = gold.theta_3[..3].iter().map(|h| h.edges).collect();
    for kernel in Kernel::ALL {
        for framework in Framework::ALL {
            let opts = SolveOptions { kernel, framework, ..SolveOptions::default() };
            let got: Vec<u64> = solve(&g, &p, &opts).unwrap().results.iter().map(|h| h.edges).collect();
            assert_eq!(got, want, "{kernel}+{framework}");
        }
    }
}
