use anyhow::ensure;
use maxbp::biplex::{is_connected, is_k_biplex, is_maximal};
use maxbp::oracle::OracleResult;
use maxbp::{BipartiteGraph, FoundBiplex, SearchParams, Solution, SolveOptions};
use serde_json::{json, Value};

/// Re-verifies every result before it is reported. Connectivity holds
/// whenever both sides reach 2k+1, which validated parameters guarantee.
pub fn self_check(g: &BipartiteGraph, p: &SearchParams, results: &[FoundBiplex]) -> anyhow::Result<()> {
    let min = 2 * p.k + 1;
    for h in results {
        let (l, r) = (&h.left, &h.right);
        ensure!(is_k_biplex(g, l, r, p.k), "self-check: result is not a {}-biplex: {h:?}", p.k);
        ensure!(is_maximal(g, l, r, p.k)?, "self-check: result is not maximal: {h:?}");
        ensure!(l.len() >= p.theta_l && r.len() >= p.theta_r, "self-check: result below thresholds: {h:?}");
        ensure!(g.induced_edge_count(l, r) == h.edges, "self-check: wrong edge count: {h:?}");
        if l.len() >= min && r.len() >= min {
            ensure!(is_connected(g, l, r)?, "self-check: result is disconnected: {h:?}");
        }
    }
    Ok(())
}

fn results_json(g: &BipartiteGraph, results: &[FoundBiplex]) -> Vec<Value> {
    let mut sorted = results.to_vec();
    sorted.sort_by(FoundBiplex::canonical_cmp);
    sorted
        .iter()
        .map(|h| {
            let mut v = h.to_labeled_json(g);
            v["vertices"] = json!(h.vertex_count());
            v
        })
        .collect()
}

fn params_json(p: &SearchParams) -> Value {
    json!({ "k": p.k, "topk": p.topk, "theta_l": p.theta_l, "theta_r": p.theta_r })
}

fn graph_json(g: &BipartiteGraph) -> Value {
    json!({ "left": g.left_count(), "right": g.right_count(), "edges": g.edge_count() })
}

/// The `search` report. Elapsed time is left out unless `timing` is set, so
/// that single-worker output is byte-stable.
pub fn search_report(
    g: &BipartiteGraph,
    p: &SearchParams,
    opts: &SolveOptions,
    sol: &Solution,
    timing: bool,
) -> anyhow::Result<Value> {
    self_check(g, p, &sol.results)?;
    let mut params = params_json(p);
    params["kernel"] = json!(opts.kernel);
    params["framework"] = json!(opts.framework);
    params["workers"] = json!(opts.workers);
    params["time_limit"] = json!(opts.time_limit.map(|d| d.as_secs_f64()));
    let mut stats = serde_json::to_value(&sol.stats)?;
    stats["duplicates"] = json!(sol.duplicates);
    if !timing {
        stats.as_object_mut().expect("stats serialize to an object").remove("ms");
    }
    Ok(json!({
        "command": "search",
        "status": if sol.timed_out { "timeout" } else { "ok" },
        "params": params,
        "graph": graph_json(g),
        "results": results_json(g, &sol.results),
        "stats": stats,
    }))
}

/// The `oracle` report: the top-K entries in the layout of `search`, plus the
/// number of maximal k-biplexes meeting the thresholds.
pub fn oracle_report(g: &BipartiteGraph, p: &SearchParams, res: &OracleResult) -> anyhow::Result<Value> {
    self_check(g, p, &res.topk)?;
    Ok(json!({
        "command": "oracle",
        "status": "ok",
        "params": params_json(p),
        "graph": graph_json(g),
        "results": results_json(g, &res.topk),
        "all_count": res.all_mbps.len(),
    }))
}
