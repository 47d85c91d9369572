use super::ie::ie_over;
use super::pb::{core_step, pb_schedule};
use super::Exec;
use crate::biplex::{ResultPool, SearchParams};
use crate::graph::BipartiteGraph;
use crate::search::{Kernel, Limits, SearchStats};

/// PB outer loop with IE over each window's core. Within a window, vertex
/// pruning uses the window's lower bounds (lb_l, lb_r) instead of θ.
pub fn pbie_run(g: &BipartiteGraph, p: &SearchParams, pool: &ResultPool, kernel: Kernel) -> SearchStats {
    pbie_run_with(g, p, pool, kernel, Exec::serial(&Limits::none()))
}

pub(crate) fn pbie_run_with(
    g: &BipartiteGraph,
    p: &SearchParams,
    pool: &ResultPool,
    kernel: Kernel,
    exec: Exec<'_>,
) -> SearchStats {
    let mut stats = SearchStats::default();
    for w in pb_schedule(g, p) {
        if exec.limits.is_cancelled() {
            break;
        }
        let Some(step) = core_step(g, p, &w, pool) else { continue };
        let ids = (step.left_ids.as_slice(), step.right_ids.as_slice());
        let st = ie_over(&step.graph, Some(ids), g, &step.params, (w.lb_l, step.lb_r), pool, kernel, exec);
        stats.absorb(&st);
    }
    stats
}
