use super::{Exec, dispatch};
use crate::biplex::{Branch, ResultPool, SearchParams};
use crate::graph::{ab_core, BipartiteGraph};
use crate::search::{run_kernel, Kernel, Limits, SearchStats, Target};

/// Side-size window of one PB iteration. `lb_r` depends on the pool at
/// iteration entry and is computed by [`PbWindow::lb_r`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PbWindow {
    /// 1-based.
    pub iteration: usize,
    pub lb_l: usize,
    pub ub_l: usize,
    pub ub_r: usize,
}

impl PbWindow {
    /// max(⌈kth / ub_l⌉, θ_R).
    pub fn lb_r(&self, kth: u64, theta_r: usize) -> usize {
        (kth.div_ceil(self.ub_l as u64) as usize).max(theta_r)
    }
}

/// The PB windows: LB_L^0 = δ_max^R + k, then lb_l halves (ceiling, floored
/// at θ_L) and ub_l takes the previous lb_l.
#[derive(Clone, Debug)]
pub struct PbSchedule {
    prev_lb: usize,
    theta_l: usize,
    ub_r: usize,
    iteration: usize,
    pub delta_max_l: usize,
    pub delta_max_r: usize,
}

pub fn pb_schedule(g: &BipartiteGraph, p: &SearchParams) -> PbSchedule {
    let delta_max_l = g.max_left_degree();
    let delta_max_r = g.max_right_degree();
    let mut s = PbSchedule {
        prev_lb: delta_max_r + p.k,
        theta_l: p.theta_l,
        ub_r: delta_max_l + p.k,
        iteration: 0,
        delta_max_l,
        delta_max_r,
    };
    // no k-biplex can meet the thresholds: the schedule is empty
    if s.ub_r < p.theta_r || s.prev_lb < p.theta_l {
        s.prev_lb = 0;
    }
    s
}

impl Iterator for PbSchedule {
    type Item = PbWindow;

    fn next(&mut self) -> Option<PbWindow> {
        let ub_l = self.prev_lb;
        // ub_l == θ_L is still needed on the first iteration, where no earlier
        // window has covered left sides of exactly θ_L
        if ub_l < self.theta_l || (ub_l == self.theta_l && self.iteration > 0) {
            return None;
        }
        self.iteration += 1;
        let lb_l = ub_l.div_ceil(2).max(self.theta_l);
        self.prev_lb = lb_l;
        Some(PbWindow { iteration: self.iteration, lb_l, ub_l, ub_r: self.ub_r })
    }
}

/// One PB iteration's reduced graph: the (lb_r − k, lb_l − k)-core with its
/// parent ids, or `None` when the core is empty.
pub(super) struct CoreStep {
    pub graph: BipartiteGraph,
    pub left_ids: Vec<u32>,
    pub right_ids: Vec<u32>,
    pub params: SearchParams,
    pub lb_r: usize,
}

pub(super) fn core_step(
    g: &BipartiteGraph,
    p: &SearchParams,
    w: &PbWindow,
    pool: &ResultPool,
) -> Option<CoreStep> {
    let lb_r = w.lb_r(pool.kth_edge_count(), p.theta_r);
    let core = ab_core(g, lb_r.saturating_sub(p.k), w.lb_l.saturating_sub(p.k));
    if core.left.len() < w.lb_l || core.right.len() < lb_r {
        return None;
    }
    Some(CoreStep {
        graph: core.materialize(g),
        left_ids: core.left,
        right_ids: core.right,
        params: window_params(p, w, lb_r),
        lb_r,
    })
}

/// Parameters for the kernel runs of one window: the window's lower bounds
/// replace θ and its upper bounds are set. Left sides below `lb_l` belong to
/// later windows, and right sides below `lb_r` cannot beat the pool.
pub(super) fn window_params(p: &SearchParams, w: &PbWindow, lb_r: usize) -> SearchParams {
    SearchParams {
        theta_l: w.lb_l.max(p.theta_l),
        theta_r: lb_r.max(p.theta_r),
        ..p.with_upper_bounds(w.ub_l, w.ub_r)
    }
}

/// Runs `kernel` once per PB window on the window's core. Windows are
/// sequential because each reads the pool left by the previous one.
pub fn pb_run(g: &BipartiteGraph, p: &SearchParams, pool: &ResultPool, kernel: Kernel) -> SearchStats {
    pb_run_with(g, p, pool, kernel, Exec::serial(&Limits::none()))
}

pub(crate) fn pb_run_with(
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
        let target = Target { graph: g, left_ids: Some(&step.left_ids), right_ids: Some(&step.right_ids) };
        let st = dispatch(1, 1, exec.limits, || (), |_, _| {
            let mut b = Branch::root(&step.graph, p.k);
            run_kernel(kernel, &mut b, target, &step.params, pool, exec.limits)
        });
        stats.absorb(&st);
    }
    stats
}
