use super::Ctx;
use crate::biplex::{Branch, Status};

/// BK branching: child i includes v_i and excludes v_1..v_{i-1}, with C
/// ordered by ascending δ(v, S ∪ C) at this branch.
pub(super) fn recurse(ctx: &mut Ctx<'_>, b: &mut Branch<'_>) {
    if ctx.enter() {
        return;
    }
    if b.is_terminal() {
        ctx.offer(b);
        return;
    }
    if ctx.prune(b) {
        return;
    }
    ctx.stats.branchings += 1;
    let mut order: Vec<u32> =
        [0, 1].into_iter().flat_map(|side| b.members(Status::C, side).iter().copied()).collect();
    order.sort_unstable_by_key(|&x| (b.deg_sc(x), x));
    ctx.stats.max_children = ctx.stats.max_children.max(order.len());
    let top = b.mark();
    for &x in &order {
        if b.status_of(x) != Status::C {
            continue;
        }
        if !ctx.include_is_hopeless(b, x) {
            let m = b.mark();
            b.include(x);
            b.refine_after_include(x);
            b.refine_d();
            recurse(ctx, b);
            b.undo(m);
        }
        if ctx.limits.is_cancelled() {
            break;
        }
        b.exclude(x);
        b.refine_d();
    }
    b.undo(top);
}
