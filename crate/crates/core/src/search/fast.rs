use super::{pivot_raw, prefix_raw, Ctx};
use crate::biplex::{Branch, Status};

/// Sym-BK branching over the pivot ordering: child i includes the first
/// i-1 prefix vertices and excludes the i-th. Children past the prefix hold
/// a pivot with more than k misses in S and are never created.
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
    let k = b.k();
    let (pivot, in_s, a, bb) = pivot_raw(b).expect("non-terminal branch has a pivot");
    debug_assert!(a <= k && a < bb, "pivot quantities a={a} b={bb} k={k}");
    let mut prefix = Vec::with_capacity(k + 2);
    prefix_raw(b, pivot, in_s, a, &mut prefix);
    let limit = if in_s { a + 1 } else { a + 2 };
    debug_assert!(prefix.len() <= limit && prefix.len() <= k + 2);

    let top = b.mark();
    let mut children = 0usize;
    for (i, &x) in prefix.iter().enumerate() {
        if b.status_of(x) != Status::C {
            // x cannot join S any more: excluding it leaves the branch as is,
            // and every later child would hold it in S
            children += 1;
            recurse(ctx, b);
            break;
        }
        let m = b.mark();
        b.exclude(x);
        b.refine_d();
        children += 1;
        recurse(ctx, b);
        b.undo(m);
        if ctx.limits.is_cancelled() || i + 1 == prefix.len() {
            break;
        }
        // the next child extends this inclusion; the lookahead stands in for it
        if ctx.include_is_hopeless(b, x) {
            children += 1;
            break;
        }
        b.include(x);
        b.refine_after_include(x);
        b.refine_d();
    }
    b.undo(top);

    let st = &mut ctx.stats;
    st.branchings += 1;
    st.max_children = st.max_children.max(children);
    st.max_prefix = st.max_prefix.max(prefix.len());
    st.max_a = st.max_a.max(a);
    if children > limit || a > k || prefix.len() > k + 2 {
        st.symbk_violations += 1;
    }
}
