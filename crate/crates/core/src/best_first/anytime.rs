use crate::limits::{SearchLimits, Status};
use crate::node::NodeStatus;
use crate::space::SearchSpace;
use crate::trace::{EmissionKind, SearchOutcome, Sink};
use crate::weight::WeightSpec;

use super::Run;

/// Anytime Weighted A*.
///
/// Nodes are selected by `g + w·h` (least h on ties) and tested for the goal
/// as soon as they are generated. Each goal reached more cheaply than the
/// incumbent replaces it. A successor whose `g + c + h` is not below the
/// incumbent's cost is never inserted, and a popped node whose f is not
/// below it is dropped without expansion. Closed nodes whose g improves are
/// reopened. When Open empties, the last incumbent is optimal.
///
/// The sink sees every improvement, the 1st, 2nd, 4th, ... expansion, and a
/// final emission. If `limits.max_stored` is reached, Open entries that can
/// no longer improve the incumbent are purged before giving up.
pub fn anytime_wastar<S, K>(
    space: &S,
    w: WeightSpec,
    limits: &SearchLimits,
    sink: &mut K,
) -> SearchOutcome
where
    S: SearchSpace + ?Sized,
    K: Sink + ?Sized,
{
    let mut run = Run::new(space, w, *limits, sink);
    let start = space.start();
    if space.is_goal(start) {
        run.seed(crate::cost::Cost::INFINITY);
        run.improve(start, None);
        run.open.pop_min();
        let b = run.bounds(None);
        run.emit(EmissionKind::Improvement, b);
        return run.finish(Status::Converged, b);
    }
    run.seed(crate::cost::Cost::INFINITY);

    while let Some(n) = run.open.pop_min() {
        let upper = run.upper();
        if n.f >= upper {
            run.discard(n.state);
            continue;
        }
        if run.out_of_budget() {
            run.open.push(n.state, n.key, n.h, n.f);
            let frontier = run.open_frontier();
            let b = run.bounds(frontier);
            return run.finish(Status::Interrupted, b);
        }
        let (g, _) = run.close(n.state);
        debug_assert!(g + n.h < run.upper(), "expanding a node that cannot improve");
        run.generate(n.state);
        let succ = std::mem::take(&mut run.buf);
        let mut improved = false;
        for &(s, c) in &succ {
            let gs = g + c;
            let hs = run.h_of(s);
            if gs + hs >= run.upper() {
                continue;
            }
            if space.is_goal(s) {
                improved |= run.improve(s, Some(n.state));
                continue;
            }
            if run.g_of(s).is_some_and(|old| gs >= old) {
                continue;
            }
            run.relax(s, n.state, gs, hs);
        }
        run.buf = succ;
        run.note_stored();
        // Announced once every successor is on Open, so the bound covers them.
        if improved {
            let frontier = run.open_frontier();
            let b = run.bounds(frontier);
            run.emit(EmissionKind::Improvement, b);
        }

        if run.limits.stored_exceeded(run.table.len() as u64) && !purge(&mut run) {
            let frontier = run.open_frontier();
            let b = run.bounds(frontier);
            return run.finish(Status::Interrupted, b);
        }
        if run.cadence.due(run.stats.expansions) {
            let frontier = run.open_frontier();
            let b = run.bounds(frontier);
            run.emit(EmissionKind::Periodic, b);
        }
    }

    let status = if run.incumbent.is_some() {
        Status::Converged
    } else {
        Status::NoSolution
    };
    let b = run.bounds(None);
    run.finish(status, b)
}

/// Removes Open entries with `f >= upper` to recover memory. Returns whether
/// the store is back within `max_stored`.
fn purge<S: SearchSpace + ?Sized, K: Sink + ?Sized>(run: &mut Run<'_, S, K>) -> bool {
    let upper = run.upper();
    let mut doomed = Vec::new();
    run.open.retain(|e| {
        let keep = e.f < upper;
        if !keep {
            doomed.push(e.state);
        }
        keep
    });
    for s in doomed {
        let expanded = run.table.get(s).is_some_and(|r| r.expanded);
        if expanded {
            if let Some(r) = run.table.get_mut(s) {
                r.status = NodeStatus::Pruned;
            }
        } else {
            run.table.remove(s);
        }
    }
    !run.limits.stored_exceeded(run.table.len() as u64)
}
