use crate::cost::Cost;
use crate::limits::{SearchLimits, Status};
use crate::space::SearchSpace;
use crate::trace::SearchOutcome;
use crate::weight::WeightSpec;

use super::Run;

/// A* with least-h tie-breaking. The first goal selected for expansion is
/// optimal when the heuristic is admissible. Closed nodes whose g improves
/// are reopened.
pub fn astar<S: SearchSpace + ?Sized>(space: &S, limits: &SearchLimits) -> SearchOutcome {
    select_goal(space, WeightSpec::ONE, Cost::INFINITY, limits)
}

/// Weighted A*: orders Open by `g + w·h` and stops at the first goal
/// selected, whose cost is at most `w` times optimal.
pub fn weighted_astar<S: SearchSpace + ?Sized>(
    space: &S,
    w: WeightSpec,
    limits: &SearchLimits,
) -> SearchOutcome {
    select_goal(space, w, Cost::INFINITY, limits)
}

/// Enhanced A*: A* that never inserts a node with `f >= upper_bound`.
///
/// The comparison is strict, so with integer costs a caller holding a
/// solution of cost `c` must pass `c + 1` to keep that solution reachable.
/// [`Status::NoSolution`] means the bound excluded every goal.
pub fn enhanced_astar<S: SearchSpace + ?Sized>(
    space: &S,
    upper_bound: Cost,
    limits: &SearchLimits,
) -> SearchOutcome {
    select_goal(space, WeightSpec::ONE, upper_bound, limits)
}

fn select_goal<S: SearchSpace + ?Sized>(
    space: &S,
    w: WeightSpec,
    prune_at: Cost,
    limits: &SearchLimits,
) -> SearchOutcome {
    let mut sink = ();
    let mut run = Run::new(space, w, *limits, &mut sink);
    if !run.seed(prune_at) {
        let b = run.bounds(None);
        return run.finish(Status::NoSolution, b);
    }
    while let Some(top) = run.open.peek_min().copied() {
        if space.is_goal(top.state) {
            run.open.pop_min();
            let improved = run.improve(top.state, None);
            debug_assert!(improved);
            let frontier = run.open_frontier();
            let b = run.bounds(frontier);
            return run.finish(Status::Converged, b);
        }
        if run.out_of_budget() || run.limits.stored_exceeded(run.table.len() as u64) {
            let frontier = run.open_frontier();
            let b = run.bounds(frontier);
            return run.finish(Status::Interrupted, b);
        }
        run.open.pop_min();
        let (g, _) = run.close(top.state);
        run.generate(top.state);
        let succ = std::mem::take(&mut run.buf);
        for &(s, c) in &succ {
            let gs = g + c;
            if run.g_of(s).is_some_and(|old| gs >= old) {
                continue;
            }
            let hs = run.h_of(s);
            if gs + hs >= prune_at {
                continue;
            }
            run.relax(s, top.state, gs, hs);
        }
        run.buf = succ;
        run.note_stored();
    }
    let b = run.bounds(None);
    run.finish(Status::NoSolution, b)
}
