use std::collections::HashSet;

use crate::bounds::BoundPair;
use crate::cost::Cost;
use crate::limits::{SearchLimits, Status};
use crate::node::NodeStatus;
use crate::space::{SearchSpace, StateId};
use crate::trace::{Emission, EmissionKind, SearchOutcome, Sink};
use crate::weight::{Step, WeightSpec};

use super::Run;

/// Anytime Repairing A*.
///
/// Each iteration is a weighted search with the current weight that closes
/// every node at most once: a better path to a node already closed in this
/// iteration puts the node in INCONS instead of reopening it. The iteration
/// ends when no Open key beats the best goal's `w·g` (that is, `q·g`). A
/// better goal is then published, the weight drops to `max(1, w - step)`,
/// INCONS moves to Open and every Open key is recomputed.
///
/// Nodes with `f` not below the incumbent's cost are pruned as in
/// [`anytime_wastar`](super::anytime_wastar). Each published incumbent is
/// reported with bound `min(w, upper/lower)`, using the weight in force when
/// it was found and the least f over Open and INCONS. The search converges
/// when that least f reaches the incumbent's cost.
pub fn ara_star<S, K>(
    space: &S,
    w0: WeightSpec,
    step: Step,
    limits: &SearchLimits,
    sink: &mut K,
) -> SearchOutcome
where
    S: SearchSpace + ?Sized,
    K: Sink + ?Sized,
{
    let mut run = Run::new(space, w0, *limits, sink);
    let start = space.start();
    run.seed(Cost::INFINITY);
    if space.is_goal(start) {
        run.open.pop_min();
        run.improve(start, None);
        let b = run.bounds(None);
        run.emit(EmissionKind::Improvement, b);
        return run.finish(Status::Converged, b);
    }

    let mut ara = Ara {
        incons: Vec::new(),
        in_incons: HashSet::new(),
        closed: HashSet::new(),
        best_goal: None,
    };

    loop {
        if !improve_path(&mut run, &mut ara) {
            publish(&mut run, &ara, true);
            let frontier = frontier_min(&run, &ara);
            let b = run.bounds(frontier);
            return run.finish(Status::Interrupted, b);
        }
        publish(&mut run, &ara, false);

        let frontier = frontier_min(&run, &ara);
        let upper = run.upper();
        if frontier.is_none_or(|(f, _)| f >= upper) {
            let status = if run.incumbent.is_some() {
                Status::Converged
            } else {
                Status::NoSolution
            };
            let b = run.bounds(frontier);
            return run.finish(status, b);
        }

        run.w = run.w.decrease(step);
        for s in ara.incons.drain(..) {
            let rec = run.table.get_mut(s).expect("INCONS entry has a record");
            rec.status = NodeStatus::Open;
            let rec = rec.clone();
            run.open.push_record(&rec, run.w);
        }
        ara.in_incons.clear();
        ara.closed.clear();
        let w = run.w;
        let table = &run.table;
        run.open.rekey(|e| {
            let r = table.get(e.state).expect("open entry has a record");
            w.key(r.g, r.h)
        });
    }
}

struct Ara {
    incons: Vec<StateId>,
    in_incons: HashSet<StateId>,
    /// Nodes closed during the current iteration.
    closed: HashSet<StateId>,
    /// Best goal reached so far and its path, possibly not yet published.
    best_goal: Option<(StateId, Cost, Vec<StateId>)>,
}

impl Ara {
    fn goal_cost(&self) -> Cost {
        self.best_goal.as_ref().map_or(Cost::INFINITY, |g| g.1)
    }
}

/// Runs one weighted iteration. Returns `false` if a limit interrupted it.
fn improve_path<S, K>(run: &mut Run<'_, S, K>, ara: &mut Ara) -> bool
where
    S: SearchSpace + ?Sized,
    K: Sink + ?Sized,
{
    while let Some(top) = run.open.peek_min().copied() {
        let goal_cost = ara.goal_cost();
        if top.key >= run.w.scale(goal_cost) {
            break;
        }
        if run.out_of_budget() {
            return false;
        }
        run.open.pop_min();
        if top.f >= goal_cost {
            run.discard(top.state);
            continue;
        }
        ara.closed.insert(top.state);
        let (g, _) = run.close(top.state);
        run.generate(top.state);
        let succ = std::mem::take(&mut run.buf);
        for &(s, c) in &succ {
            let gs = g + c;
            let bound = ara.goal_cost();
            if run.space.is_goal(s) {
                if gs < bound {
                    let mut path = run.table.path_to(top.state);
                    path.push(s);
                    let cost = crate::space::path_cost(run.space, &path)
                        .expect("goal path is connected");
                    ara.best_goal = Some((s, cost, path));
                }
                continue;
            }
            let hs = run.h_of(s);
            if gs + hs >= bound {
                continue;
            }
            match run.table.get_mut(s) {
                Some(rec) if gs >= rec.g => {}
                Some(rec) if ara.closed.contains(&s) => {
                    rec.g = gs;
                    rec.parent = Some(top.state);
                    if ara.in_incons.insert(s) {
                        ara.incons.push(s);
                    }
                }
                _ => {
                    run.relax(s, top.state, gs, hs);
                }
            }
        }
        run.buf = succ;
        run.note_stored();
        if run.limits.stored_exceeded(run.table.len() as u64) {
            return false;
        }
        if run.cadence.due(run.stats.expansions) {
            let frontier = frontier_min(run, ara);
            let b = run.bounds(frontier);
            run.emit(EmissionKind::Periodic, b);
        }
    }
    true
}

/// Least f over Open, INCONS and the best goal reached so far, with the g of
/// the node realizing it. Nodes pruned against an unpublished goal are
/// covered by that goal's cost.
fn frontier_min<S, K>(run: &Run<'_, S, K>, ara: &Ara) -> Option<(Cost, Cost)>
where
    S: SearchSpace + ?Sized,
    K: Sink + ?Sized,
{
    let incons = ara
        .incons
        .iter()
        .filter_map(|s| run.table.get(*s))
        .map(|r| (r.f(), r.g))
        .min();
    let goal = ara.best_goal.as_ref().map(|g| (g.1, g.1));
    [run.open_frontier(), incons, goal].into_iter().flatten().min()
}

/// Makes the best goal found so far the incumbent if it improves on it.
/// After an interrupted iteration the weight no longer bounds the error, so
/// the reported ratio is the raw `upper/lower`.
fn publish<S, K>(run: &mut Run<'_, S, K>, ara: &Ara, interrupted: bool)
where
    S: SearchSpace + ?Sized,
    K: Sink + ?Sized,
{
    let Some((goal, cost, path)) = ara.best_goal.clone() else {
        return;
    };
    if cost >= run.upper() {
        return;
    }
    let inc = crate::trace::Incumbent {
        goal_state: goal,
        cost,
        path,
        found_at: crate::trace::FoundAt {
            expansions: run.stats.expansions,
            elapsed: run.started.elapsed(),
        },
        weight: run.w,
    };
    run.trace.push(inc.clone());
    run.incumbent = Some(inc);
    let frontier = frontier_min(run, ara);
    let b: BoundPair = run.bounds(frontier);
    if interrupted {
        let e = Emission {
            kind: EmissionKind::Improvement,
            incumbent_cost: Some(cost),
            bounds: b,
            reported_ratio: b.ratio(),
            weight: run.w,
            expansions: run.stats.expansions,
            generated: run.stats.generated,
            stored: run.table.len() as u64,
            recursive_calls: 0,
            elapsed: run.started.elapsed(),
        };
        run.sink.emit(&e);
    } else {
        run.emit(EmissionKind::Improvement, b);
    }
}
