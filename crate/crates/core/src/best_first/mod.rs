//! Best-first searches over an explicit Open/Closed store.
//!
//! * [`astar`], [`weighted_astar`] and [`enhanced_astar`] test for the goal
//!   when a node is selected and stop at the first goal.
//! * [`anytime_wastar`] tests for the goal when a node is generated, prunes
//!   with the incumbent's cost and keeps searching until Open is exhausted.
//! * [`ara_star`] lowers its weight after each solution and defers
//!   re-expansions through an INCONS set.

mod anytime;
mod ara;
mod select;

use std::time::Instant;

pub use anytime::anytime_wastar;
pub use ara::ara_star;
pub use select::{astar, enhanced_astar, weighted_astar};

use crate::bounds::{BoundPair, LowerBoundTracker};
use crate::cost::Cost;
use crate::limits::{SearchLimits, SearchStats, Status};
use crate::node::{NodeRecord, NodeStatus, NodeTable};
use crate::open::{OpenList, TieBreak};
use crate::space::{path_cost, SearchSpace, StateId};
use crate::trace::{
    Cadence, Emission, EmissionKind, FoundAt, Incumbent, IncumbentTrace, SearchOutcome, Sink,
};
use crate::weight::WeightSpec;

/// State shared by the best-first algorithms for one run.
struct Run<'a, S: ?Sized, K: ?Sized> {
    space: &'a S,
    limits: SearchLimits,
    sink: &'a mut K,
    started: Instant,
    open: OpenList,
    table: NodeTable,
    stats: SearchStats,
    incumbent: Option<Incumbent>,
    trace: IncumbentTrace,
    tracker: LowerBoundTracker,
    cadence: Cadence,
    w: WeightSpec,
    buf: Vec<(StateId, Cost)>,
}

impl<'a, S: SearchSpace + ?Sized, K: Sink + ?Sized> Run<'a, S, K> {
    fn new(space: &'a S, w: WeightSpec, limits: SearchLimits, sink: &'a mut K) -> Self {
        Run {
            space,
            limits,
            sink,
            started: Instant::now(),
            open: OpenList::new(TieBreak::LeastH),
            table: NodeTable::new(),
            stats: SearchStats::default(),
            incumbent: None,
            trace: IncumbentTrace::new(),
            tracker: LowerBoundTracker::new(),
            cadence: Cadence::new(),
            w,
            buf: Vec::new(),
        }
    }

    fn upper(&self) -> Cost {
        self.incumbent.as_ref().map_or(Cost::INFINITY, |i| i.cost)
    }

    fn note_stored(&mut self) {
        self.stats.stored = self.stats.stored.max(self.table.len() as u64);
    }

    fn out_of_budget(&self) -> bool {
        self.limits.expansions_exceeded(self.stats.expansions)
            || self.limits.time_exceeded(self.started)
    }

    /// Inserts the start state into Open. Returns `false` if it is pruned.
    fn seed(&mut self, prune_at: Cost) -> bool {
        let start = self.space.start();
        let h = self.space.heuristic(start);
        self.stats.generated = 1;
        if h >= prune_at {
            return false;
        }
        let rec = NodeRecord::new(start, Cost::ZERO, h, None);
        self.open.push_record(&rec, self.w);
        self.table.insert(rec);
        self.note_stored();
        true
    }

    /// Pops the next node, marks it closed and updates the counters.
    /// Returns its g and h.
    fn close(&mut self, state: StateId) -> (Cost, Cost) {
        let rec = self.table.get_mut(state).expect("popped node has a record");
        rec.status = NodeStatus::Closed;
        if rec.expanded {
            self.stats.reexpansions += 1;
        } else {
            rec.expanded = true;
            self.stats.distinct_expanded += 1;
        }
        self.stats.expansions += 1;
        let (g, h) = (rec.g, rec.h);
        self.sink.on_expand(state, g, h);
        (g, h)
    }

    /// Drops a popped node whose f cannot beat the incumbent. Records of
    /// never-expanded nodes are released.
    fn discard(&mut self, state: StateId) {
        let expanded = self.table.get(state).is_some_and(|r| r.expanded);
        if expanded {
            if let Some(r) = self.table.get_mut(state) {
                r.status = NodeStatus::Pruned;
            }
        } else {
            self.table.remove(state);
        }
    }

    fn generate(&mut self, state: StateId) {
        self.buf.clear();
        self.space.successors(state, &mut self.buf);
        self.stats.generated += self.buf.len() as u64;
    }

    /// Offers a path of cost `g` via `parent` to `state`, whose heuristic is
    /// `h`. New states are inserted, improved ones updated (reopened if
    /// closed); anything else is ignored. Returns the record's new status if
    /// it changed.
    fn relax(&mut self, state: StateId, parent: StateId, g: Cost, h: Cost) -> Option<NodeStatus> {
        match self.table.get_mut(state) {
            None => {
                let rec = NodeRecord::new(state, g, h, Some(parent));
                self.open.push_record(&rec, self.w);
                self.table.insert(rec);
                Some(NodeStatus::Open)
            }
            Some(rec) if g < rec.g => {
                let was = rec.status;
                match was {
                    NodeStatus::Open => {
                        rec.g = g;
                        rec.parent = Some(parent);
                    }
                    NodeStatus::Closed | NodeStatus::Pruned => {
                        let reopened = rec.reopen(g, Some(parent));
                        debug_assert!(reopened);
                    }
                }
                let rec = rec.clone();
                self.open.push_record(&rec, self.w);
                Some(was)
            }
            Some(_) => None,
        }
    }

    /// Heuristic of `state`, from its record if it has one.
    fn h_of(&self, state: StateId) -> Cost {
        match self.table.get(state) {
            Some(r) => r.h,
            None => self.space.heuristic(state),
        }
    }

    fn g_of(&self, state: StateId) -> Option<Cost> {
        self.table.get(state).map(|r| r.g)
    }

    /// Installs a new incumbent reached through `parent` (or the goal record
    /// itself when `parent` is `None`). Returns `false` if the resulting path
    /// does not improve on the current incumbent.
    fn improve(&mut self, goal: StateId, parent: Option<StateId>) -> bool {
        let path = match parent {
            Some(p) => {
                let mut path = self.table.path_to(p);
                path.push(goal);
                path
            }
            None => self.table.path_to(goal),
        };
        let cost = path_cost(self.space, &path).expect("incumbent path is connected");
        if cost >= self.upper() {
            return false;
        }
        let inc = Incumbent {
            goal_state: goal,
            cost,
            path,
            found_at: FoundAt {
                expansions: self.stats.expansions,
                elapsed: self.started.elapsed(),
            },
            weight: self.w,
        };
        self.trace.push(inc.clone());
        self.incumbent = Some(inc);
        true
    }

    fn open_frontier(&self) -> Option<(Cost, Cost)> {
        let (f, s) = self.open.min_f()?;
        Some((f, self.table.get(s).map_or(Cost::ZERO, |r| r.g)))
    }

    fn bounds(&mut self, frontier: Option<(Cost, Cost)>) -> BoundPair {
        let upper = self.upper();
        self.tracker.observe(frontier, upper)
    }

    fn emit(&mut self, kind: EmissionKind, bounds: BoundPair) {
        let e = Emission {
            kind,
            incumbent_cost: self.incumbent.as_ref().map(|i| i.cost),
            bounds,
            reported_ratio: bounds.reported_ratio(self.w),
            weight: self.w,
            expansions: self.stats.expansions,
            generated: self.stats.generated,
            stored: self.table.len() as u64,
            recursive_calls: 0,
            elapsed: self.started.elapsed(),
        };
        self.sink.emit(&e);
    }

    fn finish(mut self, status: Status, bounds: BoundPair) -> SearchOutcome {
        self.note_stored();
        self.emit(EmissionKind::Final, bounds);
        SearchOutcome {
            status,
            incumbent: self.incumbent,
            bounds,
            stats: self.stats,
            trace: self.trace,
            final_weight: self.w,
            elapsed: self.started.elapsed(),
        }
    }
}
