//! Linear-space Recursive Best-First Search and its weighted and anytime
//! variants.
//!
//! Four variants share one engine:
//!
//! | variant                       | orders children by        | stops at               |
//! |-------------------------------|---------------------------|------------------------|
//! | [`rbfs_weighted`]             | backed-up `F' (g + w·h)`  | first goal expanded    |
//! | [`wrbfs`]                     | `g + w·(F − g)`           | first goal expanded    |
//! | [`anytime_wrbfs`]             | `g + w·(F − g)`           | stack exhausted        |
//! | [`anytime_rbfs_weighted`]     | backed-up `F'`            | stack exhausted        |
//!
//! `F` is the backed-up least unweighted f-cost below a node; `F − g` is an
//! improved admissible heuristic. The anytime variants test for the goal at
//! generation, prune any child whose f (or backed-up F) is not below the
//! incumbent's cost, and report the least F over the stack frontier as a
//! lower bound.
//!
//! The recursion runs on an explicit stack. Each frame holds the node on the
//! current path and all of its children, so at most `depth × branching`
//! child entries are retained. There is no duplicate detection beyond never
//! generating a node's own parent.

use std::collections::HashSet;
use std::time::Instant;

use crate::bounds::{BoundPair, LowerBoundTracker};
use crate::cost::Cost;
use crate::limits::{SearchLimits, SearchStats, Status};
use crate::space::{SearchSpace, StateId};
use crate::trace::{
    Cadence, Emission, EmissionKind, FoundAt, Incumbent, IncumbentTrace, SearchOutcome, Sink,
};
use crate::weight::{Key, WeightSpec, KEY_INFINITY};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// RBFS with a weighted evaluation function (Korf's weighted RBFS).
    Rbfs,
    /// RBFS that backs up unweighted F and orders by `g + w·(F − g)`.
    Wrbfs,
    AnytimeWrbfs,
    /// Anytime version of [`Variant::Rbfs`]; keeps admissible F next to F'
    /// for pruning and the lower bound.
    AnytimeRbfsWeighted,
}

impl Variant {
    fn is_anytime(self) -> bool {
        matches!(self, Variant::AnytimeWrbfs | Variant::AnytimeRbfsWeighted)
    }

    fn orders_by_weighted_backup(self) -> bool {
        matches!(self, Variant::Rbfs | Variant::AnytimeRbfsWeighted)
    }
}

/// One node expansion, recorded when [`Rbfs::record_expansions`] is on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RbfsExpansion {
    pub state: StateId,
    pub g: Cost,
    pub h: Cost,
    /// Stored value the node was entered with, in the ordering metric.
    pub stored_key: Key,
    /// Stored admissible F the node was entered with.
    pub stored_f: Cost,
    pub depth: usize,
}

#[derive(Debug, Clone)]
pub struct RbfsOutcome {
    pub outcome: SearchOutcome,
    /// Every expansion in order (empty unless recording was requested).
    pub expansions: Vec<RbfsExpansion>,
    /// Lower bound at each emission, in order.
    pub lower_bounds: Vec<Cost>,
}

impl RbfsOutcome {
    /// States in the order they were first expanded.
    pub fn first_expansions(&self) -> Vec<StateId> {
        let mut seen = HashSet::new();
        self.expansions
            .iter()
            .map(|e| e.state)
            .filter(|s| seen.insert(*s))
            .collect()
    }
}

/// Configurable RBFS run.
pub struct Rbfs<'a, S: ?Sized> {
    space: &'a S,
    variant: Variant,
    w: WeightSpec,
    limits: SearchLimits,
    record: bool,
}

impl<'a, S: SearchSpace + ?Sized> Rbfs<'a, S> {
    pub fn new(space: &'a S, variant: Variant, w: WeightSpec) -> Self {
        Rbfs {
            space,
            variant,
            w,
            limits: SearchLimits::none(),
            record: false,
        }
    }

    pub fn limits(mut self, limits: SearchLimits) -> Self {
        self.limits = limits;
        self
    }

    pub fn record_expansions(mut self, on: bool) -> Self {
        self.record = on;
        self
    }

    pub fn run<K: Sink + ?Sized>(self, sink: &mut K) -> RbfsOutcome {
        Engine::new(self, sink).run()
    }
}

pub fn rbfs_weighted<S: SearchSpace + ?Sized>(
    space: &S,
    w: WeightSpec,
    limits: &SearchLimits,
) -> SearchOutcome {
    Rbfs::new(space, Variant::Rbfs, w)
        .limits(*limits)
        .run(&mut ())
        .outcome
}

pub fn wrbfs<S: SearchSpace + ?Sized>(
    space: &S,
    w: WeightSpec,
    limits: &SearchLimits,
) -> SearchOutcome {
    Rbfs::new(space, Variant::Wrbfs, w)
        .limits(*limits)
        .run(&mut ())
        .outcome
}

pub fn anytime_wrbfs<S, K>(space: &S, w: WeightSpec, limits: &SearchLimits, sink: &mut K) -> SearchOutcome
where
    S: SearchSpace + ?Sized,
    K: Sink + ?Sized,
{
    Rbfs::new(space, Variant::AnytimeWrbfs, w)
        .limits(*limits)
        .run(sink)
        .outcome
}

pub fn anytime_rbfs_weighted<S, K>(
    space: &S,
    w: WeightSpec,
    limits: &SearchLimits,
    sink: &mut K,
) -> SearchOutcome
where
    S: SearchSpace + ?Sized,
    K: Sink + ?Sized,
{
    Rbfs::new(space, Variant::AnytimeRbfsWeighted, w)
        .limits(*limits)
        .run(sink)
        .outcome
}

#[derive(Debug, Clone, Copy)]
struct Child {
    state: StateId,
    g: Cost,
    /// Backed-up admissible F.
    f: Cost,
    /// Backed-up weighted F', scaled by q.
    fp: Key,
    seq: u32,
}

#[derive(Debug)]
struct Frame {
    state: StateId,
    g: Cost,
    /// Local threshold B', in the ordering metric.
    bound: Key,
    /// Values the node was entered with.
    entered_key: Key,
    entered_f: Cost,
    children: Vec<Child>,
    /// `children[0]` is being searched by the frame above.
    active: bool,
    /// Incumbent cost when the children were last normalized.
    pruned_at: Cost,
}

enum Stop {
    Solved,
    Exhausted,
    Interrupted,
}

struct Engine<'a, S: ?Sized, K: ?Sized> {
    space: &'a S,
    variant: Variant,
    w: WeightSpec,
    limits: SearchLimits,
    sink: &'a mut K,
    started: Instant,
    stack: Vec<Frame>,
    entries: usize,
    stats: SearchStats,
    seen: HashSet<StateId>,
    incumbent: Option<Incumbent>,
    trace: IncumbentTrace,
    tracker: LowerBoundTracker,
    last_raw_lower: Cost,
    lower_bounds: Vec<Cost>,
    cadence: Cadence,
    record: bool,
    log: Vec<RbfsExpansion>,
    buf: Vec<(StateId, Cost)>,
}

impl<'a, S: SearchSpace + ?Sized, K: Sink + ?Sized> Engine<'a, S, K> {
    fn new(cfg: Rbfs<'a, S>, sink: &'a mut K) -> Self {
        Engine {
            space: cfg.space,
            variant: cfg.variant,
            w: cfg.w,
            limits: cfg.limits,
            sink,
            started: Instant::now(),
            stack: Vec::new(),
            entries: 0,
            stats: SearchStats::default(),
            seen: HashSet::new(),
            incumbent: None,
            trace: IncumbentTrace::new(),
            tracker: LowerBoundTracker::new(),
            last_raw_lower: Cost::ZERO,
            lower_bounds: Vec::new(),
            cadence: Cadence::new(),
            record: cfg.record,
            log: Vec::new(),
            buf: Vec::new(),
        }
    }

    fn upper(&self) -> Cost {
        self.incumbent.as_ref().map_or(Cost::INFINITY, |i| i.cost)
    }

    /// The value children are sorted and thresholded by.
    fn order_key(&self, c: &Child) -> Key {
        if self.variant.orders_by_weighted_backup() {
            c.fp
        } else {
            self.stack_key(c.g, c.f)
        }
    }

    /// `g + w·(F − g)` scaled by q.
    fn stack_key(&self, g: Cost, f: Cost) -> Key {
        if f.is_infinite() || g.is_infinite() {
            return KEY_INFINITY;
        }
        self.w.key(g, f.saturating_sub(g))
    }

    fn sort_children(&self, children: &mut [Child]) {
        children.sort_by_key(|c| (self.order_key(c), c.seq));
    }

    fn path_with(&self, last: StateId) -> Vec<StateId> {
        let mut path: Vec<StateId> = self.stack.iter().map(|f| f.state).collect();
        path.push(last);
        path
    }

    fn run(mut self) -> RbfsOutcome {
        let start = self.space.start();
        let h = self.space.heuristic(start);
        self.stats.generated = 1;
        let stop = if self.space.is_goal(start) {
            self.stats.recursive_calls = 1;
            self.set_incumbent(vec![start], Cost::ZERO, true);
            if self.variant.is_anytime() {
                Stop::Exhausted
            } else {
                Stop::Solved
            }
        } else {
            let fp = self.w.key(Cost::ZERO, h);
            let f = Cost::ZERO + h;
            let key = if self.variant.orders_by_weighted_backup() {
                fp
            } else {
                self.stack_key(Cost::ZERO, f)
            };
            self.search(start, key, f)
        };
        self.finish(stop)
    }

    /// Drives the recursion from the root until it unwinds, a goal is
    /// expanded (one-shot variants), or a limit trips.
    fn search(&mut self, start: StateId, root_key: Key, root_f: Cost) -> Stop {
        let w = self.w;
        let root_fp = w.key(Cost::ZERO, self.space.heuristic(start));
        if let Some(stop) = self.enter(start, Cost::ZERO, None, root_fp, root_f, root_key, KEY_INFINITY) {
            return stop;
        }
        loop {
            if self.limits.expansions_exceeded(self.stats.expansions)
                || self.limits.time_exceeded(self.started)
                || self.limits.stored_exceeded(self.entries as u64)
            {
                return Stop::Interrupted;
            }
            let upper = self.upper();
            let anytime = self.variant.is_anytime();
            let top = self.stack.last_mut().expect("stack is not empty");
            if anytime && upper < top.pruned_at {
                for c in top.children.iter_mut() {
                    if c.f >= upper {
                        c.f = Cost::INFINITY;
                        c.fp = KEY_INFINITY;
                    }
                }
                top.pruned_at = upper;
                let mut children = std::mem::take(&mut top.children);
                self.sort_children(&mut children);
                self.stack.last_mut().unwrap().children = children;
            }
            let top = self.stack.last().unwrap();
            let first = top.children[0];
            let key1 = self.order_key(&first);
            let proceed = key1 < KEY_INFINITY && first.f < upper && key1 <= top.bound;
            if proceed {
                let second = top
                    .children
                    .get(1)
                    .map_or(KEY_INFINITY, |c| self.order_key(c));
                let bound = top.bound.min(second);
                let (state, parent) = (first.state, Some(top.state));
                self.stack.last_mut().unwrap().active = true;
                let entered_key = key1;
                if let Some(stop) = self.enter(state, first.g, parent, first.fp, first.f, entered_key, bound) {
                    return stop;
                }
                continue;
            }

            // Return from the top frame with its backed-up values.
            let frame = self.stack.pop().expect("stack is not empty");
            self.entries -= frame.children.len();
            let ret_fp = frame.children.iter().map(|c| c.fp).min().unwrap_or(KEY_INFINITY);
            let ret_f = frame.children.iter().map(|c| c.f).min().unwrap_or(Cost::INFINITY);
            let ret_key = if self.variant.orders_by_weighted_backup() {
                ret_fp
            } else {
                self.stack_key(frame.g, ret_f)
            };
            debug_assert!(
                ret_key >= frame.entered_key && ret_f >= frame.entered_f,
                "backed-up value decreased"
            );
            if self.stack.is_empty() {
                return Stop::Exhausted;
            }
            self.back_up(frame.state, ret_fp, ret_f);
        }
    }

    /// Stores the values returned by the active child of the top frame and
    /// moves the child to its place in sibling order.
    fn back_up(&mut self, state: StateId, fp: Key, f: Cost) {
        let upper = self.upper();
        let anytime = self.variant.is_anytime();
        let parent = self.stack.last_mut().expect("child has a parent frame");
        let mut children = std::mem::take(&mut parent.children);
        parent.active = false;
        let mut moved = children.remove(0);
        debug_assert_eq!(moved.state, state);
        moved.fp = fp;
        moved.f = f;
        if anytime && moved.f >= upper {
            moved.f = Cost::INFINITY;
            moved.fp = KEY_INFINITY;
        }
        let k = self.order_key(&moved);
        let pos = children.partition_point(|x| (self.order_key(x), x.seq) <= (k, moved.seq));
        children.insert(pos, moved);
        self.stack.last_mut().unwrap().children = children;
    }

    /// Performs a recursive call on `state`: goal test, successor generation
    /// and pushing a new frame. Returns `Some` when the search must stop.
    #[allow(clippy::too_many_arguments)]
    fn enter(
        &mut self,
        state: StateId,
        g: Cost,
        parent: Option<StateId>,
        fp: Key,
        f: Cost,
        entered_key: Key,
        bound: Key,
    ) -> Option<Stop> {
        self.stats.recursive_calls += 1;
        let anytime = self.variant.is_anytime();
        if !anytime && self.space.is_goal(state) {
            let path = self.path_with(state);
            self.set_incumbent(path, g, true);
            return Some(Stop::Solved);
        }
        let h = self.space.heuristic(state);
        self.stats.expansions += 1;
        if self.seen.insert(state) {
            self.stats.distinct_expanded += 1;
        } else {
            self.stats.reexpansions += 1;
        }
        self.sink.on_expand(state, g, h);
        if self.record {
            self.log.push(RbfsExpansion {
                state,
                g,
                h,
                stored_key: entered_key,
                stored_f: f,
                depth: self.stack.len(),
            });
        }

        self.buf.clear();
        self.space.successors(state, &mut self.buf);
        let succ = std::mem::take(&mut self.buf);
        let mut children = Vec::with_capacity(succ.len());
        let mut improved = false;
        for (i, &(s, c)) in succ.iter().enumerate() {
            if Some(s) == parent {
                continue;
            }
            self.stats.generated += 1;
            let gs = g + c;
            let hs = self.space.heuristic(s);
            let fs = gs + hs;
            let fps = self.w.key(gs, hs);
            if anytime && self.space.is_goal(s) && fs < self.upper() {
                let path = self.path_with_child(state, s);
                // Announced once this node's children are on the stack, so
                // that the lower bound covers them.
                self.set_incumbent(path, gs, false);
                improved = true;
            }
            let (cf, cfp) = if anytime && fs >= self.upper() {
                (Cost::INFINITY, KEY_INFINITY)
            } else {
                (
                    if fs < f { f.max(fs) } else { fs },
                    if fps < fp { fp.max(fps) } else { fps },
                )
            };
            children.push(Child {
                state: s,
                g: gs,
                f: cf,
                fp: cfp,
                seq: i as u32,
            });
        }
        self.buf = succ;
        self.stats.max_branching = self.stats.max_branching.max(children.len() as u64);

        if children.is_empty() {
            // Dead end: report infinity to the parent without pushing a frame.
            let stop = self.return_dead_end(state);
            if improved {
                self.emit(EmissionKind::Improvement);
            }
            return stop;
        }
        self.sort_children(&mut children);
        self.entries += children.len();
        self.stats.stored = self.stats.stored.max(self.entries as u64);
        self.stack.push(Frame {
            state,
            g,
            bound,
            entered_key,
            entered_f: f,
            children,
            active: false,
            pruned_at: self.upper(),
        });
        self.stats.max_depth = self.stats.max_depth.max(self.stack.len() as u64);
        debug_assert!(
            self.entries as u64 <= self.stats.max_depth * self.stats.max_branching,
            "stack holds more than depth × branching entries"
        );
        if improved {
            self.emit(EmissionKind::Improvement);
        }
        if anytime {
            let upper = self.upper();
            if upper.is_finite() && self.raw_lower() >= upper {
                return Some(Stop::Exhausted);
            }
        }
        if self.cadence.due(self.stats.recursive_calls) {
            self.emit(EmissionKind::Periodic);
        }
        None
    }

    fn path_with_child(&self, state: StateId, child: StateId) -> Vec<StateId> {
        let mut p = self.path_with(state);
        p.push(child);
        p
    }

    /// A node without successors backs up infinity to its parent.
    fn return_dead_end(&mut self, state: StateId) -> Option<Stop> {
        if self.stack.is_empty() {
            return Some(Stop::Exhausted);
        }
        self.back_up(state, KEY_INFINITY, Cost::INFINITY);
        None
    }

    fn set_incumbent(&mut self, path: Vec<StateId>, cost: Cost, announce: bool) {
        let goal = *path.last().expect("path is not empty");
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
        if announce {
            self.emit(EmissionKind::Improvement);
        }
    }

    /// Least stored F over the stack frontier: every child entry except the
    /// ones currently being searched.
    fn raw_lower(&mut self) -> Cost {
        let min = self
            .stack
            .iter()
            .flat_map(|fr| fr.children.iter().skip(usize::from(fr.active)))
            .map(|c| c.f)
            .min()
            .unwrap_or(Cost::INFINITY);
        let min = min.min(self.upper());
        if self.variant.is_anytime() {
            debug_assert!(min >= self.last_raw_lower, "stack-frontier bound decreased");
        }
        self.last_raw_lower = self.last_raw_lower.max(min);
        min
    }

    fn frontier_min(&mut self) -> Option<(Cost, Cost)> {
        let upper = self.upper();
        let raw = self.raw_lower();
        if raw >= upper {
            return None;
        }
        let g = self
            .stack
            .iter()
            .flat_map(|fr| fr.children.iter().skip(usize::from(fr.active)))
            .filter(|c| c.f == raw)
            .map(|c| c.g)
            .next();
        Some((raw, g.unwrap_or(Cost::ZERO)))
    }

    fn current_bounds(&mut self) -> BoundPair {
        let upper = self.upper();
        let frontier = if self.stack.is_empty() {
            None
        } else {
            self.frontier_min()
        };
        self.tracker.observe(frontier, upper)
    }

    fn emit(&mut self, kind: EmissionKind) {
        let bounds = self.current_bounds();
        self.emit_with(kind, bounds);
    }

    fn emit_with(&mut self, kind: EmissionKind, bounds: BoundPair) {
        self.lower_bounds.push(bounds.lower);
        let e = Emission {
            kind,
            incumbent_cost: self.incumbent.as_ref().map(|i| i.cost),
            bounds,
            reported_ratio: bounds.reported_ratio(self.w),
            weight: self.w,
            expansions: self.stats.expansions,
            generated: self.stats.generated,
            stored: self.entries as u64,
            recursive_calls: self.stats.recursive_calls,
            elapsed: self.started.elapsed(),
        };
        self.sink.emit(&e);
    }

    fn finish(mut self, stop: Stop) -> RbfsOutcome {
        let (status, bounds) = match stop {
            Stop::Solved => {
                let b = self.current_bounds();
                (Status::Converged, b)
            }
            Stop::Exhausted => {
                let upper = self.upper();
                let b = self.tracker.observe(None, upper);
                if self.incumbent.is_some() {
                    (Status::Converged, b)
                } else {
                    (Status::NoSolution, b)
                }
            }
            Stop::Interrupted => {
                let b = self.current_bounds();
                (Status::Interrupted, b)
            }
        };
        self.emit_with(EmissionKind::Final, bounds);
        RbfsOutcome {
            outcome: SearchOutcome {
                status,
                incumbent: self.incumbent,
                bounds,
                stats: self.stats,
                trace: self.trace,
                final_weight: self.w,
                elapsed: self.started.elapsed(),
            },
            expansions: self.log,
            lower_bounds: self.lower_bounds,
        }
    }
}
