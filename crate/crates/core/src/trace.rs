//! Incumbent solutions, emissions to an observer, and search outcomes.

use std::time::Duration;

use crate::bounds::BoundPair;
use crate::cost::{Cost, Ratio};
use crate::limits::{SearchStats, Status};
use crate::space::StateId;
use crate::weight::WeightSpec;

/// When an incumbent was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FoundAt {
    pub expansions: u64,
    pub elapsed: Duration,
}

/// The best solution found so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incumbent {
    pub goal_state: StateId,
    /// Summed edge costs along `path`.
    pub cost: Cost,
    /// From the start state to `goal_state`, inclusive.
    pub path: Vec<StateId>,
    pub found_at: FoundAt,
    /// Weight in force when the solution was found.
    pub weight: WeightSpec,
}

/// Improving solutions in discovery order; costs strictly decrease.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IncumbentTrace {
    entries: Vec<Incumbent>,
}

impl IncumbentTrace {
    pub fn new() -> IncumbentTrace {
        IncumbentTrace::default()
    }

    /// Panics if `inc` does not strictly improve on the last entry.
    pub fn push(&mut self, inc: Incumbent) {
        if let Some(last) = self.entries.last() {
            assert!(
                inc.cost < last.cost,
                "incumbent {} does not improve on {}",
                inc.cost,
                last.cost
            );
        }
        self.entries.push(inc);
    }

    pub fn entries(&self) -> &[Incumbent] {
        &self.entries
    }

    pub fn costs(&self) -> Vec<Cost> {
        self.entries.iter().map(|e| e.cost).collect()
    }

    pub fn first(&self) -> Option<&Incumbent> {
        self.entries.first()
    }

    pub fn last(&self) -> Option<&Incumbent> {
        self.entries.last()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmissionKind {
    Improvement,
    Periodic,
    Final,
}

/// Snapshot delivered to a [`Sink`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Emission {
    pub kind: EmissionKind,
    pub incumbent_cost: Option<Cost>,
    pub bounds: BoundPair,
    /// `upper/lower` capped at the weight in force.
    pub reported_ratio: Option<Ratio>,
    pub weight: WeightSpec,
    pub expansions: u64,
    pub generated: u64,
    /// Records currently held (stack entries for the RBFS family).
    pub stored: u64,
    pub recursive_calls: u64,
    pub elapsed: Duration,
}

/// Receives emissions synchronously from inside a search loop.
///
/// Implementations must not re-enter the search.
pub trait Sink {
    fn emit(&mut self, emission: &Emission);

    /// Called before each node expansion with the node's g and h.
    fn on_expand(&mut self, _state: StateId, _g: Cost, _h: Cost) {}
}

impl Sink for () {
    fn emit(&mut self, _: &Emission) {}
}

impl<F: FnMut(&Emission)> Sink for F {
    fn emit(&mut self, emission: &Emission) {
        self(emission)
    }
}

/// Sink that keeps every emission and, optionally, every expansion.
#[derive(Debug, Default, Clone)]
pub struct Recorder {
    pub emissions: Vec<Emission>,
    pub expansions: Option<Vec<(StateId, Cost, Cost)>>,
}

impl Recorder {
    pub fn new() -> Recorder {
        Recorder::default()
    }

    pub fn with_expansions() -> Recorder {
        Recorder {
            emissions: Vec::new(),
            expansions: Some(Vec::new()),
        }
    }

    /// Expanded states in order, without g and h.
    pub fn expanded_states(&self) -> Vec<StateId> {
        self.expansions
            .as_deref()
            .unwrap_or_default()
            .iter()
            .map(|e| e.0)
            .collect()
    }

    /// Expanded states in order of their first expansion.
    pub fn first_expansions(&self) -> Vec<StateId> {
        let mut seen = std::collections::HashSet::new();
        self.expanded_states()
            .into_iter()
            .filter(|s| seen.insert(*s))
            .collect()
    }
}

impl Sink for Recorder {
    fn emit(&mut self, emission: &Emission) {
        self.emissions.push(*emission);
    }

    fn on_expand(&mut self, state: StateId, g: Cost, h: Cost) {
        if let Some(log) = &mut self.expansions {
            log.push((state, g, h));
        }
    }
}

/// Emission schedule: every improvement plus the 1st, 2nd, 4th, 8th, ...
/// expansion.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Cadence {
    next: u64,
}

impl Cadence {
    pub(crate) fn new() -> Cadence {
        Cadence { next: 1 }
    }

    pub(crate) fn due(&mut self, count: u64) -> bool {
        if count >= self.next {
            while self.next <= count {
                self.next = self.next.saturating_mul(2);
            }
            true
        } else {
            false
        }
    }
}

/// Result of any search in this crate.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub status: Status,
    pub incumbent: Option<Incumbent>,
    pub bounds: BoundPair,
    pub stats: SearchStats,
    pub trace: IncumbentTrace,
    /// Weight in force when the search stopped.
    pub final_weight: WeightSpec,
    pub elapsed: Duration,
}

impl SearchOutcome {
    pub fn cost(&self) -> Option<Cost> {
        self.incumbent.as_ref().map(|i| i.cost)
    }
}
