//! Resource limits, run status and effort counters.

use std::time::{Duration, Instant};

/// Budget for one search. Exceeding any limit stops the search with
/// [`Status::Interrupted`], keeping the incumbent and bounds found so far.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_expansions: Option<u64>,
    pub max_stored: Option<u64>,
    pub max_wall_time: Option<Duration>,
}

impl SearchLimits {
    pub fn none() -> SearchLimits {
        SearchLimits::default()
    }

    pub fn expansions(n: u64) -> SearchLimits {
        SearchLimits {
            max_expansions: Some(n),
            ..SearchLimits::default()
        }
    }

    pub(crate) fn expansions_exceeded(&self, expansions: u64) -> bool {
        self.max_expansions.is_some_and(|m| expansions >= m)
    }

    pub(crate) fn stored_exceeded(&self, stored: u64) -> bool {
        self.max_stored.is_some_and(|m| stored > m)
    }

    pub(crate) fn time_exceeded(&self, started: Instant) -> bool {
        self.max_wall_time.is_some_and(|m| started.elapsed() >= m)
    }
}

/// How a search ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    /// The search finished normally. For anytime algorithms the final
    /// incumbent is proven optimal; for one-shot weighted searches it is the
    /// first solution selected.
    Converged,
    /// A limit was hit; the best incumbent so far (if any) is returned.
    Interrupted,
    /// The reachable space (under the active bound) holds no goal.
    NoSolution,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Converged => "converged",
            Status::Interrupted => "interrupted",
            Status::NoSolution => "no-solution",
        }
    }
}

/// Effort counters.
///
/// `expansions = distinct_expanded + reexpansions` and `stored <= generated`
/// hold for every best-first search. The RBFS family is a tree search and
/// additionally counts `recursive_calls`; its `stored` is the peak number of
/// stack entries, bounded by `max_depth × max_branching`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub expansions: u64,
    pub distinct_expanded: u64,
    pub reexpansions: u64,
    pub generated: u64,
    pub stored: u64,
    pub recursive_calls: u64,
    /// Deepest recursion stack reached (RBFS family only).
    pub max_depth: u64,
    /// Most children generated by one expansion (RBFS family only).
    pub max_branching: u64,
}
