//! The problem interface every search algorithm consumes.

use std::fmt;

use crate::cost::Cost;

/// Opaque 64-bit handle produced by a domain's canonical state encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u64);

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A search problem: start state, goal test, successors with edge costs and
/// an admissible heuristic.
///
/// Implementations must have a finite branching factor, edge costs of at
/// least one domain unit, `heuristic(s) >= 0` everywhere and
/// `heuristic(goal) == 0`.
pub trait SearchSpace {
    fn start(&self) -> StateId;

    fn is_goal(&self, state: StateId) -> bool;

    /// Appends `(successor, edge cost)` pairs to `out` in a deterministic order.
    fn successors(&self, state: StateId, out: &mut Vec<(StateId, Cost)>);

    fn heuristic(&self, state: StateId) -> Cost;

    /// Whether `heuristic` never overestimates. All bundled domains are.
    fn is_admissible(&self) -> bool {
        true
    }
}

impl<S: SearchSpace + ?Sized> SearchSpace for &S {
    fn start(&self) -> StateId {
        (**self).start()
    }

    fn is_goal(&self, state: StateId) -> bool {
        (**self).is_goal(state)
    }

    fn successors(&self, state: StateId, out: &mut Vec<(StateId, Cost)>) {
        (**self).successors(state, out)
    }

    fn heuristic(&self, state: StateId) -> Cost {
        (**self).heuristic(state)
    }

    fn is_admissible(&self) -> bool {
        (**self).is_admissible()
    }
}

/// Sum of edge costs along `path`, found by re-querying successors.
///
/// Returns `None` if consecutive states are not connected. With parallel
/// edges the cheapest one is used.
pub fn path_cost<S: SearchSpace + ?Sized>(space: &S, path: &[StateId]) -> Option<Cost> {
    let mut total = Cost::ZERO;
    let mut buf = Vec::new();
    for pair in path.windows(2) {
        buf.clear();
        space.successors(pair[0], &mut buf);
        let edge = buf
            .iter()
            .filter(|(s, _)| *s == pair[1])
            .map(|(_, c)| *c)
            .min()?;
        total = total + edge;
    }
    Some(total)
}
