//! Per-state bookkeeping for best-first search.

use std::collections::HashMap;

use crate::cost::Cost;
use crate::space::StateId;
use crate::weight::{Key, WeightSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeStatus {
    Open,
    Closed,
    /// Popped with `f >= upper bound` after having been expanded before.
    Pruned,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeRecord {
    pub state: StateId,
    pub g: Cost,
    /// Cached heuristic value.
    pub h: Cost,
    pub parent: Option<StateId>,
    pub status: NodeStatus,
    /// Set once the node has been expanded at least once.
    pub expanded: bool,
}

impl NodeRecord {
    pub fn new(state: StateId, g: Cost, h: Cost, parent: Option<StateId>) -> NodeRecord {
        NodeRecord {
            state,
            g,
            h,
            parent,
            status: NodeStatus::Open,
            expanded: false,
        }
    }

    pub fn f(&self) -> Cost {
        self.g + self.h
    }

    pub fn key(&self, w: WeightSpec) -> Key {
        w.key(self.g, self.h)
    }

    /// Moves a closed node back to Open after its g-cost improved.
    ///
    /// Returns `false` and leaves the record untouched when the node is not
    /// closed or `new_g` is not a strict improvement; callers treat that as a
    /// contract violation.
    #[must_use]
    pub fn reopen(&mut self, new_g: Cost, parent: Option<StateId>) -> bool {
        if !matches!(self.status, NodeStatus::Closed | NodeStatus::Pruned) || new_g >= self.g {
            return false;
        }
        self.g = new_g;
        self.parent = parent;
        self.status = NodeStatus::Open;
        true
    }
}

/// All records currently held by a search (Open, Closed and Pruned).
#[derive(Debug, Default)]
pub struct NodeTable {
    records: HashMap<StateId, NodeRecord>,
}

impl NodeTable {
    pub fn new() -> NodeTable {
        NodeTable::default()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, state: StateId) -> Option<&NodeRecord> {
        self.records.get(&state)
    }

    pub fn get_mut(&mut self, state: StateId) -> Option<&mut NodeRecord> {
        self.records.get_mut(&state)
    }

    pub fn insert(&mut self, record: NodeRecord) {
        self.records.insert(record.state, record);
    }

    pub fn remove(&mut self, state: StateId) -> Option<NodeRecord> {
        self.records.remove(&state)
    }

    pub fn iter(&self) -> impl Iterator<Item = &NodeRecord> {
        self.records.values()
    }

    /// States from the root of `state`'s parent chain down to `state`.
    ///
    /// Parent pointers always point to a node of strictly smaller g, so the
    /// walk terminates.
    pub fn path_to(&self, state: StateId) -> Vec<StateId> {
        let mut path = vec![state];
        let mut cur = state;
        while let Some(parent) = self.records.get(&cur).and_then(|r| r.parent) {
            path.push(parent);
            cur = parent;
        }
        path.reverse();
        path
    }
}
