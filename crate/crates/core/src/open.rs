//! Open list with decrease-key and a secondary index on unweighted f.
//!
//! Entries are ordered by `(key, tie, seq)`: the weighted priority key, then
//! the tie rule (least h by default), then insertion order. A state appears at
//! most once; pushing it again replaces the old entry. A second index keyed by
//! `f = g + h` gives the least f-cost over Open in O(log n) for lower bounds.

use std::collections::{BTreeSet, HashMap};

use crate::cost::Cost;
use crate::node::NodeRecord;
use crate::space::StateId;
use crate::weight::{Key, WeightSpec};

/// Rule applied among entries with equal priority key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Prefer the entry with the least h, then the oldest.
    #[default]
    LeastH,
    /// Oldest first.
    Fifo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpenEntry {
    pub state: StateId,
    pub key: Key,
    pub h: Cost,
    pub f: Cost,
    seq: u64,
}

#[derive(Debug, Default)]
pub struct OpenList {
    tie: TieBreak,
    next_seq: u64,
    members: HashMap<StateId, OpenEntry>,
    by_key: BTreeSet<(Key, u64, u64, StateId)>,
    by_f: BTreeSet<(Cost, u64, StateId)>,
}

impl OpenList {
    pub fn new(tie: TieBreak) -> OpenList {
        OpenList {
            tie,
            ..OpenList::default()
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, state: StateId) -> bool {
        self.members.contains_key(&state)
    }

    pub fn get(&self, state: StateId) -> Option<&OpenEntry> {
        self.members.get(&state)
    }

    fn tie_value(&self, h: Cost) -> u64 {
        match self.tie {
            TieBreak::LeastH => h.value(),
            TieBreak::Fifo => 0,
        }
    }

    fn index(&mut self, e: OpenEntry) {
        self.by_key.insert((e.key, self.tie_value(e.h), e.seq, e.state));
        self.by_f.insert((e.f, e.seq, e.state));
        self.members.insert(e.state, e);
    }

    fn unindex(&mut self, e: &OpenEntry) {
        let tie = self.tie_value(e.h);
        self.by_key.remove(&(e.key, tie, e.seq, e.state));
        self.by_f.remove(&(e.f, e.seq, e.state));
    }

    /// Inserts `state`, replacing any existing entry for it.
    pub fn push(&mut self, state: StateId, key: Key, h: Cost, f: Cost) {
        if let Some(old) = self.members.remove(&state) {
            self.unindex(&old);
        }
        let seq = self.next_seq;
        self.next_seq += 1;
        self.index(OpenEntry {
            state,
            key,
            h,
            f,
            seq,
        });
    }

    pub fn push_record(&mut self, rec: &NodeRecord, w: WeightSpec) {
        self.push(rec.state, rec.key(w), rec.h, rec.f());
    }

    pub fn peek_min(&self) -> Option<&OpenEntry> {
        let &(_, _, _, state) = self.by_key.first()?;
        self.members.get(&state)
    }

    pub fn pop_min(&mut self) -> Option<OpenEntry> {
        let (_, _, _, state) = self.by_key.pop_first()?;
        let e = self.members.remove(&state).expect("open index out of sync");
        self.by_f.remove(&(e.f, e.seq, e.state));
        Some(e)
    }

    /// Least f over Open together with the state realizing it.
    pub fn min_f(&self) -> Option<(Cost, StateId)> {
        self.by_f.first().map(|&(f, _, s)| (f, s))
    }

    pub fn remove(&mut self, state: StateId) -> Option<OpenEntry> {
        let e = self.members.remove(&state)?;
        self.unindex(&e);
        Some(e)
    }

    /// Drops every entry for which `keep` returns false. Returns the number
    /// removed.
    pub fn retain(&mut self, mut keep: impl FnMut(&OpenEntry) -> bool) -> usize {
        let doomed: Vec<OpenEntry> = self
            .members
            .values()
            .filter(|e| !keep(e))
            .copied()
            .collect();
        for e in &doomed {
            self.remove(e.state);
        }
        doomed.len()
    }

    /// Recomputes every priority key, e.g. after a weight change, and rebuilds
    /// the ordering. Insertion order is preserved for ties.
    pub fn rekey(&mut self, mut key_of: impl FnMut(&OpenEntry) -> Key) {
        let mut entries: Vec<OpenEntry> = self.members.drain().map(|(_, e)| e).collect();
        entries.sort_by_key(|e| e.seq);
        self.by_key.clear();
        self.by_f.clear();
        for mut e in entries {
            e.key = key_of(&e);
            self.index(e);
        }
    }

    /// States in pop order. Intended for tests and diagnostics.
    pub fn states_in_order(&self) -> Vec<StateId> {
        self.by_key.iter().map(|t| t.3).collect()
    }

    #[cfg(test)]
    fn consistent(&self) -> bool {
        self.by_key.len() == self.members.len()
            && self.by_f.len() == self.members.len()
            && self.by_key.iter().all(|t| {
                self.members
                    .get(&t.3)
                    .is_some_and(|e| e.key == t.0 && e.seq == t.2)
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(v: u64) -> Cost {
        Cost::new(v)
    }

    #[test]
    fn smaller_key_pops_first() {
        let mut open = OpenList::new(TieBreak::LeastH);
        open.push(StateId(1), 7, c(0), c(7));
        open.push(StateId(2), 3, c(0), c(3));
        assert_eq!(open.pop_min().unwrap().state, StateId(2));
    }

    #[test]
    fn decrease_key_replaces() {
        let mut open = OpenList::new(TieBreak::LeastH);
        open.push(StateId(1), 7, c(0), c(7));
        open.push(StateId(1), 5, c(0), c(5));
        assert_eq!(open.len(), 1);
        let e = open.pop_min().unwrap();
        assert_eq!((e.state, e.key), (StateId(1), 5));
        assert!(open.is_empty());
        assert!(open.min_f().is_none());
    }

    #[test]
    fn ties_go_to_least_h() {
        let mut open = OpenList::new(TieBreak::LeastH);
        open.push(StateId(1), 7, c(2), c(7));
        open.push(StateId(2), 7, c(1), c(7));
        assert_eq!(open.pop_min().unwrap().state, StateId(2));
    }

    #[test]
    fn fifo_tie_rule_ignores_h() {
        let mut open = OpenList::new(TieBreak::Fifo);
        open.push(StateId(1), 7, c(2), c(7));
        open.push(StateId(2), 7, c(1), c(7));
        assert_eq!(open.pop_min().unwrap().state, StateId(1));
    }

    #[test]
    fn min_f_tracks_unweighted_cost() {
        let mut open = OpenList::new(TieBreak::LeastH);
        open.push(StateId(1), 30, c(10), c(20));
        open.push(StateId(2), 25, c(2), c(23));
        assert_eq!(open.peek_min().unwrap().state, StateId(2));
        assert_eq!(open.min_f(), Some((c(20), StateId(1))));
        open.remove(StateId(1));
        assert_eq!(open.min_f(), Some((c(23), StateId(2))));
    }

    #[test]
    fn rekey_reorders() {
        let mut open = OpenList::new(TieBreak::LeastH);
        open.push(StateId(1), 10, c(5), c(8));
        open.push(StateId(2), 12, c(1), c(11));
        open.rekey(|e| e.f.value() as Key);
        assert_eq!(open.states_in_order(), vec![StateId(1), StateId(2)]);
        open.rekey(|e| 100 - e.f.value() as Key);
        assert_eq!(open.states_in_order(), vec![StateId(2), StateId(1)]);
        assert!(open.consistent());
    }

    #[derive(Debug, Clone)]
    enum Op {
        Push(u8, u16, u8),
        Pop,
        Remove(u8),
    }

    fn op() -> impl Strategy<Value = Op> {
        prop_oneof![
            3 => (0u8..20, 0u16..50, 0u8..10).prop_map(|(s, k, h)| Op::Push(s, k, h)),
            2 => Just(Op::Pop),
            1 => (0u8..20).prop_map(Op::Remove),
        ]
    }

    proptest! {
        // Pops between two consecutive pushes come out sorted by (key, h), and
        // each pop is the minimum of a naive model of the list contents.
        #[test]
        fn pop_order_matches_model(ops in proptest::collection::vec(op(), 1..200)) {
            let mut open = OpenList::new(TieBreak::LeastH);
            let mut model: HashMap<u8, (u16, u8, u64)> = HashMap::new();
            let mut seq = 0u64;
            let mut last: Option<(u16, u8)> = None;
            for op in ops {
                match op {
                    Op::Push(s, k, h) => {
                        open.push(StateId(s as u64), k as Key, c(h as u64), c(k as u64));
                        model.insert(s, (k, h, seq));
                        seq += 1;
                        last = None;
                    }
                    Op::Pop => {
                        let expect = model
                            .iter()
                            .min_by_key(|(_, &(k, h, q))| (k, h, q))
                            .map(|(&s, &v)| (s, v));
                        let got = open.pop_min();
                        match expect {
                            None => prop_assert!(got.is_none()),
                            Some((s, (k, h, _))) => {
                                let got = got.unwrap();
                                prop_assert_eq!(got.state, StateId(s as u64));
                                if let Some(prev) = last {
                                    prop_assert!(prev <= (k, h));
                                }
                                last = Some((k, h));
                                model.remove(&s);
                            }
                        }
                    }
                    Op::Remove(s) => {
                        let had = model.remove(&s).is_some();
                        prop_assert_eq!(open.remove(StateId(s as u64)).is_some(), had);
                    }
                }
                prop_assert_eq!(open.len(), model.len());
                prop_assert!(open.consistent());
                let model_min_f = model.values().map(|v| v.0).min();
                prop_assert_eq!(open.min_f().map(|(f, _)| f.value() as u16), model_min_f);
            }
        }
    }
}
