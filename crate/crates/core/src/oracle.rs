//! Exact reference solvers for tests.
//!
//! None of these use the Open list, node table or bounds machinery of the
//! searches they check. They are slow on purpose and refuse inputs above
//! their size caps with [`Error::ResourceLimit`].

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};

use crate::cost::Cost;
use crate::domains::graph::ExplicitGraph;
use crate::domains::scoring::ScoringScheme;
use crate::domains::tiles::TileState;
use crate::error::Error;
use crate::space::{SearchSpace, StateId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub optimal_cost: Cost,
    pub optimal_path: Vec<StateId>,
    /// States popped, paths enumerated or cells filled, depending on the
    /// oracle.
    pub explored: u64,
}

/// Dijkstra's algorithm over any search space, ignoring the heuristic.
/// Gives up after `max_states` distinct states.
pub fn uniform_cost<S: SearchSpace + ?Sized>(space: &S, max_states: usize) -> Result<OracleResult, Error> {
    let start = space.start();
    let mut dist: HashMap<StateId, (Cost, Option<StateId>)> = HashMap::new();
    let mut heap = BinaryHeap::new();
    dist.insert(start, (Cost::ZERO, None));
    heap.push(Reverse((Cost::ZERO, start)));
    let mut explored = 0;
    let mut buf = Vec::new();
    while let Some(Reverse((d, s))) = heap.pop() {
        if d > dist[&s].0 {
            continue;
        }
        explored += 1;
        if space.is_goal(s) {
            let mut path = vec![s];
            let mut cur = s;
            while let Some(p) = dist[&cur].1 {
                path.push(p);
                cur = p;
            }
            path.reverse();
            return Ok(OracleResult {
                optimal_cost: d,
                optimal_path: path,
                explored,
            });
        }
        buf.clear();
        space.successors(s, &mut buf);
        for &(t, c) in &buf {
            let nd = d + c;
            if dist.get(&t).is_none_or(|e| nd < e.0) {
                dist.insert(t, (nd, Some(s)));
                heap.push(Reverse((nd, t)));
            }
        }
        if dist.len() > max_states {
            return Err(Error::ResourceLimit(format!(
                "uniform-cost search passed {max_states} states"
            )));
        }
    }
    Err(Error::NoSolution)
}

/// Minimum over every simple path from the start to a goal, by depth-first
/// enumeration. Paths longer than `max_len` edges are not followed.
pub fn enumerate_paths(graph: &ExplicitGraph, max_len: usize) -> Result<OracleResult, Error> {
    if graph.vertex_count() > 10 {
        return Err(Error::ResourceLimit(format!(
            "path enumeration is capped at 10 vertices, graph has {}",
            graph.vertex_count()
        )));
    }
    struct Walk<'g> {
        graph: &'g ExplicitGraph,
        max_len: usize,
        on_path: Vec<bool>,
        path: Vec<u32>,
        best: Option<(Cost, Vec<u32>)>,
        explored: u64,
    }
    impl Walk<'_> {
        fn go(&mut self, v: u32, cost: u64) {
            if self.graph.is_goal_vertex(v) {
                self.explored += 1;
                if self.best.as_ref().is_none_or(|b| Cost::new(cost) < b.0) {
                    self.best = Some((Cost::new(cost), self.path.clone()));
                }
            }
            if self.path.len() > self.max_len {
                return;
            }
            for &(w, c) in self.graph.out_edges(v) {
                if self.on_path[w as usize] {
                    continue;
                }
                self.on_path[w as usize] = true;
                self.path.push(w);
                self.go(w, cost + c.value());
                self.path.pop();
                self.on_path[w as usize] = false;
            }
        }
    }
    let s = graph.start_vertex();
    let mut walk = Walk {
        graph,
        max_len,
        on_path: vec![false; graph.vertex_count()],
        path: vec![s],
        best: None,
        explored: 0,
    };
    walk.on_path[s as usize] = true;
    walk.go(s, 0);
    let explored = walk.explored;
    match walk.best {
        Some((cost, path)) => Ok(OracleResult {
            optimal_cost: cost,
            optimal_path: path.into_iter().map(|v| StateId(v as u64)).collect(),
            explored,
        }),
        None => Err(Error::NoSolution),
    }
}

const MAX_LATTICE: usize = 1_000_000;

/// Remaining sum-of-pairs cost from every lattice point of a 2- or
/// 3-sequence alignment, by full backward dynamic programming.
#[derive(Debug, Clone)]
pub struct AlignmentCostToGo {
    dims: Vec<usize>,
    cost: Vec<u64>,
}

impl AlignmentCostToGo {
    /// `seqs` hold residue indices into the scheme's alphabet.
    pub fn new(seqs: &[Vec<u8>], scheme: &ScoringScheme) -> Result<AlignmentCostToGo, Error> {
        if seqs.len() != 2 && seqs.len() != 3 {
            return Err(Error::Validation(
                "exact alignment handles 2 or 3 sequences".into(),
            ));
        }
        let dims: Vec<usize> = seqs.iter().map(|s| s.len() + 1).collect();
        let volume = dims
            .iter()
            .try_fold(1usize, |v, &d| v.checked_mul(d))
            .filter(|&v| v <= MAX_LATTICE)
            .ok_or_else(|| {
                Error::ResourceLimit(format!("lattice volume exceeds {MAX_LATTICE} cells"))
            })?;
        let n = seqs.len();
        let mut cost = vec![u64::MAX; volume];
        let gap = scheme.gap() as u64;
        // Column cost of advancing the sequences in `mask` from `pos`.
        let column = |pos: &[usize], mask: usize| -> u64 {
            let mut total = 0;
            for i in 0..n {
                for j in i + 1..n {
                    let (a, b) = (mask & (1 << i) != 0, mask & (1 << j) != 0);
                    if a && b {
                        total += scheme.substitution(seqs[i][pos[i]], seqs[j][pos[j]]) as u64;
                    } else if a || b {
                        total += gap;
                    }
                }
            }
            total
        };
        let this = AlignmentCostToGo { dims, cost: Vec::new() };
        let mut pos = vec![0usize; n];
        for idx in (0..volume).rev() {
            this.unflatten(idx, &mut pos);
            if pos.iter().zip(seqs).all(|(&p, s)| p == s.len()) {
                cost[idx] = 0;
                continue;
            }
            let mut best = u64::MAX;
            for mask in 1..(1usize << n) {
                if (0..n).any(|i| mask & (1 << i) != 0 && pos[i] == seqs[i].len()) {
                    continue;
                }
                let mut next = pos.clone();
                for (i, p) in next.iter_mut().enumerate() {
                    if mask & (1 << i) != 0 {
                        *p += 1;
                    }
                }
                let rest = cost[this.flatten(&next)];
                best = best.min(rest + column(&pos, mask));
            }
            cost[idx] = best;
        }
        Ok(AlignmentCostToGo { cost, ..this })
    }

    fn flatten(&self, pos: &[usize]) -> usize {
        pos.iter().zip(&self.dims).fold(0, |acc, (&p, &d)| acc * d + p)
    }

    fn unflatten(&self, mut idx: usize, pos: &mut [usize]) {
        for k in (0..self.dims.len()).rev() {
            pos[k] = idx % self.dims[k];
            idx /= self.dims[k];
        }
    }

    /// Exact remaining cost from lattice point `pos`.
    pub fn at(&self, pos: &[usize]) -> Cost {
        Cost::new(self.cost[self.flatten(pos)])
    }

    pub fn cells(&self) -> usize {
        self.cost.len()
    }
}

/// Optimal sum-of-pairs alignment cost of 2 or 3 sequences. The path lists
/// lattice points as mixed-radix indices `((p0·(L1+1)) + p1)·(L2+1) + p2`.
pub fn exact_alignment(seqs: &[Vec<u8>], scheme: &ScoringScheme) -> Result<OracleResult, Error> {
    let table = AlignmentCostToGo::new(seqs, scheme)?;
    let n = seqs.len();
    let gap = scheme.gap() as u64;
    let mut pos = vec![0usize; n];
    let mut path = vec![StateId(table.flatten(&pos) as u64)];
    while pos.iter().zip(seqs).any(|(&p, s)| p < s.len()) {
        let here = table.at(&pos).value();
        let mut moved = false;
        for mask in 1..(1usize << n) {
            if (0..n).any(|i| mask & (1 << i) != 0 && pos[i] == seqs[i].len()) {
                continue;
            }
            let mut c = 0;
            for i in 0..n {
                for j in i + 1..n {
                    let (a, b) = (mask & (1 << i) != 0, mask & (1 << j) != 0);
                    if a && b {
                        c += scheme.substitution(seqs[i][pos[i]], seqs[j][pos[j]]) as u64;
                    } else if a || b {
                        c += gap;
                    }
                }
            }
            let mut next = pos.clone();
            for (i, p) in next.iter_mut().enumerate() {
                if mask & (1 << i) != 0 {
                    *p += 1;
                }
            }
            if table.at(&next).value() + c == here {
                pos = next;
                moved = true;
                break;
            }
        }
        assert!(moved, "cost-to-go table is inconsistent");
        path.push(StateId(table.flatten(&pos) as u64));
    }
    Ok(OracleResult {
        optimal_cost: table.at(&vec![0; n]),
        optimal_path: path,
        explored: table.cells() as u64,
    })
}

/// Distance to the goal of every reachable 3×3 configuration, by
/// breadth-first search backward from the goal.
#[derive(Debug, Clone)]
pub struct EightPuzzleTable {
    dist: HashMap<u64, u8>,
}

impl EightPuzzleTable {
    pub fn build() -> EightPuzzleTable {
        // Own encoding: base-9 digits, cell 0 most significant.
        let goal: [u8; 9] = [0, 1, 2, 3, 4, 5, 6, 7, 8];
        let key = |b: &[u8; 9]| b.iter().fold(0u64, |k, &t| k * 9 + t as u64);
        let mut dist = HashMap::with_capacity(181_440);
        let mut queue = VecDeque::new();
        dist.insert(key(&goal), 0u8);
        queue.push_back(goal);
        while let Some(b) = queue.pop_front() {
            let d = dist[&key(&b)];
            let z = b.iter().position(|&t| t == 0).unwrap();
            let (r, c) = (z / 3, z % 3);
            let mut targets = Vec::with_capacity(4);
            if r > 0 {
                targets.push(z - 3);
            }
            if r < 2 {
                targets.push(z + 3);
            }
            if c > 0 {
                targets.push(z - 1);
            }
            if c < 2 {
                targets.push(z + 1);
            }
            for t in targets {
                let mut nb = b;
                nb.swap(z, t);
                let k = key(&nb);
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(k) {
                    e.insert(d + 1);
                    queue.push_back(nb);
                }
            }
        }
        EightPuzzleTable { dist }
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    /// Optimal solution length, or `None` for a 4×4 or unreachable state.
    pub fn distance(&self, state: &TileState) -> Option<Cost> {
        if state.width() != 3 {
            return None;
        }
        let k = state.tiles().iter().fold(0u64, |k, &t| k * 9 + t as u64);
        self.dist.get(&k).map(|&d| Cost::new(d as u64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::graph::load_graph;
    use crate::domains::scoring::residue_index;
    use crate::space::path_cost;

    fn idx(s: &str) -> Vec<u8> {
        s.bytes().map(|b| residue_index(b).unwrap()).collect()
    }

    const DIAMOND: &str = "4 4 0 1\n3\n0 0 0 0\n0 1 1\n0 2 3\n1 3 4\n2 3 1\n";

    #[test]
    fn start_is_goal() {
        let g = load_graph("1 0 0 1\n0\n0\n").unwrap();
        assert_eq!(uniform_cost(&g, 10).unwrap().optimal_cost, Cost::ZERO);
        assert_eq!(enumerate_paths(&g, 10).unwrap().optimal_cost, Cost::ZERO);
    }

    #[test]
    fn chain() {
        let g = load_graph("3 2 0 1\n2\n0 0 0\n0 1 2\n1 2 3\n").unwrap();
        let r = uniform_cost(&g, 10).unwrap();
        assert_eq!(r.optimal_cost, Cost::new(5));
        assert_eq!(path_cost(&g, &r.optimal_path), Some(Cost::new(5)));
    }

    #[test]
    fn diamond() {
        let g = load_graph(DIAMOND).unwrap();
        let r = enumerate_paths(&g, 10).unwrap();
        assert_eq!(r.optimal_cost, Cost::new(4));
        assert_eq!(r.explored, 2);
        assert_eq!(path_cost(&g, &r.optimal_path), Some(Cost::new(4)));
    }

    #[test]
    fn unreachable_goal() {
        let g = load_graph("3 1 0 1\n2\n0 0 0\n0 1 1\n").unwrap();
        assert!(matches!(enumerate_paths(&g, 10), Err(Error::NoSolution)));
        assert!(matches!(uniform_cost(&g, 10), Err(Error::NoSolution)));
    }

    #[test]
    fn alignment_edge_cases() {
        let s = ScoringScheme::pam250();
        let r = exact_alignment(&[vec![], idx("ACDEF")], &s).unwrap();
        assert_eq!(r.optimal_cost, Cost::new(40));
        // Self-substitution costs 17 - score; identical sequences align on
        // the diagonal when that beats two gaps (16).
        let a = idx("WC");
        let r = exact_alignment(&[a.clone(), a], &s).unwrap();
        let diag = s.substitution(a_of('W'), a_of('W')) + s.substitution(a_of('C'), a_of('C'));
        assert_eq!(r.optimal_cost, Cost::new(diag as u64));
    }

    fn a_of(c: char) -> u8 {
        residue_index(c as u8).unwrap()
    }

    #[test]
    fn alignment_volume_cap() {
        let long = vec![0u8; 200];
        let r = exact_alignment(&[long.clone(), long.clone(), long], &ScoringScheme::pam250());
        assert!(matches!(r, Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn eight_puzzle_table() {
        let t = EightPuzzleTable::build();
        assert_eq!(t.len(), 181_440);
        assert_eq!(t.distance(&TileState::goal(3)), Some(Cost::ZERO));
        let one = TileState::new(3, vec![1, 0, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        assert_eq!(t.distance(&one), Some(Cost::new(1)));
    }
}
