//! Multiple sequence alignment as a shortest path through an n-dimensional
//! lattice.
//!
//! A state holds one position per sequence. A move advances a nonempty
//! subset of the unfinished sequences by one residue; the others take a gap.
//! The move costs the sum over all sequence pairs of the column cost, so a
//! path's cost is the sum-of-pairs score of its alignment.

use crate::cost::Cost;
use crate::domains::fasta::Sequence;
use crate::domains::scoring::ScoringScheme;
use crate::error::Error;
use crate::space::{SearchSpace, StateId};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MsaState {
    pub pos: Vec<usize>,
}

/// Optimal pairwise alignment costs of all suffix pairs, one table per
/// sequence pair, filled by backward dynamic programming.
#[derive(Debug, Clone)]
pub struct PairwiseTables {
    n: usize,
    /// Indexed by pair `(i, j)` with `i < j`, in lexicographic order.
    tables: Vec<SuffixTable>,
}

#[derive(Debug, Clone)]
struct SuffixTable {
    cols: usize,
    cost: Vec<u64>,
}

impl SuffixTable {
    fn build(a: &[u8], b: &[u8], scheme: &ScoringScheme) -> SuffixTable {
        let (la, lb) = (a.len(), b.len());
        let cols = lb + 1;
        let gap = scheme.gap() as u64;
        let mut cost = vec![0u64; (la + 1) * cols];
        for i in (0..=la).rev() {
            for j in (0..=lb).rev() {
                if i == la && j == lb {
                    continue;
                }
                let mut best = u64::MAX;
                if i < la && j < lb {
                    best = cost[(i + 1) * cols + j + 1] + scheme.substitution(a[i], b[j]) as u64;
                }
                if i < la {
                    best = best.min(cost[(i + 1) * cols + j] + gap);
                }
                if j < lb {
                    best = best.min(cost[i * cols + j + 1] + gap);
                }
                cost[i * cols + j] = best;
            }
        }
        SuffixTable { cols, cost }
    }

    fn at(&self, i: usize, j: usize) -> u64 {
        self.cost[i * self.cols + j]
    }
}

impl PairwiseTables {
    pub fn new(seqs: &[Vec<u8>], scheme: &ScoringScheme) -> PairwiseTables {
        let n = seqs.len();
        let mut tables = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                tables.push(SuffixTable::build(&seqs[i], &seqs[j], scheme));
            }
        }
        PairwiseTables { n, tables }
    }
}

/// Sum over sequence pairs of the optimal pairwise cost of the remaining
/// suffixes.
pub fn pairwise_heuristic(state: &MsaState, tables: &PairwiseTables) -> Cost {
    let mut total = 0;
    let mut k = 0;
    for i in 0..tables.n {
        for j in i + 1..tables.n {
            total += tables.tables[k].at(state.pos[i], state.pos[j]);
            k += 1;
        }
    }
    Cost::new(total)
}

/// An alignment instance.
#[derive(Debug, Clone)]
pub struct MsaProblem {
    seqs: Vec<Vec<u8>>,
    scheme: ScoringScheme,
    tables: PairwiseTables,
    bits: u32,
    goal: StateId,
}

impl MsaProblem {
    /// `seqs` hold residue indices into the scheme's alphabet.
    pub fn new(seqs: Vec<Vec<u8>>, scheme: ScoringScheme) -> Result<MsaProblem, Error> {
        if seqs.len() < 2 {
            return Err(Error::Validation("alignment needs at least two sequences".into()));
        }
        if seqs.iter().flatten().any(|&r| r >= 20) {
            return Err(Error::Validation("residue index out of range".into()));
        }
        let longest = seqs.iter().map(Vec::len).max().unwrap_or(0);
        let bits = usize::BITS - longest.leading_zeros();
        let bits = bits.max(1);
        if bits as usize * seqs.len() > 64 {
            return Err(Error::Validation(format!(
                "{} sequences of length up to {longest} do not fit a 64-bit state",
                seqs.len()
            )));
        }
        let tables = PairwiseTables::new(&seqs, &scheme);
        let mut p = MsaProblem {
            seqs,
            scheme,
            tables,
            bits,
            goal: StateId(0),
        };
        let end = MsaState {
            pos: p.seqs.iter().map(Vec::len).collect(),
        };
        p.goal = p.encode(&end);
        Ok(p)
    }

    pub fn from_sequences(seqs: &[Sequence], scheme: ScoringScheme) -> Result<MsaProblem, Error> {
        MsaProblem::new(seqs.iter().map(Sequence::indices).collect(), scheme)
    }

    pub fn sequences(&self) -> &[Vec<u8>] {
        &self.seqs
    }

    pub fn scheme(&self) -> &ScoringScheme {
        &self.scheme
    }

    pub fn tables(&self) -> &PairwiseTables {
        &self.tables
    }

    pub fn encode(&self, s: &MsaState) -> StateId {
        let mut v = 0u64;
        for (i, &p) in s.pos.iter().enumerate() {
            v |= (p as u64) << (i as u32 * self.bits);
        }
        StateId(v)
    }

    pub fn decode(&self, id: StateId) -> MsaState {
        let mask = (1u64 << self.bits) - 1;
        MsaState {
            pos: (0..self.seqs.len())
                .map(|i| ((id.0 >> (i as u32 * self.bits)) & mask) as usize)
                .collect(),
        }
    }

    pub fn is_goal_state(&self, s: &MsaState) -> bool {
        s.pos.iter().zip(&self.seqs).all(|(&p, q)| p == q.len())
    }

    /// Cost of the column that advances exactly the sequences in `mask`.
    pub fn column_cost(&self, s: &MsaState, mask: u64) -> Cost {
        let n = self.seqs.len();
        let mut total = 0u64;
        for i in 0..n {
            let ai = mask >> i & 1 == 1;
            for j in i + 1..n {
                let aj = mask >> j & 1 == 1;
                total += match (ai, aj) {
                    (true, true) => self
                        .scheme
                        .substitution(self.seqs[i][s.pos[i]], self.seqs[j][s.pos[j]])
                        as u64,
                    (true, false) | (false, true) => self.scheme.gap() as u64,
                    (false, false) => 0,
                };
            }
        }
        Cost::new(total)
    }
}

/// One successor per nonempty subset of the unfinished sequences, in
/// increasing bitmask order.
pub fn msa_successors(problem: &MsaProblem, state: &MsaState) -> Vec<(MsaState, Cost)> {
    let open: u64 = state
        .pos
        .iter()
        .zip(&problem.seqs)
        .enumerate()
        .filter(|(_, (&p, q))| p < q.len())
        .fold(0, |m, (i, _)| m | 1 << i);
    let n = problem.seqs.len();
    let mut out = Vec::new();
    for mask in 1u64..(1 << n) {
        if mask & !open != 0 {
            continue;
        }
        let cost = problem.column_cost(state, mask);
        let mut next = state.clone();
        for (i, p) in next.pos.iter_mut().enumerate() {
            if mask >> i & 1 == 1 {
                *p += 1;
            }
        }
        out.push((next, cost));
    }
    out
}

impl SearchSpace for MsaProblem {
    fn start(&self) -> StateId {
        StateId(0)
    }

    fn is_goal(&self, state: StateId) -> bool {
        state == self.goal
    }

    fn successors(&self, state: StateId, out: &mut Vec<(StateId, Cost)>) {
        let s = self.decode(state);
        for (t, c) in msa_successors(self, &s) {
            out.push((self.encode(&t), c));
        }
    }

    fn heuristic(&self, state: StateId) -> Cost {
        pairwise_heuristic(&self.decode(state), &self.tables)
    }
}

/// Alignment rows induced by a lattice path: residue indices, `None` for
/// gaps.
pub fn alignment_from_path(problem: &MsaProblem, path: &[MsaState]) -> Vec<Vec<Option<u8>>> {
    let n = problem.seqs.len();
    let mut rows = vec![Vec::new(); n];
    for step in path.windows(2) {
        for (i, row) in rows.iter_mut().enumerate() {
            if step[1].pos[i] > step[0].pos[i] {
                row.push(Some(problem.seqs[i][step[0].pos[i]]));
            } else {
                row.push(None);
            }
        }
    }
    rows
}

/// Sum-of-pairs cost of an alignment given as gapped rows.
pub fn score_alignment(rows: &[Vec<Option<u8>>], scheme: &ScoringScheme) -> Cost {
    let mut total = 0u64;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            for (a, b) in rows[i].iter().zip(&rows[j]) {
                total += match (a, b) {
                    (Some(x), Some(y)) => scheme.substitution(*x, *y) as u64,
                    (Some(_), None) | (None, Some(_)) => scheme.gap() as u64,
                    (None, None) => 0,
                };
            }
        }
    }
    Cost::new(total)
}
