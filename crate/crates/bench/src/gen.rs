//! Seeded instance generators.

use anytime_search::domains::fasta::{to_fasta, Sequence};
use anytime_search::domains::scoring::AMINO_ACIDS;
use anytime_search::domains::{tile_successors, ExplicitGraph, TileState};
use anytime_search::Cost;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::BenchError;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random walk of `walk` moves from the goal that never undoes the previous
/// move. Always solvable.
pub fn tiles_walk(width: usize, walk: usize, seed: u64) -> Result<TileState, BenchError> {
    if !(2..=4).contains(&width) {
        return Err(BenchError::Config(format!("tile width {width} not in 2..=4")));
    }
    let mut r = rng(seed);
    let mut s = TileState::goal(width);
    let mut prev: Option<TileState> = None;
    for _ in 0..walk {
        let succ: Vec<TileState> = tile_successors(&s)
            .into_iter()
            .map(|(t, _)| t)
            .filter(|t| Some(t) != prev.as_ref())
            .collect();
        let next = succ[r.gen_range(0..succ.len())].clone();
        prev = Some(std::mem::replace(&mut s, next));
    }
    Ok(s)
}

/// Uniformly random solvable 3×3 instance.
pub fn random_eight(seed: u64) -> TileState {
    let mut r = rng(seed);
    loop {
        let mut tiles: Vec<u8> = (0..9).collect();
        tiles.shuffle(&mut r);
        if let Ok(s) = TileState::new(3, tiles) {
            return s;
        }
    }
}

/// Random digraph on `n` vertices with start 0 and goal `n - 1`.
///
/// A random start-to-goal path guarantees solvability; every other ordered
/// pair gets an edge with probability `density`. Costs are uniform in
/// `1..=max_cost`. Heuristic labels are the true distances to the goal
/// scaled by one factor `k/100`, `k` uniform in `0..=100`, and rounded
/// down, which keeps them consistent.
pub fn digraph(n: usize, density: f64, max_cost: u64, seed: u64) -> Result<ExplicitGraph, BenchError> {
    if n < 2 {
        return Err(BenchError::Config("a digraph needs at least 2 vertices".into()));
    }
    if !(0.0..=1.0).contains(&density) || max_cost == 0 {
        return Err(BenchError::Config("density must be in [0, 1] and max cost positive".into()));
    }
    let mut r = rng(seed);
    let goal = (n - 1) as u32;
    let mut order: Vec<u32> = (1..goal).collect();
    order.shuffle(&mut r);
    let keep = r.gen_range(0..=order.len());
    let mut path = vec![0u32];
    path.extend(&order[..keep]);
    path.push(goal);
    let mut edges = Vec::new();
    for w in path.windows(2) {
        edges.push((w[0], w[1], Cost::new(r.gen_range(1..=max_cost))));
    }
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u != v && r.gen_bool(density) {
                edges.push((u, v, Cost::new(r.gen_range(1..=max_cost))));
            }
        }
    }
    let invalid = |e: anytime_search::Error| BenchError::Config(e.to_string());
    let flat = ExplicitGraph::new(n, edges.clone(), 0, vec![goal], vec![Cost::ZERO; n]).map_err(invalid)?;
    let k: u64 = r.gen_range(0..=100);
    let h = flat
        .distances_to_goal()
        .into_iter()
        .map(|d| if d.is_infinite() { d } else { Cost::new(d.value() * k / 100) })
        .collect();
    ExplicitGraph::new(n, edges, 0, vec![goal], h).map_err(invalid)
}

/// `count` random residue sequences with lengths in `min_len..=max_len`.
pub fn sequences(count: usize, min_len: usize, max_len: usize, seed: u64) -> Result<Vec<Sequence>, BenchError> {
    if count == 0 || min_len > max_len {
        return Err(BenchError::Config("need count >= 1 and min_len <= max_len".into()));
    }
    let mut r = rng(seed);
    Ok((0..count)
        .map(|i| {
            let len = r.gen_range(min_len..=max_len);
            Sequence {
                name: format!("seq{}", i + 1),
                residues: (0..len).map(|_| AMINO_ACIDS[r.gen_range(0..20)]).collect(),
            }
        })
        .collect())
}

pub fn sequences_text(seqs: &[Sequence]) -> String {
    to_fasta(seqs)
}
