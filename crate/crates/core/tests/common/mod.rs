#![allow(dead_code)]

use anytime_search::domains::graph::ExplicitGraph;
use anytime_search::domains::tiles::{tile_successors, TileState};
use anytime_search::Cost;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random digraph on `n` vertices: a random start-to-goal path plus random
/// extra edges, with heuristic labels scaled down from true distances.
pub fn random_digraph(seed: u64, n: usize) -> ExplicitGraph {
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
        edges.push((w[0], w[1], Cost::new(r.gen_range(1..=10))));
    }
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u != v && r.gen_bool(0.35) {
                edges.push((u, v, Cost::new(r.gen_range(1..=10))));
            }
        }
    }
    let h = vec![Cost::ZERO; n];
    let flat = ExplicitGraph::new(n, edges.clone(), 0, vec![goal], h).unwrap();
    let h = flat
        .distances_to_goal()
        .into_iter()
        .map(|d| {
            if d.is_infinite() {
                Cost::INFINITY
            } else {
                let scale: f64 = r.gen_range(0.0..=1.0);
                Cost::new((d.value() as f64 * scale).floor() as u64)
            }
        })
        .collect();
    ExplicitGraph::new(n, edges, 0, vec![goal], h).unwrap()
}

/// Random solvable tile instance by a walk from the goal that never undoes
/// its previous move.
pub fn scramble(seed: u64, width: usize, walk: usize) -> TileState {
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
    s
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
