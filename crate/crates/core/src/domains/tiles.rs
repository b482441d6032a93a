//! Sliding-tile puzzles (3×3 and 4×4).
//!
//! The goal has the blank in the upper-left corner and tiles `1..n` in
//! row-major order after it. States pack into a `StateId` at four bits per
//! cell, cell 0 in the low nibble.

use std::fmt;

use crate::cost::Cost;
use crate::error::Error;
use crate::space::{SearchSpace, StateId};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TileState {
    width: usize,
    tiles: Vec<u8>,
}

impl TileState {
    /// Checks that `tiles` is a permutation of `0..width²` and that the
    /// puzzle can reach the goal.
    pub fn new(width: usize, tiles: Vec<u8>) -> Result<TileState, Error> {
        if width != 3 && width != 4 {
            return Err(Error::Validation(format!("width must be 3 or 4, got {width}")));
        }
        let n = width * width;
        if tiles.len() != n {
            return Err(Error::Validation(format!(
                "expected {n} tiles for width {width}, got {}",
                tiles.len()
            )));
        }
        let mut seen = vec![false; n];
        for &t in &tiles {
            let t = t as usize;
            if t >= n || seen[t] {
                return Err(Error::Validation(format!(
                    "tiles are not a permutation of 0..{n}"
                )));
            }
            seen[t] = true;
        }
        let s = TileState { width, tiles };
        if !s.is_solvable() {
            return Err(Error::Validation("puzzle is not solvable (parity)".into()));
        }
        Ok(s)
    }

    pub fn goal(width: usize) -> TileState {
        TileState {
            width,
            tiles: (0..(width * width) as u8).collect(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn tiles(&self) -> &[u8] {
        &self.tiles
    }

    pub fn blank(&self) -> usize {
        self.tiles.iter().position(|&t| t == 0).expect("blank present")
    }

    pub fn is_goal(&self) -> bool {
        self.tiles.iter().enumerate().all(|(i, &t)| t as usize == i)
    }

    /// A permutation is reachable iff its parity matches the parity of the
    /// blank's taxicab distance to its home cell.
    pub fn is_solvable(&self) -> bool {
        let mut visited = vec![false; self.tiles.len()];
        let mut transpositions = 0;
        for i in 0..self.tiles.len() {
            let mut j = i;
            let mut len = 0;
            while !visited[j] {
                visited[j] = true;
                j = self.tiles[j] as usize;
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        let b = self.blank();
        let blank_dist = b / self.width + b % self.width;
        transpositions % 2 == blank_dist % 2
    }

    pub fn pack(&self) -> StateId {
        let mut v = 0u64;
        for (i, &t) in self.tiles.iter().enumerate() {
            v |= (t as u64) << (4 * i);
        }
        StateId(v)
    }

    pub fn unpack(width: usize, id: StateId) -> TileState {
        let tiles = (0..width * width)
            .map(|i| ((id.0 >> (4 * i)) & 0xF) as u8)
            .collect();
        TileState { width, tiles }
    }

    /// Swaps the blank with the tile at `cell`.
    fn slide(&self, cell: usize) -> TileState {
        let mut tiles = self.tiles.clone();
        let b = self.blank();
        tiles.swap(b, cell);
        TileState {
            width: self.width,
            tiles,
        }
    }
}

impl fmt::Display for TileState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.width)?;
        let parts: Vec<String> = self.tiles.iter().map(|t| t.to_string()).collect();
        writeln!(f, "{}", parts.join(" "))
    }
}

/// Cells the blank can move to from `blank`, in the order up, left, right,
/// down.
fn neighbors(width: usize, blank: usize) -> impl Iterator<Item = usize> {
    let (r, c) = (blank / width, blank % width);
    let up = (r > 0).then(|| blank - width);
    let left = (c > 0).then(|| blank - 1);
    let right = (c + 1 < width).then(|| blank + 1);
    let down = (r + 1 < width).then(|| blank + width);
    [up, left, right, down].into_iter().flatten()
}

pub fn manhattan_h(state: &TileState) -> Cost {
    let w = state.width;
    let total: usize = state
        .tiles
        .iter()
        .enumerate()
        .filter(|(_, &t)| t != 0)
        .map(|(cell, &t)| {
            let t = t as usize;
            (cell / w).abs_diff(t / w) + (cell % w).abs_diff(t % w)
        })
        .sum();
    Cost::new(total as u64)
}

pub fn tile_successors(state: &TileState) -> Vec<(TileState, Cost)> {
    neighbors(state.width, state.blank())
        .map(|cell| (state.slide(cell), Cost::new(1)))
        .collect()
}

/// Parses a tile instance: the width on the first line, then the tiles in
/// row-major order (whitespace-separated, possibly over several lines).
pub fn load_tiles(text: &str) -> Result<TileState, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (wline, wtext) = lines.next().ok_or_else(|| Error::parse(1, "empty tile file"))?;
    let width: usize = wtext
        .parse()
        .map_err(|_| Error::parse(wline, format!("bad width {wtext:?}")))?;
    let mut tiles = Vec::new();
    for (ln, l) in lines {
        for tok in l.split_whitespace() {
            let t: u8 = tok
                .parse()
                .map_err(|_| Error::parse(ln, format!("bad tile {tok:?}")))?;
            tiles.push(t);
        }
    }
    TileState::new(width, tiles)
}

/// A sliding-tile instance as a search space, with the Manhattan heuristic.
#[derive(Debug, Clone)]
pub struct TilePuzzle {
    width: usize,
    start: TileState,
    goal: StateId,
    /// `dist[cell * n + tile]`: Manhattan distance of `tile` at `cell`.
    dist: Vec<u8>,
}

impl TilePuzzle {
    pub fn new(start: TileState) -> TilePuzzle {
        let w = start.width;
        let n = w * w;
        let mut dist = vec![0u8; n * n];
        for cell in 0..n {
            for tile in 1..n {
                dist[cell * n + tile] =
                    ((cell / w).abs_diff(tile / w) + (cell % w).abs_diff(tile % w)) as u8;
            }
        }
        TilePuzzle {
            width: w,
            start,
            goal: TileState::goal(w).pack(),
            dist,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn start_state(&self) -> &TileState {
        &self.start
    }

    pub fn decode(&self, id: StateId) -> TileState {
        TileState::unpack(self.width, id)
    }

    fn tile_at(id: u64, cell: usize) -> u64 {
        (id >> (4 * cell)) & 0xF
    }

    fn blank_of(&self, id: u64) -> usize {
        (0..self.width * self.width)
            .find(|&c| Self::tile_at(id, c) == 0)
            .expect("blank present")
    }
}

impl SearchSpace for TilePuzzle {
    fn start(&self) -> StateId {
        self.start.pack()
    }

    fn is_goal(&self, state: StateId) -> bool {
        state == self.goal
    }

    fn successors(&self, state: StateId, out: &mut Vec<(StateId, Cost)>) {
        let id = state.0;
        let b = self.blank_of(id);
        for cell in neighbors(self.width, b) {
            let t = Self::tile_at(id, cell);
            let next = (id & !(0xF << (4 * cell))) | (t << (4 * b));
            out.push((StateId(next), Cost::new(1)));
        }
    }

    fn heuristic(&self, state: StateId) -> Cost {
        let n = self.width * self.width;
        let total: u64 = (0..n)
            .map(|cell| self.dist[cell * n + Self::tile_at(state.0, cell) as usize] as u64)
            .sum();
        Cost::new(total)
    }
}
