//! Explicit weighted digraphs with per-vertex heuristic labels.
//!
//! Text format (`#` starts a comment line):
//!
//! ```text
//! V E start goal_count
//! goal goal ...
//! h(0) h(1) ... h(V-1)
//! u v cost        (E lines)
//! ```
//!
//! Heuristic values may be `inf` for vertices that cannot reach a goal.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use crate::cost::Cost;
use crate::error::Error;
use crate::space::{SearchSpace, StateId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitGraph {
    adj: Vec<Vec<(u32, Cost)>>,
    edges: Vec<(u32, u32, Cost)>,
    start: u32,
    goals: Vec<u32>,
    is_goal: Vec<bool>,
    h: Vec<Cost>,
}

impl ExplicitGraph {
    /// Builds and validates a graph. Edge costs must be at least 1 and the
    /// heuristic must not exceed the true distance to the nearest goal.
    pub fn new(
        vertices: usize,
        edges: Vec<(u32, u32, Cost)>,
        start: u32,
        goals: Vec<u32>,
        h: Vec<Cost>,
    ) -> Result<ExplicitGraph, Error> {
        if vertices == 0 || vertices > u32::MAX as usize {
            return Err(Error::Validation("vertex count out of range".into()));
        }
        let in_range = |v: u32| (v as usize) < vertices;
        if !in_range(start) {
            return Err(Error::Validation(format!("start {start} is not a vertex")));
        }
        if h.len() != vertices {
            return Err(Error::Validation(format!(
                "expected {vertices} heuristic values, got {}",
                h.len()
            )));
        }
        let mut is_goal = vec![false; vertices];
        for &g in &goals {
            if !in_range(g) {
                return Err(Error::Validation(format!("goal {g} is not a vertex")));
            }
            is_goal[g as usize] = true;
        }
        let mut adj = vec![Vec::new(); vertices];
        for &(u, v, c) in &edges {
            if !in_range(u) || !in_range(v) {
                return Err(Error::Validation(format!("edge {u} -> {v} leaves the graph")));
            }
            if c < Cost::new(1) || c.is_infinite() {
                return Err(Error::Validation(format!(
                    "edge {u} -> {v} has cost {c}; costs must be finite and at least 1"
                )));
            }
            adj[u as usize].push((v, c));
        }
        for &g in &goals {
            if h[g as usize] != Cost::ZERO {
                return Err(Error::Validation(format!("heuristic of goal {g} is not 0")));
            }
        }
        let graph = ExplicitGraph {
            adj,
            edges,
            start,
            goals,
            is_goal,
            h,
        };
        let dist = graph.distances_to_goal();
        for (v, (&hv, &d)) in graph.h.iter().zip(&dist).enumerate() {
            if hv > d {
                return Err(Error::Validation(format!(
                    "heuristic is not admissible at vertex {v}: h = {hv} exceeds distance {d}"
                )));
            }
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> &[(u32, u32, Cost)] {
        &self.edges
    }

    pub fn out_edges(&self, v: u32) -> &[(u32, Cost)] {
        &self.adj[v as usize]
    }

    pub fn start_vertex(&self) -> u32 {
        self.start
    }

    pub fn goals(&self) -> &[u32] {
        &self.goals
    }

    pub fn is_goal_vertex(&self, v: u32) -> bool {
        self.is_goal[v as usize]
    }

    pub fn h(&self, v: u32) -> Cost {
        self.h[v as usize]
    }

    /// Shortest distance from every vertex to its nearest goal, by Dijkstra
    /// on the reversed graph.
    pub fn distances_to_goal(&self) -> Vec<Cost> {
        let n = self.adj.len();
        let mut rev: Vec<Vec<(u32, Cost)>> = vec![Vec::new(); n];
        for &(u, v, c) in &self.edges {
            rev[v as usize].push((u, c));
        }
        let mut dist = vec![Cost::INFINITY; n];
        let mut heap = BinaryHeap::new();
        for &g in &self.goals {
            dist[g as usize] = Cost::ZERO;
            heap.push(Reverse((Cost::ZERO, g)));
        }
        while let Some(Reverse((d, v))) = heap.pop() {
            if d > dist[v as usize] {
                continue;
            }
            for &(u, c) in &rev[v as usize] {
                let nd = d + c;
                if nd < dist[u as usize] {
                    dist[u as usize] = nd;
                    heap.push(Reverse((nd, u)));
                }
            }
        }
        dist
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(
            s,
            "{} {} {} {}",
            self.adj.len(),
            self.edges.len(),
            self.start,
            self.goals.len()
        )
        .unwrap();
        let goals: Vec<String> = self.goals.iter().map(u32::to_string).collect();
        writeln!(s, "{}", goals.join(" ")).unwrap();
        let h: Vec<String> = self.h.iter().map(Cost::to_string).collect();
        writeln!(s, "{}", h.join(" ")).unwrap();
        for (u, v, c) in &self.edges {
            writeln!(s, "{u} {v} {c}").unwrap();
        }
        s
    }
}

impl SearchSpace for ExplicitGraph {
    fn start(&self) -> StateId {
        StateId(self.start as u64)
    }

    fn is_goal(&self, state: StateId) -> bool {
        self.is_goal[state.0 as usize]
    }

    fn successors(&self, state: StateId, out: &mut Vec<(StateId, Cost)>) {
        out.extend(
            self.adj[state.0 as usize]
                .iter()
                .map(|&(v, c)| (StateId(v as u64), c)),
        );
    }

    fn heuristic(&self, state: StateId) -> Cost {
        self.h[state.0 as usize]
    }
}

fn tokens(line: &str) -> impl Iterator<Item = &str> {
    line.split_whitespace()
}

fn int<T: std::str::FromStr>(ln: usize, tok: &str, what: &str) -> Result<T, Error> {
    tok.parse()
        .map_err(|_| Error::parse(ln, format!("bad {what} {tok:?}")))
}

pub fn load_graph(text: &str) -> Result<ExplicitGraph, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty graph file"))?;
    let head: Vec<&str> = tokens(header).collect();
    if head.len() != 4 {
        return Err(Error::parse(ln, "header must be \"V E start goal_count\""));
    }
    let vertices: usize = int(ln, head[0], "vertex count")?;
    let edge_count: usize = int(ln, head[1], "edge count")?;
    let start: u32 = int(ln, head[2], "start vertex")?;
    let goal_count: usize = int(ln, head[3], "goal count")?;

    let mut goals = Vec::new();
    if goal_count > 0 {
        let (ln, l) = lines.next().ok_or_else(|| Error::parse(ln + 1, "missing goal line"))?;
        for tok in tokens(l) {
            goals.push(int::<u32>(ln, tok, "goal vertex")?);
        }
        if goals.len() != goal_count {
            return Err(Error::parse(
                ln,
                format!("expected {goal_count} goals, got {}", goals.len()),
            ));
        }
    }

    let (hln, hl) = lines
        .next()
        .ok_or_else(|| Error::parse(ln + 1, "missing heuristic line"))?;
    let mut h = Vec::new();
    for tok in tokens(hl) {
        if tok == "inf" {
            h.push(Cost::INFINITY);
        } else {
            let v: i64 = int(hln, tok, "heuristic value")?;
            if v < 0 {
                return Err(Error::Validation(format!(
                    "heuristic value {v} on line {hln} is negative"
                )));
            }
            h.push(Cost::new(v as u64));
        }
    }

    let mut edges = Vec::with_capacity(edge_count);
    let mut last = hln;
    for (ln, l) in lines.by_ref().take(edge_count) {
        last = ln;
        let t: Vec<&str> = tokens(l).collect();
        if t.len() != 3 {
            return Err(Error::parse(ln, "edge line must be \"u v cost\""));
        }
        let u: u32 = int(ln, t[0], "vertex")?;
        let v: u32 = int(ln, t[1], "vertex")?;
        let c: i64 = int(ln, t[2], "edge cost")?;
        if c < 0 {
            return Err(Error::Validation(format!(
                "edge {u} -> {v} on line {ln} has negative cost {c}"
            )));
        }
        edges.push((u, v, Cost::new(c as u64)));
    }
    if edges.len() != edge_count {
        return Err(Error::parse(
            last,
            format!("expected {edge_count} edges, got {}", edges.len()),
        ));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::parse(ln, "unexpected trailing data"));
    }
    ExplicitGraph::new(vertices, edges, start, goals, h)
}
