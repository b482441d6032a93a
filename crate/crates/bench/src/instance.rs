//! Loading instances and computing reference optima.

use std::fs;
use std::path::Path;

use anytime_search::domains::{load_fasta, load_graph, load_tiles, ExplicitGraph, MsaProblem, ScoringScheme, TilePuzzle};
use anytime_search::oracle::{exact_alignment, uniform_cost};
use anytime_search::{astar, Cost, SearchLimits, SearchSpace};

use crate::config::Domain;
use crate::error::BenchError;

/// Largest state count the uniform-cost oracle may touch.
pub const ORACLE_STATE_CAP: usize = 2_000_000;

pub enum Instance {
    Tiles(TilePuzzle),
    Msa(Box<MsaProblem>),
    Graph(ExplicitGraph),
}

impl Instance {
    pub fn space(&self) -> &dyn SearchSpace {
        match self {
            Instance::Tiles(p) => p,
            Instance::Msa(p) => p.as_ref(),
            Instance::Graph(g) => g,
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            Instance::Tiles(_) => Domain::Tiles,
            Instance::Msa(_) => Domain::Msa,
            Instance::Graph(_) => Domain::Graph,
        }
    }
}

fn instance_err(path: &Path, source: anytime_search::Error) -> BenchError {
    BenchError::Instance {
        path: path.display().to_string(),
        source,
    }
}

pub fn parse_instance(domain: Domain, text: &str, scheme: Option<ScoringScheme>) -> Result<Instance, anytime_search::Error> {
    Ok(match domain {
        Domain::Tiles => Instance::Tiles(TilePuzzle::new(load_tiles(text)?)),
        Domain::Graph => Instance::Graph(load_graph(text)?),
        Domain::Msa => {
            let seqs = load_fasta(text)?;
            Instance::Msa(Box::new(MsaProblem::from_sequences(
                &seqs,
                scheme.unwrap_or_else(ScoringScheme::pam250),
            )?))
        }
    })
}

pub fn load_instance(domain: Domain, path: &Path, scheme: Option<&Path>) -> Result<Instance, BenchError> {
    let scheme = match scheme {
        Some(p) => {
            let text = fs::read_to_string(p)?;
            Some(ScoringScheme::parse(&text).map_err(|e| instance_err(p, e))?)
        }
        None => None,
    };
    let text = fs::read_to_string(path)?;
    parse_instance(domain, &text, scheme).map_err(|e| instance_err(path, e))
}

/// Optimal cost by an independent oracle: exact DP for small alignments,
/// uniform-cost search for graphs and small puzzles, and A* with the
/// domain heuristic for anything larger.
pub fn oracle_fstar(instance: &Instance) -> Result<Option<Cost>, BenchError> {
    match instance {
        Instance::Msa(p) if p.sequences().len() <= 3 => {
            if let Ok(r) = exact_alignment(p.sequences(), p.scheme()) {
                return Ok(Some(r.optimal_cost));
            }
        }
        Instance::Graph(g) => {
            return match uniform_cost(g, ORACLE_STATE_CAP) {
                Ok(r) => Ok(Some(r.optimal_cost)),
                Err(anytime_search::Error::NoSolution) => Ok(None),
                Err(e) => Err(BenchError::Oracle(e.to_string())),
            };
        }
        Instance::Tiles(p) if p.width() <= 3 => {
            let r = uniform_cost(p, ORACLE_STATE_CAP).map_err(|e| BenchError::Oracle(e.to_string()))?;
            return Ok(Some(r.optimal_cost));
        }
        _ => {}
    }
    Ok(astar(instance.space(), &SearchLimits::none()).cost())
}

/// Reads `name cost` lines (or a single bare cost) and returns the cost for
/// `instance`, matched by file name or file stem.
pub fn fstar_from_file(table: &Path, instance: &Path) -> Result<Option<Cost>, BenchError> {
    let text = fs::read_to_string(table)?;
    let bad = |ln: usize, msg: &str| BenchError::Trace {
        path: table.display().to_string(),
        message: format!("line {ln}: {msg}"),
    };
    let file = instance.file_name().and_then(|s| s.to_str()).unwrap_or("");
    let stem = instance.file_stem().and_then(|s| s.to_str()).unwrap_or("");
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    for &(ln, l) in &lines {
        let parts: Vec<&str> = l.split_whitespace().collect();
        match parts.as_slice() {
            [cost] if lines.len() == 1 => {
                return cost.parse().map(|c| Some(Cost::new(c))).map_err(|_| bad(ln, "bad cost"));
            }
            [name, cost] if *name == file || *name == stem => {
                return cost.parse().map(|c| Some(Cost::new(c))).map_err(|_| bad(ln, "bad cost"));
            }
            [_, _] => {}
            _ => return Err(bad(ln, "expected \"name cost\"")),
        }
    }
    Ok(None)
}
