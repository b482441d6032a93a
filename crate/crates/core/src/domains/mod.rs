//! Bundled search domains.

pub mod fasta;
pub mod graph;
pub mod msa;
pub mod scoring;
pub mod tiles;

pub use fasta::{load_fasta, Sequence};
pub use graph::{load_graph, ExplicitGraph};
pub use msa::{msa_successors, pairwise_heuristic, MsaProblem, MsaState, PairwiseTables};
pub use scoring::ScoringScheme;
pub use tiles::{load_tiles, manhattan_h, tile_successors, TilePuzzle, TileState};
