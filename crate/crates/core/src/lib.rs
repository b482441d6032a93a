//! Anytime heuristic search.
//!
//! Weighted best-first searches that keep going after the first solution,
//! tightening an upper bound (the incumbent's cost) and a lower bound (the
//! least f-cost on the frontier) until they meet:
//!
//! * [`best_first`]: A*, Weighted A*, Anytime Weighted A*, Enhanced A* and
//!   ARA*.
//! * [`rbfs`]: linear-space Recursive Best-First Search with a weighted
//!   evaluation, WRBFS, and their anytime versions.
//! * [`domains`]: sliding-tile puzzles, multiple sequence alignment and
//!   explicit weighted digraphs.
//! * [`oracle`]: independent exact solvers used to check the searches.

pub mod best_first;
pub mod bounds;
pub mod cost;
pub mod domains;
pub mod error;
pub mod limits;
pub mod node;
pub mod open;
pub mod oracle;
pub mod rbfs;
pub mod space;
pub mod trace;
pub mod weight;

pub use best_first::{anytime_wastar, ara_star, astar, enhanced_astar, weighted_astar};
pub use bounds::{error_bound, BoundPair, ErrorBound};
pub use cost::{Cost, Ratio};
pub use error::Error;
pub use limits::{SearchLimits, SearchStats, Status};
pub use rbfs::{anytime_rbfs_weighted, anytime_wrbfs, rbfs_weighted, wrbfs};
pub use space::{SearchSpace, StateId};
pub use trace::{Emission, EmissionKind, Incumbent, IncumbentTrace, Recorder, SearchOutcome, Sink};
pub use weight::{Step, WeightSpec};
