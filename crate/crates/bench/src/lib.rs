//! Benchmark harness for the anytime search library: run one algorithm on
//! one instance with a CSV trace, aggregate performance profiles, generate
//! seeded instances and lint trace files.

pub mod config;
pub mod error;
pub mod gen;
pub mod instance;
pub mod lint;
pub mod profile;
pub mod run;
pub mod trace;

pub use config::{Algorithm, Domain, RunConfig};
pub use error::BenchError;
pub use instance::{load_instance, oracle_fstar, Instance};
pub use lint::{lint, Violation};
pub use profile::{profile, Profile, ProfileInstance, TimeAxis};
pub use run::{execute, run, RunReport};
pub use trace::{read_trace, TraceFile, TraceRow};
