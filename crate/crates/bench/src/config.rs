//! Run configuration and its validation.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anytime_search::{SearchLimits, Step, WeightSpec};
use clap::ValueEnum;

use crate::error::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Algorithm {
    Astar,
    Wastar,
    Awastar,
    EaStar,
    AraStar,
    Rbfs,
    Wrbfs,
    AnytimeWrbfs,
    AnytimeRbfsWeighted,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::Astar,
        Algorithm::Wastar,
        Algorithm::Awastar,
        Algorithm::EaStar,
        Algorithm::AraStar,
        Algorithm::Rbfs,
        Algorithm::Wrbfs,
        Algorithm::AnytimeWrbfs,
        Algorithm::AnytimeRbfsWeighted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Astar => "astar",
            Algorithm::Wastar => "wastar",
            Algorithm::Awastar => "awastar",
            Algorithm::EaStar => "ea_star",
            Algorithm::AraStar => "ara_star",
            Algorithm::Rbfs => "rbfs",
            Algorithm::Wrbfs => "wrbfs",
            Algorithm::AnytimeWrbfs => "anytime_wrbfs",
            Algorithm::AnytimeRbfsWeighted => "anytime_rbfs_weighted",
        }
    }

    pub fn is_rbfs_family(self) -> bool {
        matches!(
            self,
            Algorithm::Rbfs
                | Algorithm::Wrbfs
                | Algorithm::AnytimeWrbfs
                | Algorithm::AnytimeRbfsWeighted
        )
    }

    /// Whether the weight changes what the algorithm does.
    pub fn uses_weight(self) -> bool {
        self != Algorithm::Astar
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Algorithm, BenchError> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| BenchError::Config(format!("unknown algorithm {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
pub enum Domain {
    Tiles,
    Msa,
    Graph,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Domain::Tiles => "tiles",
            Domain::Msa => "msa",
            Domain::Graph => "graph",
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Default ARA* weight decrement when none is given.
pub const DEFAULT_STEP: (u64, u64) = (1, 10);

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub algorithm: Algorithm,
    pub weight: WeightSpec,
    pub weight_step: Option<Step>,
    pub domain: Domain,
    pub instance: PathBuf,
    /// Substitution matrix file for MSA; PAM-250 when absent.
    pub scheme: Option<PathBuf>,
    pub limits: SearchLimits,
    pub seed: u64,
    pub out: Option<PathBuf>,
    /// Fill the wall-time column. Off for byte-reproducible traces.
    pub wall_time: bool,
}

impl RunConfig {
    pub fn new(algorithm: Algorithm, weight: WeightSpec, domain: Domain, instance: PathBuf) -> RunConfig {
        RunConfig {
            algorithm,
            weight,
            weight_step: None,
            domain,
            instance,
            scheme: None,
            limits: SearchLimits::none(),
            seed: 0,
            out: None,
            wall_time: true,
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        if self.weight_step.is_some() && self.algorithm != Algorithm::AraStar {
            return Err(BenchError::Config(format!(
                "--weight-step applies only to ara_star, not {}",
                self.algorithm
            )));
        }
        if self.algorithm == Algorithm::Astar && !self.weight.is_one() {
            return Err(BenchError::Config(format!(
                "astar runs with weight 1, got {}",
                self.weight
            )));
        }
        if self.algorithm.is_rbfs_family() && self.domain == Domain::Msa {
            return Err(BenchError::Config(
                "the RBFS family is not run on msa instances".into(),
            ));
        }
        if self.scheme.is_some() && self.domain != Domain::Msa {
            return Err(BenchError::Config("--scheme applies only to msa".into()));
        }
        Ok(())
    }

    pub fn step(&self) -> Step {
        self.weight_step
            .unwrap_or_else(|| Step::new(DEFAULT_STEP.0, DEFAULT_STEP.1).unwrap())
    }

    /// `algorithm@weight`, used as a profile column name.
    pub fn label(&self) -> String {
        if self.algorithm.uses_weight() {
            format!("{}@{}", self.algorithm, self.weight)
        } else {
            self.algorithm.to_string()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(a: Algorithm) -> RunConfig {
        RunConfig::new(a, WeightSpec::ONE, Domain::Tiles, PathBuf::from("x"))
    }

    #[test]
    fn step_only_with_ara() {
        let mut c = cfg(Algorithm::Astar);
        c.weight_step = Some("1/10".parse().unwrap());
        assert!(matches!(c.validate(), Err(BenchError::Config(_))));
        c.algorithm = Algorithm::AraStar;
        assert!(c.validate().is_ok());
    }

    #[test]
    fn rbfs_rejected_on_msa() {
        let mut c = cfg(Algorithm::AnytimeWrbfs);
        c.domain = Domain::Msa;
        assert!(c.validate().is_err());
    }

    #[test]
    fn names_roundtrip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
            assert_eq!(a.to_possible_value().unwrap().get_name(), a.name());
        }
    }

    #[test]
    fn labels() {
        let mut c = cfg(Algorithm::Awastar);
        c.weight = "13/10".parse().unwrap();
        assert_eq!(c.label(), "awastar@13/10");
        assert_eq!(cfg(Algorithm::Astar).label(), "astar");
    }
}
