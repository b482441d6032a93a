//! Performance profiles: mean solution quality over time across instances,
//! one column per (algorithm, weight), plus mean effort per column.

use std::io::Write;

use anytime_search::Cost;
use clap::ValueEnum;

use crate::config::RunConfig;
use crate::error::BenchError;
use crate::instance::Instance;
use crate::run::{execute, RunReport};
use crate::trace::quality;

pub const PROFILE_VERSION: &str = "anytime-bench profile v1";
pub const EFFORT_VERSION: &str = "anytime-bench effort v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum TimeAxis {
    Expansions,
    WallTime,
}

impl TimeAxis {
    pub fn name(self) -> &'static str {
        match self {
            TimeAxis::Expansions => "expansions",
            TimeAxis::WallTime => "wall_time_s",
        }
    }
}

pub struct ProfileInstance {
    pub name: String,
    pub instance: Instance,
    pub fstar: Option<Cost>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffortRow {
    pub label: String,
    pub instances: usize,
    pub mean_stored: f64,
    pub mean_expansions: f64,
    pub mean_distinct: f64,
    pub mean_recursive_calls: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    pub axis: TimeAxis,
    pub times: Vec<f64>,
    pub labels: Vec<String>,
    /// `quality[column][bucket]`; `None` when no instance of the column has
    /// a known optimum.
    pub quality: Vec<Vec<Option<f64>>>,
    pub effort: Vec<EffortRow>,
    pub warnings: Vec<String>,
}

/// Quality after each improvement, as `(time, quality)`.
fn staircase(report: &RunReport, axis: TimeAxis, fstar: Cost) -> Vec<(f64, f64)> {
    let mut steps: Vec<(f64, f64)> = Vec::new();
    for r in &report.rows {
        let Some(f) = r.incumbent_cost else { continue };
        let t = match axis {
            TimeAxis::Expansions => r.expansions as f64,
            TimeAxis::WallTime => r.wall_time_s.unwrap_or(0.0),
        };
        let q = quality(f, fstar);
        if steps.last().is_none_or(|&(_, last)| q > last) {
            steps.push((t, q));
        }
    }
    steps
}

fn quality_at(steps: &[(f64, f64)], t: f64) -> f64 {
    let i = steps.partition_point(|&(s, _)| s <= t);
    if i == 0 {
        0.0
    } else {
        steps[i - 1].1
    }
}

fn run_all(configs: &[RunConfig], instances: &[ProfileInstance], jobs: usize) -> Result<Vec<Vec<RunReport>>, BenchError> {
    let tasks: Vec<(usize, usize)> = (0..configs.len())
        .flat_map(|c| (0..instances.len()).map(move |i| (c, i)))
        .collect();
    let jobs = jobs.clamp(1, tasks.len().max(1));
    let chunk = tasks.len().div_ceil(jobs).max(1);
    let results: Vec<Result<RunReport, BenchError>> = std::thread::scope(|s| {
        let handles: Vec<_> = tasks
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|&(c, i)| execute(&configs[c], &instances[i].instance, instances[i].fstar))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut grid: Vec<Vec<RunReport>> = (0..configs.len()).map(|_| Vec::new()).collect();
    for ((c, _), r) in tasks.into_iter().zip(results) {
        grid[c].push(r?);
    }
    Ok(grid)
}

/// Runs every configuration on every instance and aggregates the results.
/// `jobs` worker threads share the runs; each search stays single-threaded.
pub fn profile(configs: &[RunConfig], instances: &[ProfileInstance], axis: TimeAxis, jobs: usize) -> Result<Profile, BenchError> {
    if configs.is_empty() || instances.is_empty() {
        return Err(BenchError::Config("profile needs at least one configuration and one instance".into()));
    }
    if axis == TimeAxis::WallTime && configs.iter().any(|c| !c.wall_time) {
        return Err(BenchError::Config("a wall-time axis needs wall-time columns".into()));
    }
    let reports = run_all(configs, instances, jobs)?;
    let mut warnings: Vec<String> = instances
        .iter()
        .filter(|i| i.fstar.is_none())
        .map(|i| format!("no optimum known for {}; left out of quality means", i.name))
        .collect();

    let mut times: Vec<f64> = reports
        .iter()
        .flatten()
        .flat_map(|r| {
            r.rows.iter().map(|row| match axis {
                TimeAxis::Expansions => row.expansions as f64,
                TimeAxis::WallTime => row.wall_time_s.unwrap_or(0.0),
            })
        })
        .collect();
    times.sort_by(f64::total_cmp);
    times.dedup();

    let mut quality = Vec::new();
    let mut effort = Vec::new();
    for (config, runs) in configs.iter().zip(&reports) {
        let stairs: Vec<Vec<(f64, f64)>> = runs
            .iter()
            .zip(instances)
            .filter_map(|(r, i)| i.fstar.map(|f| staircase(r, axis, f)))
            .collect();
        quality.push(
            times
                .iter()
                .map(|&t| {
                    (!stairs.is_empty()).then(|| {
                        stairs.iter().map(|s| quality_at(s, t)).sum::<f64>() / stairs.len() as f64
                    })
                })
                .collect(),
        );
        for (r, i) in runs.iter().zip(instances) {
            if r.outcome.cost().is_none() {
                warnings.push(format!("{} found no solution on {}", config.label(), i.name));
            }
        }
        let n = runs.len() as f64;
        let mean = |f: &dyn Fn(&RunReport) -> u64| runs.iter().map(|r| f(r) as f64).sum::<f64>() / n;
        effort.push(EffortRow {
            label: config.label(),
            instances: runs.len(),
            mean_stored: mean(&|r| r.summary.stored),
            mean_expansions: mean(&|r| r.summary.expansions),
            mean_distinct: mean(&|r| r.summary.distinct),
            mean_recursive_calls: config
                .algorithm
                .is_rbfs_family()
                .then(|| mean(&|r| r.summary.recursive_calls.unwrap_or(0))),
        });
    }
    Ok(Profile {
        axis,
        times,
        labels: configs.iter().map(RunConfig::label).collect(),
        quality,
        effort,
        warnings,
    })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.6}")).unwrap_or_default()
}

impl Profile {
    pub fn write_quality<W: Write>(&self, out: W) -> Result<(), BenchError> {
        let mut out = out;
        writeln!(out, "# {PROFILE_VERSION} axis={}", self.axis.name())?;
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec![self.axis.name().to_string()];
        header.extend(self.labels.iter().cloned());
        w.write_record(&header)?;
        for (b, &t) in self.times.iter().enumerate() {
            let mut rec = vec![match self.axis {
                TimeAxis::Expansions => format!("{}", t as u64),
                TimeAxis::WallTime => format!("{t:.6}"),
            }];
            rec.extend(self.quality.iter().map(|col| fmt_opt(col[b])));
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_effort<W: Write>(&self, out: W) -> Result<(), BenchError> {
        let mut out = out;
        writeln!(out, "# {EFFORT_VERSION}")?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "column",
            "instances",
            "mean_stored",
            "mean_expansions",
            "mean_distinct",
            "mean_recursive_calls",
        ])?;
        for e in &self.effort {
            w.write_record([
                e.label.clone(),
                e.instances.to_string(),
                format!("{:.3}", e.mean_stored),
                format!("{:.3}", e.mean_expansions),
                format!("{:.3}", e.mean_distinct),
                e.mean_recursive_calls.map(|v| format!("{v:.3}")).unwrap_or_default(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn column(&self, label: &str) -> Option<&[Option<f64>]> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.quality[i].as_slice())
    }
}
