//! Running one configuration on one instance.

use std::fs::File;
use std::io::BufWriter;

use anytime_search::rbfs::{Rbfs, Variant};
use anytime_search::{
    anytime_wastar, ara_star, enhanced_astar, weighted_astar, Cost, Emission, SearchOutcome,
    SearchSpace, Sink, Status,
};

use crate::config::{Algorithm, RunConfig};
use crate::error::BenchError;
use crate::instance::{load_instance, Instance};
use crate::trace::{write_trace, Meta, Summary, TraceRow};

/// Everything a run produced.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub rows: Vec<TraceRow>,
    pub summary: Summary,
    pub outcome: SearchOutcome,
    pub meta: Meta,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        exit_code(self.summary.status)
    }

    pub fn to_csv(&self) -> String {
        crate::trace::trace_to_string(&self.meta, &self.rows, &self.summary)
    }
}

pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Converged => 0,
        Status::Interrupted => 2,
        Status::NoSolution => 3,
    }
}

struct RowSink {
    rows: Vec<TraceRow>,
    fstar: Option<Cost>,
    wall_time: bool,
}

impl RowSink {
    /// Keeps `stored` as the peak so far; emissions report the current count.
    fn push(&mut self, mut row: TraceRow, seconds: f64) {
        if let Some(last) = self.rows.last() {
            row.stored = row.stored.max(last.stored);
        }
        if self.wall_time {
            row.wall_time_s = Some(seconds);
        }
        match self.rows.last_mut() {
            Some(last) if last.same_point(&row) => *last = row,
            _ => self.rows.push(row),
        }
    }
}

impl Sink for RowSink {
    fn emit(&mut self, e: &Emission) {
        let row = TraceRow::new(
            e.expansions,
            e.stored,
            e.incumbent_cost,
            e.bounds,
            e.reported_ratio,
            self.fstar,
        );
        self.push(row, e.elapsed.as_secs_f64());
    }
}

fn search(config: &RunConfig, space: &dyn SearchSpace, sink: &mut RowSink) -> SearchOutcome {
    let w = config.weight;
    let limits = &config.limits;
    let rbfs = |variant, sink: &mut RowSink| {
        Rbfs::new(space, variant, w)
            .limits(*limits)
            .run(sink)
            .outcome
    };
    match config.algorithm {
        Algorithm::Astar | Algorithm::Wastar => weighted_astar(space, w, limits),
        Algorithm::EaStar => {
            // The bound comes from a Weighted A* run at the configured weight.
            let first = weighted_astar(space, w, limits);
            match first.cost() {
                Some(c) => enhanced_astar(space, c + Cost::new(1), limits),
                None => first,
            }
        }
        Algorithm::Awastar => anytime_wastar(space, w, limits, sink),
        Algorithm::AraStar => ara_star(space, w, config.step(), limits, sink),
        Algorithm::Rbfs => rbfs(Variant::Rbfs, sink),
        Algorithm::Wrbfs => rbfs(Variant::Wrbfs, sink),
        Algorithm::AnytimeWrbfs => rbfs(Variant::AnytimeWrbfs, sink),
        Algorithm::AnytimeRbfsWeighted => rbfs(Variant::AnytimeRbfsWeighted, sink),
    }
}

pub fn meta(config: &RunConfig, fstar: Option<Cost>) -> Meta {
    let mut m = vec![
        ("algorithm".to_string(), config.algorithm.to_string()),
        ("weight".to_string(), config.weight.to_string()),
    ];
    if config.algorithm == Algorithm::AraStar {
        m.push(("step".into(), config.step().to_string()));
    }
    m.push(("domain".into(), config.domain.to_string()));
    m.push(("instance".into(), config.instance.display().to_string().replace(' ', "%20")));
    m.push(("seed".into(), config.seed.to_string()));
    if let Some(f) = fstar {
        m.push(("fstar".into(), f.to_string()));
    }
    m
}

/// Runs `config` on an already loaded instance.
pub fn execute(config: &RunConfig, instance: &Instance, fstar: Option<Cost>) -> Result<RunReport, BenchError> {
    config.validate()?;
    if instance.domain() != config.domain {
        return Err(BenchError::Config(format!(
            "instance is a {} instance, not {}",
            instance.domain(),
            config.domain
        )));
    }
    let mut sink = RowSink {
        rows: Vec::new(),
        fstar,
        wall_time: config.wall_time,
    };
    let outcome = search(config, instance.space(), &mut sink);
    let st = outcome.stats;
    let last = TraceRow::new(
        st.expansions,
        st.stored,
        outcome.cost(),
        outcome.bounds,
        outcome.bounds.reported_ratio(outcome.final_weight),
        fstar,
    );
    if sink.rows.last().is_none_or(|r| !r.same_point(&last)) {
        sink.push(last, outcome.elapsed.as_secs_f64());
    }
    let summary = Summary {
        status: outcome.status,
        cost: outcome.cost(),
        expansions: st.expansions,
        distinct: st.distinct_expanded,
        reexpansions: st.reexpansions,
        stored: st.stored,
        recursive_calls: config.algorithm.is_rbfs_family().then_some(st.recursive_calls),
        wall_time_s: config.wall_time.then_some(outcome.elapsed.as_secs_f64()),
    };
    Ok(RunReport {
        rows: sink.rows,
        summary,
        outcome,
        meta: meta(config, fstar),
    })
}

/// Loads the instance, runs, and writes the trace to `config.out` when set.
pub fn run(config: &RunConfig, fstar: Option<Cost>) -> Result<RunReport, BenchError> {
    config.validate()?;
    let instance = load_instance(config.domain, &config.instance, config.scheme.as_deref())?;
    let report = execute(config, &instance, fstar)?;
    if let Some(path) = &config.out {
        let f = BufWriter::new(File::create(path)?);
        write_trace(f, &report.meta, &report.rows, &report.summary)?;
    }
    Ok(report)
}
