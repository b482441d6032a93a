use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anytime_bench::config::{Algorithm, Domain, RunConfig};
use anytime_bench::instance::{fstar_from_file, load_instance, oracle_fstar, Instance};
use anytime_bench::profile::{profile, ProfileInstance, TimeAxis};
use anytime_bench::trace::write_trace;
use anytime_bench::{gen, lint, read_trace, BenchError};
use anytime_search::{Cost, SearchLimits, Step, WeightSpec};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "anytime-bench", version, about = "Run and profile anytime heuristic searches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on one instance and write its trace CSV.
    Run(RunArgs),
    /// Mean quality over time and mean effort across instances.
    Profile(ProfileArgs),
    /// Write a seeded random instance.
    Gen(GenArgs),
    /// Check trace CSVs against the bound invariants.
    Lint(LintArgs),
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long)]
    max_expansions: Option<u64>,
    #[arg(long)]
    max_stored: Option<u64>,
    #[arg(long)]
    max_seconds: Option<f64>,
}

impl LimitArgs {
    fn limits(&self) -> Result<SearchLimits, BenchError> {
        let max_wall_time = match self.max_seconds {
            Some(s) if !(s.is_finite() && s >= 0.0) => {
                return Err(BenchError::Config(format!("--max-seconds {s} is not a duration")))
            }
            s => s.map(Duration::from_secs_f64),
        };
        Ok(SearchLimits {
            max_expansions: self.max_expansions,
            max_stored: self.max_stored,
            max_wall_time,
        })
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    algorithm: Algorithm,
    #[arg(long, value_name = "P/Q", default_value = "1")]
    weight: WeightSpec,
    #[arg(long, value_name = "P/Q")]
    weight_step: Option<Step>,
    #[arg(long, value_enum)]
    domain: Domain,
    #[arg(long, value_name = "PATH")]
    instance: PathBuf,
    /// `oracle`, or a file of `name cost` lines.
    #[arg(long, value_name = "oracle|FILE")]
    fstar: Option<String>,
    /// Substitution matrix for msa (PAM-250 by default).
    #[arg(long, value_name = "PATH")]
    scheme: Option<PathBuf>,
    #[command(flatten)]
    limits: LimitArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trace CSV destination; standard output when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Leave wall-time columns empty so traces are byte-reproducible.
    #[arg(long)]
    no_wall_time: bool,
}

#[derive(Args)]
struct ProfileArgs {
    #[arg(long, value_enum, required = true)]
    algorithm: Vec<Algorithm>,
    #[arg(long, value_name = "P/Q", default_value = "1")]
    weight: Vec<WeightSpec>,
    #[arg(long, value_name = "P/Q")]
    weight_step: Option<Step>,
    #[arg(long, value_enum)]
    domain: Domain,
    #[arg(long, value_name = "PATH", required = true)]
    instance: Vec<PathBuf>,
    #[arg(long, value_name = "oracle|FILE")]
    fstar: Option<String>,
    #[arg(long, value_name = "PATH")]
    scheme: Option<PathBuf>,
    #[command(flatten)]
    limits: LimitArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "expansions")]
    axis: TimeAxis,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Quality profile destination; standard output when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Mean stored and expanded counts per column.
    #[arg(long, value_name = "PATH")]
    effort_out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    domain: Domain,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Tiles: board width.
    #[arg(long, default_value_t = 3)]
    width: usize,
    /// Tiles: random-walk length from the goal.
    #[arg(long, default_value_t = 30)]
    walk: usize,
    /// Graph: vertex count.
    #[arg(long, default_value_t = 10)]
    vertices: usize,
    /// Graph: probability of each extra edge.
    #[arg(long, default_value_t = 0.35)]
    density: f64,
    /// Graph: largest edge cost.
    #[arg(long, default_value_t = 10)]
    max_cost: u64,
    /// Msa: number of sequences.
    #[arg(long, default_value_t = 3)]
    count: usize,
    #[arg(long, default_value_t = 8)]
    min_len: usize,
    #[arg(long, default_value_t = 12)]
    max_len: usize,
}

#[derive(Args)]
struct LintArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Known optimum; overrides the one in each trace header.
    #[arg(long)]
    fstar: Option<u64>,
}

fn write_to<F>(out: Option<&Path>, f: F) -> Result<(), BenchError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), BenchError>,
{
    match out {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            f(&mut w)?;
        }
    }
    Ok(())
}

fn resolve_fstar(spec: Option<&str>, instance: &Instance, path: &Path) -> Result<Option<Cost>, BenchError> {
    match spec {
        None => Ok(None),
        Some("oracle") => oracle_fstar(instance),
        Some(file) => fstar_from_file(Path::new(file), path),
    }
}

fn cmd_run(a: RunArgs) -> Result<i32, BenchError> {
    let mut config = RunConfig::new(a.algorithm, a.weight, a.domain, a.instance);
    config.weight_step = a.weight_step;
    config.scheme = a.scheme;
    config.limits = a.limits.limits()?;
    config.seed = a.seed;
    config.out = a.out;
    config.wall_time = !a.no_wall_time;
    config.validate()?;
    let instance = load_instance(config.domain, &config.instance, config.scheme.as_deref())?;
    let fstar = resolve_fstar(a.fstar.as_deref(), &instance, &config.instance)?;
    let report = anytime_bench::execute(&config, &instance, fstar)?;
    write_to(config.out.as_deref(), |w| {
        write_trace(w, &report.meta, &report.rows, &report.summary)
    })?;
    eprintln!("summary {}", report.summary.line());
    Ok(report.exit_code())
}

fn cmd_profile(a: ProfileArgs) -> Result<i32, BenchError> {
    let limits = a.limits.limits()?;
    let mut configs: Vec<RunConfig> = Vec::new();
    for &alg in &a.algorithm {
        let weights = if alg.uses_weight() { a.weight.clone() } else { vec![WeightSpec::ONE] };
        for w in weights {
            let mut c = RunConfig::new(alg, w, a.domain, PathBuf::new());
            if alg == Algorithm::AraStar {
                c.weight_step = a.weight_step;
            }
            c.scheme = a.scheme.clone();
            c.limits = limits;
            c.seed = a.seed;
            c.wall_time = a.axis == TimeAxis::WallTime;
            c.validate()?;
            if !configs.iter().any(|o| o.label() == c.label()) {
                configs.push(c);
            }
        }
    }
    let mut instances = Vec::new();
    for path in &a.instance {
        let instance = load_instance(a.domain, path, a.scheme.as_deref())?;
        let fstar = resolve_fstar(a.fstar.as_deref(), &instance, path)?;
        instances.push(ProfileInstance {
            name: path.display().to_string(),
            instance,
            fstar,
        });
    }
    let p = profile(&configs, &instances, a.axis, a.jobs)?;
    for w in &p.warnings {
        eprintln!("warning: {w}");
    }
    write_to(a.out.as_deref(), |w| p.write_quality(w))?;
    if let Some(path) = &a.effort_out {
        write_to(Some(path), |w| p.write_effort(w))?;
    }
    Ok(0)
}

fn cmd_gen(a: GenArgs) -> Result<i32, BenchError> {
    let text = match a.domain {
        Domain::Tiles => gen::tiles_walk(a.width, a.walk, a.seed)?.to_string(),
        Domain::Graph => gen::digraph(a.vertices, a.density, a.max_cost, a.seed)?.to_text(),
        Domain::Msa => gen::sequences_text(&gen::sequences(a.count, a.min_len, a.max_len, a.seed)?),
    };
    write_to(a.out.as_deref(), |w| Ok(w.write_all(text.as_bytes())?))?;
    Ok(0)
}

fn cmd_lint(a: LintArgs) -> Result<i32, BenchError> {
    let mut failed = false;
    for path in &a.files {
        let name = path.display().to_string();
        let trace = read_trace(BufReader::new(File::open(path)?), &name)?;
        let violations = lint(&trace, a.fstar.map(Cost::new))?;
        if violations.is_empty() {
            println!("{name}: ok ({} rows)", trace.rows.len());
        } else {
            failed = true;
            for v in violations {
                println!("{name}: {v}");
            }
        }
    }
    Ok(if failed { 1 } else { 0 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Profile(a) => cmd_profile(a),
        Command::Gen(a) => cmd_gen(a),
        Command::Lint(a) => cmd_lint(a),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
