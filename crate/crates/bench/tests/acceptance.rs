//! Acceptance suite. Runs as a plain binary so that every criterion prints
//! one PASS/FAIL line regardless of output capture.

use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use anytime_bench::config::{Algorithm, RunConfig};
use anytime_bench::gen::{digraph, random_eight, sequences, tiles_walk};
use anytime_bench::instance::Instance;
use anytime_bench::{execute, lint, read_trace, RunReport};
use anytime_search::domains::msa::MsaState;
use anytime_search::domains::{load_fasta, MsaProblem, ScoringScheme, TilePuzzle};
use anytime_search::oracle::{enumerate_paths, exact_alignment, uniform_cost, AlignmentCostToGo, EightPuzzleTable};
use anytime_search::rbfs::{Rbfs, Variant};
use anytime_search::{
    anytime_rbfs_weighted, anytime_wastar, anytime_wrbfs, ara_star, astar, enhanced_astar,
    weighted_astar, Cost, Emission, EmissionKind, Recorder, SearchLimits, Sink,
    StateId, Status, Step, WeightSpec,
};

const SUITE_SIZE: u64 = 200;
const WEIGHTS: [(u64, u64); 4] = [(13, 10), (3, 2), (2, 1), (3, 1)];

fn w(p: u64, q: u64) -> WeightSpec {
    WeightSpec::new(p, q).unwrap()
}

fn tenth() -> Step {
    Step::new(1, 10).unwrap()
}

struct Case {
    name: String,
    instance: Instance,
    fstar: Cost,
}

/// The shared property suite: seeded random Eight Puzzles and digraphs with
/// oracle optima.
struct Suite {
    eights: Vec<Case>,
    graphs: Vec<Case>,
}

impl Suite {
    fn build(table: &EightPuzzleTable) -> Result<Suite, String> {
        let mut eights = Vec::new();
        for seed in 0..SUITE_SIZE {
            let s = random_eight(seed);
            let fstar = table.distance(&s).ok_or("table misses a solvable state")?;
            eights.push(Case {
                name: format!("eight-{seed}"),
                instance: Instance::Tiles(TilePuzzle::new(s)),
                fstar,
            });
        }
        let mut graphs = Vec::new();
        for seed in 0..SUITE_SIZE {
            let n = 4 + (seed as usize % 9);
            let g = digraph(n, 0.35, 10, 10_000 + seed).map_err(|e| e.to_string())?;
            let fstar = uniform_cost(&g, 1_000_000).map_err(|e| e.to_string())?.optimal_cost;
            graphs.push(Case {
                name: format!("graph-{seed}"),
                instance: Instance::Graph(g),
                fstar,
            });
        }
        Ok(Suite { eights, graphs })
    }

    fn cases(&self) -> impl Iterator<Item = &Case> {
        self.eights.iter().chain(&self.graphs)
    }
}

struct Trace {
    name: String,
    weight: WeightSpec,
    algorithm: Algorithm,
    fstar: Cost,
    report: RunReport,
    csv: String,
}

/// AWA* and ARA* (step 1/10) traces for every suite case and weight.
fn suite_traces(suite: &Suite) -> Result<Vec<Trace>, String> {
    let mut out = Vec::new();
    for case in suite.cases() {
        for &(p, q) in &WEIGHTS {
            for algorithm in [Algorithm::Awastar, Algorithm::AraStar] {
                let domain = case.instance.domain();
                let mut config = RunConfig::new(algorithm, w(p, q), domain, format!("{}.txt", case.name).into());
                config.wall_time = false;
                if algorithm == Algorithm::AraStar {
                    config.weight_step = Some(tenth());
                }
                let report = execute(&config, &case.instance, Some(case.fstar)).map_err(|e| e.to_string())?;
                let csv = report.to_csv();
                out.push(Trace {
                    name: case.name.clone(),
                    weight: w(p, q),
                    algorithm,
                    fstar: case.fstar,
                    report,
                    csv,
                });
            }
        }
    }
    Ok(out)
}

type Verdict = Result<String, String>;

fn fail_if(failures: Vec<String>, ok: String) -> Verdict {
    match failures.len() {
        0 => Ok(ok),
        n => {
            if std::env::var_os("ACCEPTANCE_VERBOSE").is_some() {
                for f in &failures {
                    eprintln!("  {f}");
                }
            }
            Err(format!("{n} failures; first: {}", failures[0]))
        }
    }
}

fn c1_convergence(suite: &Suite, traces: &[Trace]) -> Verdict {
    let mut bad = Vec::new();
    for case in &suite.graphs {
        let Instance::Graph(g) = &case.instance else { unreachable!() };
        if g.vertex_count() <= 10 {
            let e = enumerate_paths(g, 10).map_err(|e| e.to_string())?.optimal_cost;
            if e != case.fstar {
                bad.push(format!("{}: oracles disagree ({e} vs {})", case.name, case.fstar));
            }
        }
    }
    let mut runs = 0;
    for t in traces.iter().filter(|t| t.algorithm == Algorithm::Awastar) {
        runs += 1;
        let o = &t.report.outcome;
        let last = t.report.rows.last().ok_or("empty trace")?;
        if o.status != Status::Converged
            || o.cost() != Some(t.fstar)
            || last.lower_bound != last.upper_bound
            || o.bounds.lower != o.bounds.upper
        {
            bad.push(format!(
                "{} w={}: {:?} cost {:?}, f* {}, bounds {}..{}",
                t.name, t.weight, o.status, o.cost(), t.fstar, last.lower_bound, last.upper_bound
            ));
        }
    }
    fail_if(bad, format!("{runs} runs converged to the oracle optimum with lower = upper"))
}

fn c2_first_incumbent(suite: &Suite, traces: &[Trace]) -> Verdict {
    let mut bad = Vec::new();
    let mut checked = 0;
    for case in suite.cases() {
        for &(p, q) in &WEIGHTS {
            let c = weighted_astar(case.instance.space(), w(p, q), &SearchLimits::none()).cost();
            checked += 1;
            match c {
                Some(c) if w(p, q).within(c, case.fstar) => {}
                c => bad.push(format!("wastar {} w={p}/{q}: {c:?} vs f* {}", case.name, case.fstar)),
            }
        }
    }
    for t in traces {
        checked += 1;
        match t.report.outcome.trace.first() {
            Some(first) if t.weight.within(first.cost, t.fstar) => {}
            first => bad.push(format!(
                "{} {} w={}: first incumbent {:?} vs f* {}",
                t.algorithm,
                t.name,
                t.weight,
                first.map(|f| f.cost),
                t.fstar
            )),
        }
    }
    fail_if(bad, format!("{checked} first incumbents within w times optimal"))
}

fn c3_lint(traces: &[Trace]) -> Verdict {
    let mut bad = Vec::new();
    let mut rows = 0;
    for t in traces {
        let file = read_trace(t.csv.as_bytes(), &t.name).map_err(|e| e.to_string())?;
        rows += file.rows.len();
        for v in lint(&file, Some(t.fstar)).map_err(|e| e.to_string())? {
            bad.push(format!("{} {} w={}: {v}", t.algorithm, t.name, t.weight));
        }
    }
    fail_if(bad, format!("{} traces, {rows} rows lint clean", traces.len()))
}

fn c4_stored_and_expansions(table: &EightPuzzleTable) -> Verdict {
    let n = 500u64;
    let (mut a_st, mut a_ex, mut w_st, mut w_ex) = (0u64, 0u64, 0u64, 0u64);
    for seed in 0..n {
        let s = random_eight(50_000 + seed);
        let fstar = table.distance(&s);
        let p = TilePuzzle::new(s);
        let a = astar(&p, &SearchLimits::none());
        let aw = anytime_wastar(&p, w(13, 10), &SearchLimits::none(), &mut ());
        if a.cost() != fstar || aw.cost() != fstar {
            return Err(format!("seed {seed}: wrong cost"));
        }
        a_st += a.stats.stored;
        a_ex += a.stats.expansions;
        w_st += aw.stats.stored;
        w_ex += aw.stats.expansions;
    }
    let stored = w_st as f64 / a_st as f64;
    let expanded = w_ex as f64 / a_ex as f64;
    let detail = format!(
        "mean stored {:.1} vs A* {:.1} (x{stored:.3}, limit 1.05); mean expansions {:.1} vs {:.1} (x{expanded:.3}, limit 1.10)",
        w_st as f64 / n as f64,
        a_st as f64 / n as f64,
        w_ex as f64 / n as f64,
        a_ex as f64 / n as f64
    );
    if stored <= 1.05 && expanded <= 1.10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c5_rbfs_unit_weight(suite: &Suite) -> Verdict {
    let mut bad = Vec::new();
    for case in suite.eights.iter().take(50) {
        let space = case.instance.space();
        let a = Rbfs::new(space, Variant::Rbfs, WeightSpec::ONE).record_expansions(true).run(&mut ());
        let b = Rbfs::new(space, Variant::Wrbfs, WeightSpec::ONE).record_expansions(true).run(&mut ());
        if a.first_expansions() != b.first_expansions() {
            bad.push(case.name.clone());
        }
    }
    fail_if(bad, "50 identical first-expansion sequences".into())
}

fn strictly_decreasing(costs: &[Cost]) -> bool {
    costs.windows(2).all(|c| c[0] > c[1])
}

fn c6_anytime_wrbfs(suite: &Suite) -> Verdict {
    let mut cases: Vec<(String, TilePuzzle)> = Vec::new();
    for case in suite.eights.iter().take(100) {
        let Instance::Tiles(p) = &case.instance else { unreachable!() };
        cases.push((case.name.clone(), p.clone()));
    }
    for seed in 0..5 {
        let s = tiles_walk(4, 40, 70_000 + seed).map_err(|e| e.to_string())?;
        cases.push((format!("fifteen-{seed}"), TilePuzzle::new(s)));
    }
    let mut bad = Vec::new();
    let mut runs = 0;
    for (name, p) in &cases {
        let reference = astar(p, &SearchLimits::none()).cost();
        for (a, b) in [(13, 10), (3, 2), (2, 1)] {
            runs += 1;
            let o = anytime_wrbfs(p, w(a, b), &SearchLimits::none(), &mut ());
            if o.status != Status::Converged || o.cost() != reference || !strictly_decreasing(&o.trace.costs()) {
                bad.push(format!("{name} w={a}/{b}: {:?} vs {reference:?}", o.cost()));
            }
        }
    }
    fail_if(bad, format!("{runs} runs match the A* reference"))
}

fn c7_recursive_calls(suite: &Suite) -> Verdict {
    let (mut rw, mut wr) = (0u64, 0u64);
    for case in suite.eights.iter().take(100) {
        let space = case.instance.space();
        let a = anytime_rbfs_weighted(space, w(3, 2), &SearchLimits::none(), &mut ());
        let b = anytime_wrbfs(space, w(3, 2), &SearchLimits::none(), &mut ());
        if a.cost() != Some(case.fstar) || b.cost() != Some(case.fstar) {
            return Err(format!("{}: did not converge to the optimum", case.name));
        }
        rw += a.stats.recursive_calls;
        wr += b.stats.recursive_calls;
    }
    let detail = format!(
        "mean recursive calls: weighted-evaluation RBFS {:.1}, WRBFS {:.1}",
        rw as f64 / 100.0,
        wr as f64 / 100.0
    );
    if rw >= wr {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Checks the heuristic against the exact cost-to-go at every expansion.
struct AdmissibilityCheck<'a> {
    problem: &'a MsaProblem,
    exact: &'a AlignmentCostToGo,
    violations: u64,
    checked: u64,
}

impl Sink for AdmissibilityCheck<'_> {
    fn emit(&mut self, _: &Emission) {}

    fn on_expand(&mut self, state: StateId, _g: Cost, h: Cost) {
        let MsaState { pos } = self.problem.decode(state);
        self.checked += 1;
        if h > self.exact.at(&pos) {
            self.violations += 1;
        }
    }
}

fn c8_msa() -> Verdict {
    let scheme = ScoringScheme::pam250();
    let mut instances: Vec<(String, Vec<Vec<u8>>)> = Vec::new();
    for seed in 0..30 {
        let seqs = sequences(3, 8, 12, 80_000 + seed).map_err(|e| e.to_string())?;
        instances.push((format!("random-{seed}"), seqs.iter().map(|s| s.indices()).collect()));
    }
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/proteins.fasta");
    let text = fs::read_to_string(&path).map_err(|e| e.to_string())?;
    let proteins = load_fasta(&text).map_err(|e| e.to_string())?;
    if proteins.len() != 30 || proteins.iter().any(|s| s.residues.len() > 60) {
        return Err("protein fixture must hold 10 triples of at most 60 residues".into());
    }
    for triple in proteins.chunks(3) {
        let name = triple[0].name.split_whitespace().next().unwrap_or("?").to_string();
        instances.push((name, triple.iter().map(|s| s.indices()).collect()));
    }
    let mut bad = Vec::new();
    let mut expanded = 0;
    for (name, seqs) in &instances {
        let problem = MsaProblem::new(seqs.clone(), scheme.clone()).map_err(|e| e.to_string())?;
        let exact = AlignmentCostToGo::new(seqs, &scheme).map_err(|e| e.to_string())?;
        let oracle = exact_alignment(seqs, &scheme).map_err(|e| e.to_string())?.optimal_cost;
        let mut check = AdmissibilityCheck {
            problem: &problem,
            exact: &exact,
            violations: 0,
            checked: 0,
        };
        let o = anytime_wastar(&problem, w(100, 99), &SearchLimits::none(), &mut check);
        expanded += check.checked;
        if o.status != Status::Converged || o.cost() != Some(oracle) || check.violations > 0 {
            bad.push(format!(
                "{name}: {:?} vs oracle {oracle}, {} inadmissible expansions",
                o.cost(),
                check.violations
            ));
        }
    }
    fail_if(
        bad,
        format!("{} instances match the DP oracle; heuristic admissible at {expanded} expansions", instances.len()),
    )
}

fn c9_enhanced_astar(suite: &Suite) -> Verdict {
    let mut bad = Vec::new();
    for case in &suite.graphs {
        let space = case.instance.space();
        let first = weighted_astar(space, w(2, 1), &SearchLimits::none())
            .cost()
            .ok_or("WA* found no solution")?;
        let ea = enhanced_astar(space, first + Cost::new(1), &SearchLimits::none());
        let a = astar(space, &SearchLimits::none());
        if ea.cost() != Some(case.fstar) || ea.stats.stored > a.stats.stored {
            bad.push(format!(
                "{}: cost {:?} vs {}, stored {} vs A* {}",
                case.name,
                ea.cost(),
                case.fstar,
                ea.stats.stored,
                a.stats.stored
            ));
        }
    }
    fail_if(bad, format!("{} digraphs optimal with stored <= A*", suite.graphs.len()))
}

fn c10_ara(suite: &Suite) -> Verdict {
    let mut bad = Vec::new();
    for case in suite.cases() {
        let mut rec = Recorder::new();
        let o = ara_star(case.instance.space(), w(2, 1), tenth(), &SearchLimits::none(), &mut rec);
        if o.status != Status::Converged || o.cost() != Some(case.fstar) {
            bad.push(format!("{}: cost {:?} vs {}", case.name, o.cost(), case.fstar));
        }
        let f = case.fstar.value() as u128;
        for e in rec.emissions.iter().filter(|e| e.kind == EmissionKind::Improvement) {
            let (Some(cost), Some(r)) = (e.incumbent_cost, e.reported_ratio) else {
                bad.push(format!("{}: improvement without a bound", case.name));
                continue;
            };
            // reported >= cost / f*
            if r.numer() * f < cost.value() as u128 * r.denom() {
                bad.push(format!("{}: reported {r} below {cost}/{f}", case.name));
            }
        }
    }
    let (mut ara, mut awa) = (0u64, 0u64);
    for case in &suite.eights {
        let space = case.instance.space();
        ara += ara_star(space, w(3, 1), tenth(), &SearchLimits::none(), &mut ()).stats.distinct_expanded;
        awa += anytime_wastar(space, w(3, 1), &SearchLimits::none(), &mut ()).stats.distinct_expanded;
    }
    let n = suite.eights.len() as f64;
    let detail = format!(
        "optimal with sound reported bounds; w0=3 mean distinct expanded: ARA* {:.1}, AWA* {:.1}",
        ara as f64 / n,
        awa as f64 / n
    );
    if ara < awa {
        bad.push(detail.clone());
    }
    fail_if(bad, detail)
}

fn c11_determinism(table: &EightPuzzleTable, first: &[Trace]) -> Verdict {
    let suite = Suite::build(table)?;
    let second = suite_traces(&suite)?;
    if first.len() != second.len() {
        return Err("trace counts differ".into());
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut differing = Vec::new();
    for (i, (a, b)) in first.iter().zip(&second).enumerate() {
        let (pa, pb) = (dir.path().join(format!("{i}-a.csv")), dir.path().join(format!("{i}-b.csv")));
        fs::write(&pa, &a.csv).map_err(|e| e.to_string())?;
        fs::write(&pb, &b.csv).map_err(|e| e.to_string())?;
        if fs::read(&pa).map_err(|e| e.to_string())? != fs::read(&pb).map_err(|e| e.to_string())? {
            differing.push(format!("{} {} w={}", a.algorithm, a.name, a.weight));
        }
    }
    fail_if(differing, format!("{} trace CSVs byte-identical across runs", first.len()))
}

struct Outcome {
    id: u8,
    title: &'static str,
    verdict: Verdict,
    seconds: f64,
}

fn timed(id: u8, title: &'static str, f: impl FnOnce() -> Verdict) -> Outcome {
    let t = Instant::now();
    let verdict = f();
    Outcome {
        id,
        title,
        verdict,
        seconds: t.elapsed().as_secs_f64(),
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let table = EightPuzzleTable::build();
    let suite = match Suite::build(&table) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("could not build the property suite: {e}");
            return ExitCode::FAILURE;
        }
    };
    let traces = match suite_traces(&suite) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("could not run the property suite: {e}");
            return ExitCode::FAILURE;
        }
    };
    let (table, suite, traces) = (&table, &suite, &traces);
    let mut results: Vec<Outcome> = thread::scope(|s| {
        let jobs = vec![
            s.spawn(move || timed(1, "convergence to the oracle optimum", || c1_convergence(suite, traces))),
            s.spawn(move || timed(2, "first incumbent within w of optimal", || c2_first_incumbent(suite, traces))),
            s.spawn(move || timed(3, "trace bounds and ratio dominance", || c3_lint(traces))),
            s.spawn(move || timed(4, "stored and expanded versus A*", || c4_stored_and_expansions(table))),
            s.spawn(move || timed(5, "RBFS unit-weight equivalence", || c5_rbfs_unit_weight(suite))),
            s.spawn(move || timed(6, "anytime WRBFS optimality", || c6_anytime_wrbfs(suite))),
            s.spawn(move || timed(7, "recursive-call direction", || c7_recursive_calls(suite))),
            s.spawn(move || timed(8, "MSA self-consistency", c8_msa)),
            s.spawn(move || timed(9, "Enhanced A* contract", || c9_enhanced_astar(suite))),
            s.spawn(move || timed(10, "ARA* suite", || c10_ara(suite))),
            s.spawn(move || timed(11, "determinism", || c11_determinism(table, traces))),
        ];
        jobs.into_iter().map(|j| j.join().expect("criterion panicked")).collect()
    });
    results.sort_by_key(|r| r.id);
    let mut failed = 0;
    for r in &results {
        let (tag, detail) = match &r.verdict {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag}: {} ({:.1}s): {detail}", r.id, r.title, r.seconds);
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        results.len() - failed,
        results.len(),
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
