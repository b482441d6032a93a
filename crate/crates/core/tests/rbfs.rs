mod common;

use anytime_search::domains::tiles::TilePuzzle;
use anytime_search::oracle::{uniform_cost, EightPuzzleTable};
use anytime_search::rbfs::{Rbfs, Variant};
use anytime_search::space::path_cost;
use anytime_search::{
    anytime_rbfs_weighted, anytime_wrbfs, rbfs_weighted, wrbfs, Cost, EmissionKind, Recorder,
    SearchLimits, Status, WeightSpec,
};
use common::{random_digraph, random_eight, scramble};
use proptest::prelude::*;

fn table() -> &'static EightPuzzleTable {
    static TABLE: std::sync::OnceLock<EightPuzzleTable> = std::sync::OnceLock::new();
    TABLE.get_or_init(EightPuzzleTable::build)
}

fn w(p: u64, q: u64) -> WeightSpec {
    WeightSpec::new(p, q).unwrap()
}

#[test]
fn unit_weight_variants_expand_identically() {
    for seed in 0..20 {
        let p = TilePuzzle::new(random_eight(seed));
        let a = Rbfs::new(&p, Variant::Rbfs, WeightSpec::ONE)
            .record_expansions(true)
            .run(&mut ());
        let b = Rbfs::new(&p, Variant::Wrbfs, WeightSpec::ONE)
            .record_expansions(true)
            .run(&mut ());
        assert_eq!(a.first_expansions(), b.first_expansions(), "seed {seed}");
        assert_eq!(a.outcome.cost(), b.outcome.cost());
    }
}

#[test]
fn unit_weight_rbfs_is_optimal() {
    let table = table();
    for seed in 0..20 {
        let s = random_eight(seed);
        let p = TilePuzzle::new(s.clone());
        let out = rbfs_weighted(&p, WeightSpec::ONE, &SearchLimits::none());
        assert_eq!(out.cost(), table.distance(&s), "seed {seed}");
        let inc = out.incumbent.unwrap();
        assert_eq!(path_cost(&p, &inc.path), Some(inc.cost));
    }
}

#[test]
fn weighted_rbfs_variants_are_bounded() {
    let table = table();
    for seed in 0..20 {
        let s = random_eight(seed);
        let fstar = table.distance(&s).unwrap();
        let p = TilePuzzle::new(s);
        for out in [
            rbfs_weighted(&p, w(3, 2), &SearchLimits::none()),
            wrbfs(&p, w(3, 2), &SearchLimits::none()),
        ] {
            let cost = out.cost().unwrap();
            assert!(cost >= fstar && w(3, 2).within(cost, fstar), "seed {seed}");
        }
    }
}

#[test]
fn anytime_variants_converge_with_sound_bounds() {
    let table = table();
    for seed in 0..20 {
        let s = random_eight(seed);
        let fstar = table.distance(&s).unwrap();
        let p = TilePuzzle::new(s);
        for variant in [Variant::AnytimeWrbfs, Variant::AnytimeRbfsWeighted] {
            let mut rec = Recorder::new();
            let out = Rbfs::new(&p, variant, w(3, 2)).run(&mut rec);
            assert_eq!(out.outcome.status, Status::Converged);
            assert_eq!(out.outcome.cost(), Some(fstar), "seed {seed} {variant:?}");
            let costs = out.outcome.trace.costs();
            assert!(costs.windows(2).all(|c| c[0] > c[1]));
            for inc in out.outcome.trace.entries() {
                assert_eq!(path_cost(&p, &inc.path), Some(inc.cost));
            }
            let mut prev = Cost::ZERO;
            for e in &rec.emissions {
                assert!(e.bounds.lower >= prev && e.bounds.lower <= fstar);
                assert!(e.bounds.upper >= fstar);
                prev = e.bounds.lower;
            }
            let last = rec.emissions.last().unwrap();
            assert_eq!(last.kind, EmissionKind::Final);
            assert_eq!(last.bounds.lower, fstar);
        }
    }
}

#[test]
fn anytime_wrbfs_on_easy_fifteen_puzzles() {
    for seed in 0..3 {
        let s = scramble(seed, 4, 30);
        let p = TilePuzzle::new(s);
        let reference = anytime_search::astar(&p, &SearchLimits::none()).cost();
        let out = anytime_wrbfs(&p, w(3, 2), &SearchLimits::none(), &mut ());
        assert_eq!(out.cost(), reference, "seed {seed}");
    }
}

#[test]
fn stack_stays_linear() {
    for seed in 0..10 {
        let p = TilePuzzle::new(random_eight(seed));
        for out in [
            anytime_wrbfs(&p, w(2, 1), &SearchLimits::none(), &mut ()),
            anytime_rbfs_weighted(&p, w(2, 1), &SearchLimits::none(), &mut ()),
        ] {
            let st = out.stats;
            assert!(st.max_branching <= 4);
            assert!(st.stored <= st.max_depth * st.max_branching);
        }
    }
}

#[test]
fn weighted_backup_expands_new_nodes_best_first() {
    // Each state's first expansion happens in nondecreasing order of the
    // stored weighted value.
    for seed in 0..20 {
        let p = TilePuzzle::new(random_eight(seed));
        let out = Rbfs::new(&p, Variant::Rbfs, w(3, 2))
            .record_expansions(true)
            .run(&mut ());
        let mut seen = std::collections::HashSet::new();
        let firsts: Vec<u128> = out
            .expansions
            .iter()
            .filter(|e| seen.insert(e.state))
            .map(|e| e.stored_key)
            .collect();
        assert!(firsts.windows(2).all(|k| k[0] <= k[1]), "seed {seed}");
    }
}

#[test]
fn anytime_rbfs_on_random_digraphs() {
    for seed in 0..100 {
        let g = random_digraph(seed, 4 + (seed as usize % 5));
        let fstar = uniform_cost(&g, 10_000).unwrap().optimal_cost;
        for out in [
            anytime_wrbfs(&g, w(2, 1), &SearchLimits::none(), &mut ()),
            anytime_rbfs_weighted(&g, w(2, 1), &SearchLimits::none(), &mut ()),
        ] {
            assert_eq!(out.cost(), Some(fstar), "seed {seed}");
            assert_eq!(out.bounds.lower, out.bounds.upper);
        }
    }
}

#[test]
fn limits_interrupt_with_valid_bounds() {
    let s = random_eight(11);
    let fstar = table().distance(&s).unwrap();
    let p = TilePuzzle::new(s);
    let out = anytime_wrbfs(&p, w(2, 1), &SearchLimits::expansions(100), &mut ());
    assert_eq!(out.status, Status::Interrupted);
    assert!(out.bounds.lower <= fstar && fstar <= out.bounds.upper);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn lower_bound_never_decreases(seed in 0u64..10_000, p in 10u64..=30) {
        let s = random_eight(seed);
        let fstar = table().distance(&s).unwrap();
        let puzzle = TilePuzzle::new(s);
        let out = Rbfs::new(&puzzle, Variant::AnytimeWrbfs, w(p, 10)).run(&mut ());
        prop_assert!(out.lower_bounds.windows(2).all(|b| b[0] <= b[1]));
        prop_assert!(out.lower_bounds.iter().all(|&b| b <= fstar));
        prop_assert_eq!(out.outcome.cost(), Some(fstar));
    }
}
