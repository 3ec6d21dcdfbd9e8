mod common;

use common::{clique_number, min_cover, small_graph};
use proptest::prelude::*;
use qdecomp::bounds::BoundSelection;
use qdecomp::{
    decompose_and_solve, AnnealParams, EngineConfig, Graph, IncumbentSource, LeafSolver, Problem,
    Reduction, Selection, Traversal,
};

fn configs(problem: Problem) -> impl Strategy<Value = EngineConfig> {
    let reductions: Vec<Reduction> = [
        Reduction::KCore,
        Reduction::EdgeKCore,
        Reduction::Persistency,
        Reduction::Nbvr,
    ]
    .into_iter()
    .filter(|r| r.supports(problem))
    .collect();
    (
        1usize..9,
        prop::sample::select(Selection::ALL.to_vec()),
        prop::sample::select(vec![
            BoundSelection::None,
            BoundSelection::Chromatic,
            BoundSelection::Deterministic,
            BoundSelection::Both,
        ]),
        prop::sample::select(vec![
            IncumbentSource::Decomposition,
            IncumbentSource::Heuristic,
        ]),
        prop::sample::subsequence(reductions.clone(), 0..=reductions.len()),
        prop::sample::select(vec![
            Traversal::PlusFirst,
            Traversal::MinusFirst,
            Traversal::SmallerFirst,
        ]),
        any::<u64>(),
    )
        .prop_map(
            |(cutoff, selection, bounds, incumbent, reductions, traversal, seed)| EngineConfig {
                cutoff,
                selection,
                bounds,
                incumbent,
                reductions,
                traversal,
                seed,
                ..EngineConfig::default()
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn clique_matches_oracle(g in small_graph(16), cfg in configs(Problem::MaxClique)) {
        let leaf = LeafSolver::exact();
        let (sol, metrics) = decompose_and_solve(&g, Problem::MaxClique, &cfg, &leaf).unwrap();
        prop_assert_eq!(sol.value, clique_number(&g));
        prop_assert!(g.is_clique(&sol.vertices));
        prop_assert_eq!(sol.value, sol.vertices.len());
        prop_assert_eq!(metrics.leaf_count, leaf.invocations());
        prop_assert_eq!(metrics.predicted_seconds, qdecomp::predicted_time(metrics.leaf_count, metrics.preprocessing_seconds, cfg.anneal_seconds));
    }

    #[test]
    fn cover_matches_oracle(g in small_graph(16), cfg in configs(Problem::MinVertexCover)) {
        let leaf = LeafSolver::exact();
        let (sol, metrics) = decompose_and_solve(&g, Problem::MinVertexCover, &cfg, &leaf).unwrap();
        prop_assert_eq!(sol.value, min_cover(&g));
        prop_assert!(g.is_vertex_cover(&sol.vertices));
        prop_assert_eq!(metrics.leaf_count, leaf.invocations());
    }

    #[test]
    fn plain_leaf_count_is_monotone_in_cutoff(g in small_graph(14), cutoff in 1usize..6) {
        let plain = EngineConfig::unpruned(cutoff);
        let (_, all) = decompose_and_solve(&g, Problem::MaxClique, &plain, &LeafSolver::exact()).unwrap();
        let larger = EngineConfig::unpruned(cutoff + 3);
        let (_, fewer) = decompose_and_solve(&g, Problem::MaxClique, &larger, &LeafSolver::exact()).unwrap();
        prop_assert!(fewer.leaf_count <= all.leaf_count);
    }
}

#[test]
fn single_worker_runs_are_reproducible() {
    let g = Graph::erdos_renyi(40, 0.5, 5);
    let cfg = EngineConfig {
        cutoff: 10,
        selection: Selection::Random,
        seed: 9,
        ..EngineConfig::default()
    };
    let run = || decompose_and_solve(&g, Problem::MaxClique, &cfg, &LeafSolver::exact()).unwrap();
    let (a, ma) = run();
    let (b, mb) = run();
    assert_eq!(a, b);
    assert_eq!(
        (ma.leaf_count, ma.split_count, ma.pruned_count),
        (mb.leaf_count, mb.split_count, mb.pruned_count)
    );
}

#[test]
fn objective_is_independent_of_worker_count() {
    for seed in 0..5 {
        let g = Graph::erdos_renyi(45, 0.6, 100 + seed);
        for problem in [Problem::MaxClique, Problem::MinVertexCover] {
            let mut values = Vec::new();
            for workers in [1, 2, 4] {
                let cfg = EngineConfig {
                    cutoff: 12,
                    workers,
                    seed,
                    ..EngineConfig::default()
                };
                let (sol, _) =
                    decompose_and_solve(&g, problem, &cfg, &LeafSolver::exact()).unwrap();
                assert!(problem.is_feasible(&g, &sol.vertices));
                values.push(sol.value);
            }
            assert!(values.windows(2).all(|w| w[0] == w[1]), "{values:?}");
        }
    }
}

#[test]
fn annealed_leaves_give_feasible_answers() {
    let leaf = LeafSolver::anneal(AnnealParams {
        num_reads: 20,
        sweeps: 100,
        ..Default::default()
    });
    for seed in 0..10 {
        let g = Graph::erdos_renyi(20, 0.5, 300 + seed);
        let cfg = EngineConfig {
            cutoff: 10,
            seed,
            ..EngineConfig::default()
        };
        let (mc, _) = decompose_and_solve(&g, Problem::MaxClique, &cfg, &leaf).unwrap();
        assert!(g.is_clique(&mc.vertices));
        assert!(mc.value <= clique_number(&g));
        let (mvc, _) = decompose_and_solve(&g, Problem::MinVertexCover, &cfg, &leaf).unwrap();
        assert!(g.is_vertex_cover(&mvc.vertices));
        assert!(mvc.value >= min_cover(&g));
    }
}

#[test]
fn bounds_prune_subproblems() {
    let g = Graph::erdos_renyi(50, 0.3, 2);
    let (_, plain) = decompose_and_solve(
        &g,
        Problem::MaxClique,
        &EngineConfig::unpruned(10),
        &LeafSolver::exact(),
    )
    .unwrap();
    let cfg = EngineConfig {
        cutoff: 10,
        bounds: BoundSelection::Chromatic,
        ..EngineConfig::default()
    };
    let (_, bounded) =
        decompose_and_solve(&g, Problem::MaxClique, &cfg, &LeafSolver::exact()).unwrap();
    assert!(bounded.pruned_count > 0);
    assert!(bounded.leaf_count < plain.leaf_count);
}
