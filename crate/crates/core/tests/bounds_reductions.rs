mod common;

use common::{clique_number, min_cover, small_graph};
use proptest::prelude::*;
use qdecomp::bounds::{self, BoundSelection};
use qdecomp::reductions::{mc_edge_kcore_reduce, mc_kcore_reduce, nbvr_reduce, persistency_reduce};
use qdecomp::{Graph, Problem};

fn selections() -> impl Strategy<Value = BoundSelection> {
    prop_oneof![
        Just(BoundSelection::None),
        Just(BoundSelection::Chromatic),
        Just(BoundSelection::Deterministic),
        Just(BoundSelection::Both),
    ]
}

proptest! {
    #[test]
    fn bounds_bracket_the_optimum(g in small_graph(16), sel in selections()) {
        let omega = clique_number(&g);
        let cover = min_cover(&g);
        prop_assert!(bounds::clique_upper(&g, sel) >= omega);
        prop_assert!(bounds::clique_lower_heuristic(&g) <= omega);
        prop_assert!(bounds::cover_lower(&g, sel) <= cover);
        prop_assert!(bounds::cover_upper(&g) >= cover);
        if let Some(b) = bounds::clique_upper_inertia(&g) {
            prop_assert!(b >= omega);
        }
    }

    #[test]
    fn kcore_reductions_keep_larger_cliques(g in small_graph(16), best in 0usize..8) {
        let omega = clique_number(&g);
        for reduced in [mc_kcore_reduce(&g, best), mc_edge_kcore_reduce(&g, best)] {
            prop_assert!(reduced.vertex_count() <= g.vertex_count());
            if omega > best {
                prop_assert_eq!(clique_number(&reduced), omega);
            }
        }
    }

    #[test]
    fn nbvr_preserves_the_cover_size(g in small_graph(16)) {
        let out = nbvr_reduce(&g);
        prop_assert_eq!(out.delta, out.committed.len());
        prop_assert!(out.committed.iter().all(|v| out.graph.index_of(*v).is_none()));
        prop_assert_eq!(out.delta + min_cover(&out.graph), min_cover(&g));
        // committed plus any cover of the rest covers the original
        let mut cover = out.committed.clone();
        cover.extend(out.graph.labels());
        prop_assert!(g.is_vertex_cover(&cover));
        for v in 0..out.graph.vertex_count() {
            prop_assert!(out.graph.degree(v) >= 2);
        }
    }

    #[test]
    fn persistency_preserves_both_objectives(g in small_graph(14)) {
        let mc = persistency_reduce(&g, Problem::MaxClique);
        prop_assert!(g.is_clique(&mc.committed));
        prop_assert_eq!(mc.delta + clique_number(&mc.graph), clique_number(&g));
        let mvc = persistency_reduce(&g, Problem::MinVertexCover);
        prop_assert_eq!(mvc.delta + min_cover(&mvc.graph), min_cover(&g));
        let mut cover = mvc.committed.clone();
        cover.extend(mvc.graph.labels());
        prop_assert!(g.is_vertex_cover(&cover));
    }
}

#[test]
fn spectral_bound_is_skipped_on_large_graphs() {
    let g = Graph::erdos_renyi(bounds::INERTIA_MAX_VERTICES + 1, 0.01, 1);
    assert_eq!(bounds::clique_upper_inertia(&g), None);
    let g = Graph::erdos_renyi(30, 0.5, 1);
    assert!(bounds::clique_upper_inertia(&g).is_some());
}
