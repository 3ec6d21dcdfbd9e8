//! Leaf solvers: the exact bitmask solver and the annealing emulator.

use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use crate::graph::{Graph, VertexSet};
use crate::problem::{Problem, Solution, Subproblem};
use crate::qubo::Qubo;

pub mod anneal;
pub mod exact;

pub use anneal::{anneal_qubo, AnnealOutcome, AnnealParams, SampleSummary};
pub use exact::{exact_mc, exact_mvc, EXACT_LIMIT};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("exact solver accepts at most {limit} vertices, subproblem has {vertices}")]
    TooLarge { vertices: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LeafKind {
    Exact,
    Anneal(AnnealParams),
}

/// Solves subproblems at the leaves of the decomposition and counts how often
/// it was asked to.
#[derive(Debug)]
pub struct LeafSolver {
    kind: LeafKind,
    calls: AtomicUsize,
}

impl LeafSolver {
    pub fn new(kind: LeafKind) -> Self {
        LeafSolver {
            kind,
            calls: AtomicUsize::new(0),
        }
    }

    pub fn exact() -> Self {
        Self::new(LeafKind::Exact)
    }

    pub fn anneal(params: AnnealParams) -> Self {
        Self::new(LeafKind::Anneal(params))
    }

    pub fn kind(&self) -> LeafKind {
        self.kind
    }

    pub fn invocations(&self) -> usize {
        self.calls.load(Ordering::Relaxed)
    }

    /// Solves `sub.graph` and lifts the result by the committed vertices.
    /// `seed` only matters for the annealer.
    pub fn solve(
        &self,
        sub: &Subproblem,
        problem: Problem,
        seed: u64,
    ) -> Result<Solution, SolverError> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        let g = &sub.graph;
        let local = match (self.kind, problem) {
            (LeafKind::Exact, Problem::MaxClique) => exact_mc(g)?,
            (LeafKind::Exact, Problem::MinVertexCover) => exact_mvc(g)?,
            (LeafKind::Anneal(params), Problem::MaxClique) => {
                let q = Qubo::max_clique(g);
                let sample = anneal_qubo(&q, &params, seed);
                Solution::new(repair_clique(g, sample.assignment))
            }
            (LeafKind::Anneal(params), Problem::MinVertexCover) => {
                let q = Qubo::min_vertex_cover(g);
                let sample = anneal_qubo(&q, &params, seed);
                Solution::new(repair_cover(g, sample.assignment))
            }
        };
        Ok(sub.lift(local))
    }
}

/// Drops the member with the most non-neighbors inside the set until the set
/// is a clique, then extends it to a maximal clique in index order.
pub fn repair_clique(g: &Graph, mut member: Vec<bool>) -> VertexSet {
    let n = g.vertex_count();
    loop {
        let conflicts = |v: usize| {
            (0..n)
                .filter(|&w| w != v && member[w] && !g.has_edge(v, w))
                .count()
        };
        let worst = (0..n)
            .filter(|&v| member[v])
            .map(|v| (conflicts(v), v))
            .filter(|&(c, _)| c > 0)
            .max();
        match worst {
            Some((_, v)) => member[v] = false,
            None => break,
        }
    }
    for v in 0..n {
        if !member[v] && (0..n).all(|w| !member[w] || g.has_edge(v, w)) {
            member[v] = true;
        }
    }
    (0..n).filter(|&v| member[v]).map(|v| g.label(v)).collect()
}

/// Covers every uncovered edge by adding its endpoint of larger degree, then
/// drops members whose neighbors are all in the cover.
pub fn repair_cover(g: &Graph, mut member: Vec<bool>) -> VertexSet {
    for (u, v) in g.edges() {
        if !member[u] && !member[v] {
            let pick = if g.degree(v) > g.degree(u) { v } else { u };
            member[pick] = true;
        }
    }
    for v in 0..g.vertex_count() {
        if member[v] && g.neighbors(v).iter().all(|&w| member[w]) {
            member[v] = false;
        }
    }
    (0..g.vertex_count())
        .filter(|&v| member[v])
        .map(|v| g.label(v))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn lifted_clique_leaf() {
        let k2 = Graph::from_edges(3, &[(1, 2)])
            .unwrap()
            .induced_subgraph(&VertexSet::from([1, 2]))
            .unwrap();
        let sub = Subproblem {
            graph: k2,
            committed: VertexSet::from([0]),
            delta: 1,
            depth: 1,
        };
        let solver = LeafSolver::exact();
        let sol = solver.solve(&sub, Problem::MaxClique, 0).unwrap();
        assert_eq!(sol.value, 3);
        assert_eq!(sol.vertices, VertexSet::from([0, 1, 2]));
        assert_eq!(solver.invocations(), 1);
    }

    #[test]
    fn empty_cover_leaf_returns_committed() {
        let sub = Subproblem {
            graph: Graph::empty(0),
            committed: VertexSet::from([3, 5, 7, 9]),
            delta: 4,
            depth: 2,
        };
        for solver in [
            LeafSolver::exact(),
            LeafSolver::anneal(AnnealParams::default()),
        ] {
            let sol = solver.solve(&sub, Problem::MinVertexCover, 1).unwrap();
            assert_eq!(sol.value, 4);
            assert_eq!(sol.vertices, sub.committed);
        }
    }

    #[test]
    fn annealed_c5_cover_is_usually_optimal() {
        let solver = LeafSolver::anneal(AnnealParams::default());
        let sub = Subproblem::root(c5());
        let mut optimal = 0;
        for seed in 0..100 {
            let sol = solver.solve(&sub, Problem::MinVertexCover, seed).unwrap();
            assert!(c5().is_vertex_cover(&sol.vertices));
            assert!(sol.value >= 3);
            optimal += usize::from(sol.value == 3);
        }
        assert!(optimal >= 90, "optimal in {optimal}/100 seeds");
        assert_eq!(solver.invocations(), 100);
    }

    #[test]
    fn repair_makes_samples_feasible() {
        let g = c5();
        let clique = repair_clique(&g, vec![true; 5]);
        assert!(g.is_clique(&clique));
        assert_eq!(clique.len(), 2);
        let cover = repair_cover(&g, vec![false; 5]);
        assert!(g.is_vertex_cover(&cover));
        let cover = repair_cover(&g, vec![true; 5]);
        assert!(g.is_vertex_cover(&cover));
        assert!(cover.len() <= 4);
    }

    #[test]
    fn exact_leaf_limit_propagates() {
        let sub = Subproblem::root(Graph::empty(70));
        let err = LeafSolver::exact()
            .solve(&sub, Problem::MaxClique, 0)
            .unwrap_err();
        assert_eq!(
            err,
            SolverError::TooLarge {
                vertices: 70,
                limit: EXACT_LIMIT
            }
        );
    }
}
