//! Recursive decomposition with bounding and reductions.
//!
//! A subproblem larger than the cutoff is split at a selected vertex `v` into
//! a "plus" child (v is in the solution) and a "minus" child (v is not). Each
//! child is bounded against the incumbent, reduced, and then either recursed
//! into or handed to the leaf solver. The incumbent is shared by all branches
//! and only ever improves.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundSelection};
use crate::graph::{Graph, Label, VertexSet};
use crate::metrics::{predicted_time, RunMetrics, DEFAULT_ANNEAL_SECONDS};
use crate::problem::{Problem, Solution, Subproblem};
use crate::reductions::{self, Reduction};
use crate::rng;
use crate::solvers::{LeafSolver, SolverError};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("cannot select a vertex from an empty graph")]
    EmptyGraph,
    #[error("vertex {0} is not part of the subproblem")]
    UnknownVertex(Label),
    #[error("leaf solver failed on subproblem {node:#018x}: {source}")]
    Leaf {
        node: u64,
        #[source]
        source: SolverError,
    },
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Selection {
    Low,
    Median,
    High,
    Random,
}

impl Selection {
    pub const ALL: [Selection; 4] = [
        Selection::Low,
        Selection::Median,
        Selection::High,
        Selection::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Selection::Low => "low",
            Selection::Median => "median",
            Selection::High => "high",
            Selection::Random => "random",
        }
    }
}

impl std::str::FromStr for Selection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Selection::ALL
            .into_iter()
            .find(|sel| sel.name() == s)
            .ok_or_else(|| format!("unknown selection strategy {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Traversal {
    PlusFirst,
    MinusFirst,
    SmallerFirst,
}

/// Where the incumbent comes from besides solved leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IncumbentSource {
    /// Greedy solution at the root, then leaf solutions only.
    Decomposition,
    /// Greedy solution at the root and at every generated subproblem.
    Heuristic,
}

impl std::str::FromStr for IncumbentSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "decomposition" => Ok(IncumbentSource::Decomposition),
            "heuristic" => Ok(IncumbentSource::Heuristic),
            other => Err(format!("unknown incumbent source {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EngineConfig {
    /// Subproblems with at most this many vertices go to the leaf solver.
    pub cutoff: usize,
    pub selection: Selection,
    pub bounds: BoundSelection,
    pub incumbent: IncumbentSource,
    pub reductions: Vec<Reduction>,
    pub traversal: Traversal,
    pub seed: u64,
    pub workers: usize,
    pub anneal_seconds: f64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            cutoff: 46,
            selection: Selection::Low,
            bounds: BoundSelection::Chromatic,
            incumbent: IncumbentSource::Decomposition,
            reductions: Vec::new(),
            traversal: Traversal::SmallerFirst,
            seed: 0,
            workers: 1,
            anneal_seconds: DEFAULT_ANNEAL_SECONDS,
        }
    }
}

impl EngineConfig {
    /// No bounds and no reductions: the plain exhaustive decomposition.
    pub fn unpruned(cutoff: usize) -> Self {
        EngineConfig {
            cutoff,
            bounds: BoundSelection::None,
            ..Default::default()
        }
    }
}

/// Picks the splitting vertex (internal index). Ties, and the random
/// strategy, are resolved by a uniform draw.
pub fn select_vertex(
    g: &Graph,
    selection: Selection,
    rng: &mut impl Rng,
) -> Result<usize, DecompError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(DecompError::EmptyGraph);
    }
    let degrees = g.degrees();
    let target = match selection {
        Selection::Random => return Ok(rng.gen_range(0..n)),
        Selection::Low => *degrees.iter().min().expect("non-empty"),
        Selection::High => *degrees.iter().max().expect("non-empty"),
        Selection::Median => {
            let mut sorted = degrees.clone();
            sorted.sort_unstable();
            sorted[(n - 1) / 2]
        }
    };
    let ties: Vec<usize> = (0..n).filter(|&v| degrees[v] == target).collect();
    Ok(ties[rng.gen_range(0..ties.len())])
}

fn index_in(sub: &Subproblem, v: Label) -> Result<usize, DecompError> {
    sub.graph.index_of(v).ok_or(DecompError::UnknownVertex(v))
}

/// Clique split: plus keeps only the neighborhood of `v` and commits `v`;
/// minus deletes `v`.
pub fn split_mc(sub: &Subproblem, v: Label) -> Result<(Subproblem, Subproblem), DecompError> {
    let i = index_in(sub, v)?;
    let g = &sub.graph;
    let mut committed = sub.committed.clone();
    committed.insert(v);
    let plus = Subproblem {
        graph: g.induced_by_indices(g.neighbors(i)),
        committed,
        delta: sub.delta + 1,
        depth: sub.depth + 1,
    };
    let mut drop = vec![false; g.vertex_count()];
    drop[i] = true;
    let minus = Subproblem {
        graph: g.without(&drop),
        committed: sub.committed.clone(),
        delta: sub.delta,
        depth: sub.depth + 1,
    };
    Ok((plus, minus))
}

/// Cover split: plus commits `v` and deletes it; minus excludes `v`, which
/// forces all of its neighbors into the cover.
pub fn split_mvc(sub: &Subproblem, v: Label) -> Result<(Subproblem, Subproblem), DecompError> {
    let i = index_in(sub, v)?;
    let g = &sub.graph;
    let n = g.vertex_count();

    let mut drop = vec![false; n];
    drop[i] = true;
    let mut committed = sub.committed.clone();
    committed.insert(v);
    let plus = Subproblem {
        graph: g.without(&drop),
        committed,
        delta: sub.delta + 1,
        depth: sub.depth + 1,
    };

    let mut committed = sub.committed.clone();
    for &w in g.neighbors(i) {
        drop[w] = true;
        committed.insert(g.label(w));
    }
    let minus = Subproblem {
        graph: g.without(&drop),
        committed,
        delta: sub.delta + g.degree(i),
        depth: sub.depth + 1,
    };
    Ok((plus, minus))
}

/// Best of two branch values; `None` marks a pruned branch.
pub fn combine(problem: Problem, plus: Option<usize>, minus: Option<usize>) -> Option<usize> {
    match (plus, minus) {
        (Some(a), Some(b)) => Some(match problem {
            Problem::MaxClique => a.max(b),
            Problem::MinVertexCover => a.min(b),
        }),
        (a, None) => a,
        (None, b) => b,
    }
}

fn better(problem: Problem, plus: Option<Solution>, minus: Option<Solution>) -> Option<Solution> {
    match (plus, minus) {
        (Some(a), Some(b)) => {
            let pick = combine(problem, Some(a.value), Some(b.value));
            // plus wins ties
            Some(if pick == Some(a.value) { a } else { b })
        }
        (a, None) => a,
        (None, b) => b,
    }
}

struct Engine<'a> {
    problem: Problem,
    cfg: &'a EngineConfig,
    leaf: &'a LeafSolver,
    incumbent: Mutex<Solution>,
    leaf_count: AtomicUsize,
    leaf_nanos: AtomicU64,
    split_count: AtomicUsize,
    pruned: AtomicUsize,
    reduced_vertices: AtomicUsize,
    reduced_edges: AtomicUsize,
    incumbent_updates: AtomicUsize,
    max_depth: AtomicUsize,
}

/// A child ready to be visited, with the bound computed for it.
struct Prepared {
    sub: Subproblem,
    id: u64,
    bound: Option<usize>,
}

impl Engine<'_> {
    fn incumbent_value(&self) -> usize {
        self.incumbent.lock().expect("incumbent lock").value
    }

    fn offer(&self, candidate: &Solution) {
        let mut inc = self.incumbent.lock().expect("incumbent lock");
        if self.problem.improves(candidate.value, inc.value) {
            *inc = candidate.clone();
            self.incumbent_updates.fetch_add(1, Ordering::Relaxed);
        }
    }

    fn heuristic(&self, sub: &Subproblem) -> Solution {
        let g = &sub.graph;
        let local = match self.problem {
            Problem::MaxClique => g.greedy_clique(),
            Problem::MinVertexCover => {
                let independent = g.complement().greedy_clique();
                g.label_set().difference(&independent).copied().collect()
            }
        };
        sub.lift(Solution::new(local))
    }

    /// Best objective any solution inside `sub` could reach.
    fn bound(&self, sub: &Subproblem) -> Option<usize> {
        if !self.cfg.bounds.is_enabled() {
            return None;
        }
        Some(
            sub.delta
                + match self.problem {
                    Problem::MaxClique => bounds::clique_upper(&sub.graph, self.cfg.bounds),
                    Problem::MinVertexCover => bounds::cover_lower(&sub.graph, self.cfg.bounds),
                },
        )
    }

    /// Equality prunes: a branch that can only tie cannot improve.
    fn hopeless(&self, bound: Option<usize>) -> bool {
        bound.is_some_and(|b| !self.problem.improves(b, self.incumbent_value()))
    }

    fn reduce(&self, mut sub: Subproblem) -> Subproblem {
        let before = (sub.graph.vertex_count(), sub.graph.edge_count());
        let enabled = |r| self.cfg.reductions.contains(&r);
        if enabled(Reduction::Nbvr) {
            let outcome = reductions::nbvr_reduce(&sub.graph);
            absorb(&mut sub, outcome);
        }
        if enabled(Reduction::Persistency) {
            let outcome = reductions::persistency_reduce(&sub.graph, self.problem);
            absorb(&mut sub, outcome);
        }
        if self.problem == Problem::MaxClique {
            // clique size that a branch must exceed to improve the incumbent
            let target = self.incumbent_value().saturating_sub(sub.delta);
            if target > 0 {
                if enabled(Reduction::KCore) {
                    sub.graph = reductions::mc_kcore_reduce(&sub.graph, target);
                }
                if enabled(Reduction::EdgeKCore) {
                    sub.graph = reductions::mc_edge_kcore_reduce(&sub.graph, target);
                }
            }
        }
        self.reduced_vertices
            .fetch_add(before.0 - sub.graph.vertex_count(), Ordering::Relaxed);
        self.reduced_edges
            .fetch_add(before.1 - sub.graph.edge_count(), Ordering::Relaxed);
        sub
    }

    fn prepare(&self, sub: Subproblem, id: u64) -> Option<Prepared> {
        if self.hopeless(self.bound(&sub)) {
            self.pruned.fetch_add(1, Ordering::Relaxed);
            return None;
        }
        let sub = self.reduce(sub);
        if self.cfg.incumbent == IncumbentSource::Heuristic {
            self.offer(&self.heuristic(&sub));
        }
        let bound = self.bound(&sub);
        if self.hopeless(bound) {
            self.pruned.fetch_add(1, Ordering::Relaxed);
            return None;
        }
        Some(Prepared { sub, id, bound })
    }

    fn descend(&self, child: Prepared) -> Result<Option<Solution>, DecompError> {
        // the incumbent may have improved while the sibling was explored
        if self.hopeless(child.bound) {
            self.pruned.fetch_add(1, Ordering::Relaxed);
            return Ok(None);
        }
        self.visit(child.sub, child.id)
    }

    fn solve_leaf(&self, sub: &Subproblem, id: u64) -> Result<Solution, DecompError> {
        if sub.graph.is_empty() {
            return Ok(sub.lift(Solution::new(VertexSet::new())));
        }
        let start = Instant::now();
        let result = self
            .leaf
            .solve(sub, self.problem, rng::mix(self.cfg.seed, id));
        self.leaf_nanos
            .fetch_add(start.elapsed().as_nanos() as u64, Ordering::Relaxed);
        self.leaf_count.fetch_add(1, Ordering::Relaxed);
        result.map_err(|source| DecompError::Leaf { node: id, source })
    }

    fn visit(&self, sub: Subproblem, id: u64) -> Result<Option<Solution>, DecompError> {
        self.max_depth.fetch_max(sub.depth, Ordering::Relaxed);
        if sub.graph.vertex_count() <= self.cfg.cutoff {
            let solution = self.solve_leaf(&sub, id)?;
            self.offer(&solution);
            return Ok(Some(solution));
        }
        self.split_count.fetch_add(1, Ordering::Relaxed);
        let mut rng = rng::stream(self.cfg.seed, id);
        let v = sub
            .graph
            .label(select_vertex(&sub.graph, self.cfg.selection, &mut rng)?);
        let (plus, minus) = match self.problem {
            Problem::MaxClique => split_mc(&sub, v)?,
            Problem::MinVertexCover => split_mvc(&sub, v)?,
        };
        drop(sub);
        let plus_id = rng::mix(id, 1);
        let minus_id = rng::mix(id, 2);
        let plus_first = match self.cfg.traversal {
            Traversal::PlusFirst => true,
            Traversal::MinusFirst => false,
            Traversal::SmallerFirst => plus.graph.vertex_count() <= minus.graph.vertex_count(),
        };
        let (first, second, first_is_plus) = if plus_first {
            (self.prepare(plus, plus_id), minus, true)
        } else {
            (self.prepare(minus, minus_id), plus, false)
        };
        let second_id = if first_is_plus { minus_id } else { plus_id };

        let (first_result, second_result) = if self.cfg.workers > 1 {
            let second = self.prepare(second, second_id);
            let (a, b) = rayon::join(
                || first.map(|c| self.descend(c)).transpose(),
                || second.map(|c| self.descend(c)).transpose(),
            );
            (a?.flatten(), b?.flatten())
        } else {
            let a = first.map(|c| self.descend(c)).transpose()?.flatten();
            // prepared after the first branch so bounds and reductions see
            // the improved incumbent
            let second = self.prepare(second, second_id);
            let b = second.map(|c| self.descend(c)).transpose()?.flatten();
            (a, b)
        };
        Ok(if first_is_plus {
            better(self.problem, first_result, second_result)
        } else {
            better(self.problem, second_result, first_result)
        })
    }
}

fn absorb(sub: &mut Subproblem, outcome: reductions::ReductionOutcome) {
    sub.graph = outcome.graph;
    sub.delta += outcome.delta;
    sub.committed.extend(outcome.committed);
}

/// Runs the full decomposition and returns the best solution found together
/// with the run metrics. With an exact leaf solver the solution is optimal.
pub fn decompose_and_solve(
    g: &Graph,
    problem: Problem,
    cfg: &EngineConfig,
    leaf: &LeafSolver,
) -> Result<(Solution, RunMetrics), DecompError> {
    assert!(cfg.cutoff >= 1, "cutoff must be positive");
    let start = Instant::now();
    let root = Subproblem::root(g.clone());
    let engine = Engine {
        problem,
        cfg,
        leaf,
        incumbent: Mutex::new(match problem {
            Problem::MaxClique => Solution::new(VertexSet::new()),
            Problem::MinVertexCover => Solution::new(g.label_set()),
        }),
        leaf_count: AtomicUsize::new(0),
        leaf_nanos: AtomicU64::new(0),
        split_count: AtomicUsize::new(0),
        pruned: AtomicUsize::new(0),
        reduced_vertices: AtomicUsize::new(0),
        reduced_edges: AtomicUsize::new(0),
        incumbent_updates: AtomicUsize::new(0),
        max_depth: AtomicUsize::new(0),
    };
    engine.offer(&engine.heuristic(&root));

    let result = if cfg.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| DecompError::Pool(e.to_string()))?;
        pool.install(|| engine.visit(root, 0))
    } else {
        engine.visit(root, 0)
    };
    if let Some(best) = result? {
        engine.offer(&best);
    }

    let total = start.elapsed().as_secs_f64();
    let leaf_seconds = engine.leaf_nanos.load(Ordering::Relaxed) as f64 * 1e-9;
    let preprocessing_seconds = (total - leaf_seconds).max(0.0);
    let leaf_count = engine.leaf_count.load(Ordering::Relaxed);
    let metrics = RunMetrics {
        leaf_count,
        preprocessing_seconds,
        predicted_seconds: predicted_time(leaf_count, preprocessing_seconds, cfg.anneal_seconds),
        leaf_seconds,
        split_count: engine.split_count.load(Ordering::Relaxed),
        pruned_count: engine.pruned.load(Ordering::Relaxed),
        reduced_vertices: engine.reduced_vertices.load(Ordering::Relaxed),
        reduced_edges: engine.reduced_edges.load(Ordering::Relaxed),
        incumbent_updates: engine.incumbent_updates.load(Ordering::Relaxed),
        max_depth: engine.max_depth.load(Ordering::Relaxed),
    };
    let solution = engine.incumbent.into_inner().expect("incumbent lock");
    Ok((solution, metrics))
}
