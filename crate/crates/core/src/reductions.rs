//! Size-shrinking passes applied to subproblems.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::problem::Problem;
use crate::qubo::Qubo;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reduction {
    #[serde(rename = "kcore")]
    KCore,
    #[serde(rename = "edge-kcore")]
    EdgeKCore,
    Persistency,
    Nbvr,
}

impl Reduction {
    pub fn name(self) -> &'static str {
        match self {
            Reduction::KCore => "kcore",
            Reduction::EdgeKCore => "edge-kcore",
            Reduction::Persistency => "persistency",
            Reduction::Nbvr => "nbvr",
        }
    }

    pub fn supports(self, problem: Problem) -> bool {
        match self {
            Reduction::KCore | Reduction::EdgeKCore => problem == Problem::MaxClique,
            Reduction::Nbvr => problem == Problem::MinVertexCover,
            Reduction::Persistency => true,
        }
    }
}

impl std::str::FromStr for Reduction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "kcore" => Ok(Reduction::KCore),
            "edge-kcore" => Ok(Reduction::EdgeKCore),
            "persistency" => Ok(Reduction::Persistency),
            "nbvr" => Ok(Reduction::Nbvr),
            other => Err(format!("unknown reduction {other:?}")),
        }
    }
}

/// Parses a comma separated list; `none` yields the empty list.
pub fn parse_reductions(list: &str) -> Result<Vec<Reduction>, String> {
    if list.trim() == "none" {
        return Ok(Vec::new());
    }
    let mut out: Vec<Reduction> = list
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn reductions_name(list: &[Reduction]) -> String {
    if list.is_empty() {
        "none".to_string()
    } else {
        list.iter().map(|r| r.name()).collect::<Vec<_>>().join("+")
    }
}

/// Result of a reduction that may commit vertices to the solution.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionOutcome {
    pub graph: Graph,
    pub committed: VertexSet,
    /// Objective contribution of the committed vertices.
    pub delta: usize,
    pub removed_vertices: usize,
    pub removed_edges: usize,
}

impl ReductionOutcome {
    fn new(before: &Graph, graph: Graph, committed: VertexSet) -> Self {
        ReductionOutcome {
            removed_vertices: before.vertex_count() - graph.vertex_count(),
            removed_edges: before.edge_count() - graph.edge_count(),
            delta: committed.len(),
            committed,
            graph,
        }
    }

    pub fn is_noop(&self) -> bool {
        self.removed_vertices == 0 && self.removed_edges == 0
    }
}

/// Vertex k-core with `k = best`: a clique larger than `best` has all its
/// members at degree `best` or more.
pub fn mc_kcore_reduce(g: &Graph, best: usize) -> Graph {
    g.k_core(best)
}

fn common_neighbors(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Edge k-core: drops every edge whose endpoints share fewer than `best - 1`
/// neighbors, then takes the vertex k-core, until nothing changes. Every edge
/// of a clique larger than `best` survives.
pub fn mc_edge_kcore_reduce(g: &Graph, best: usize) -> Graph {
    let need = best.saturating_sub(1);
    let mut current = g.k_core(best);
    loop {
        let filtered = current.filter_edges(|u, v| {
            common_neighbors(current.neighbors(u), current.neighbors(v)) >= need
        });
        let next = filtered.k_core(best);
        if next.vertex_count() == current.vertex_count()
            && next.edge_count() == current.edge_count()
        {
            return next;
        }
        current = next;
    }
}

/// Neighbor-based vertex removal for vertex cover, to a fixed point:
/// isolated vertices are dropped; a degree-one vertex's neighbor is
/// committed and both are dropped; a triangle that forms a whole component
/// commits its two smallest labels and is dropped.
pub fn nbvr_reduce(g: &Graph) -> ReductionOutcome {
    let n = g.vertex_count();
    let mut removed = vec![false; n];
    let mut degree = g.degrees();
    let mut committed = VertexSet::new();

    let live = |removed: &[bool], v: usize| -> Vec<usize> {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|&w| !removed[w])
            .collect()
    };
    let remove = |removed: &mut Vec<bool>, degree: &mut Vec<usize>, v: usize| {
        removed[v] = true;
        for &w in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
            }
        }
    };

    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if removed[v] {
                continue;
            }
            match degree[v] {
                0 => {
                    removed[v] = true;
                    changed = true;
                }
                1 => {
                    let u = live(&removed, v)[0];
                    committed.insert(g.label(u));
                    remove(&mut removed, &mut degree, u);
                    remove(&mut removed, &mut degree, v);
                    changed = true;
                }
                2 => {
                    let (a, b) = match live(&removed, v)[..] {
                        [a, b] => (a, b),
                        _ => unreachable!("degree two"),
                    };
                    if degree[a] == 2 && degree[b] == 2 && g.has_edge(a, b) {
                        let mut triangle = [v, a, b];
                        triangle.sort_unstable();
                        committed.insert(g.label(triangle[0]));
                        committed.insert(g.label(triangle[1]));
                        for t in triangle {
                            remove(&mut removed, &mut degree, t);
                        }
                        changed = true;
                    }
                }
                _ => {}
            }
        }
    }
    ReductionOutcome::new(g, g.without(&removed), committed)
}

/// Builds the problem's QUBO, takes its first-order persistencies and applies
/// them to the graph.
///
/// Clique: variables fixed to one are committed, and the graph is restricted
/// to their common neighborhood minus everything fixed. Cover: variables
/// fixed to one are committed; a vertex fixed to zero is dropped and its
/// remaining neighbors are committed, since they must cover its edges.
pub fn persistency_reduce(g: &Graph, problem: Problem) -> ReductionOutcome {
    let q = match problem {
        Problem::MaxClique => Qubo::max_clique(g),
        Problem::MinVertexCover => Qubo::min_vertex_cover(g),
    };
    let fixed = q.persistencies().fixed;
    let n = g.vertex_count();
    let mut drop = vec![false; n];
    let mut commit = vec![false; n];
    for (&v, &value) in &fixed {
        drop[v] = true;
        commit[v] = value;
    }
    match problem {
        Problem::MaxClique => {
            for v in (0..n).filter(|&v| commit[v]) {
                for w in 0..n {
                    if w != v && !g.has_edge(v, w) {
                        debug_assert!(!commit[w], "fixed clique vertices must be adjacent");
                        drop[w] = true;
                    }
                }
            }
        }
        Problem::MinVertexCover => {
            for (&v, &value) in &fixed {
                if !value {
                    for &w in g.neighbors(v) {
                        debug_assert!(
                            fixed.get(&w) != Some(&false),
                            "adjacent vertices both excluded"
                        );
                        commit[w] = true;
                        drop[w] = true;
                    }
                }
            }
        }
    }
    let committed = (0..n).filter(|&v| commit[v]).map(|v| g.label(v)).collect();
    ReductionOutcome::new(g, g.without(&drop), committed)
}
