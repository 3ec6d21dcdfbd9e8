//! Sound bounds on the clique number and the minimum vertex cover size.
//!
//! Upper bounds on the clique number double as lower bounds on the cover size
//! through `MVC(g) = n - omega(complement(g))`, and vice versa.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// Above this many vertices the spectral component is skipped.
pub const INERTIA_MAX_VERTICES: usize = 400;

/// Which clique-upper / cover-lower bound families are used for pruning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSelection {
    None,
    Chromatic,
    Deterministic,
    Both,
}

impl BoundSelection {
    pub fn chromatic(self) -> bool {
        matches!(self, BoundSelection::Chromatic | BoundSelection::Both)
    }

    pub fn deterministic(self) -> bool {
        matches!(self, BoundSelection::Deterministic | BoundSelection::Both)
    }

    pub fn is_enabled(self) -> bool {
        self != BoundSelection::None
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundSelection::None => "none",
            BoundSelection::Chromatic => "chromatic",
            BoundSelection::Deterministic => "deterministic",
            BoundSelection::Both => "both",
        }
    }
}

impl std::str::FromStr for BoundSelection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(BoundSelection::None),
            "chromatic" => Ok(BoundSelection::Chromatic),
            "deterministic" => Ok(BoundSelection::Deterministic),
            "both" => Ok(BoundSelection::Both),
            other => Err(format!("unknown bound selection {other:?}")),
        }
    }
}

/// Greedy coloring size; every clique needs distinct colors.
pub fn clique_upper_chromatic(g: &Graph) -> usize {
    g.greedy_coloring()
}

/// `n - |maximal matching of the complement|`: the matching lower-bounds the
/// complement's vertex cover, whose complement contains every clique.
pub fn clique_upper_matching(g: &Graph) -> usize {
    g.vertex_count() - g.complement().maximal_matching().len()
}

/// Inertia bound on the independence number of the complement:
/// `alpha(H) <= min(n - n_plus, n - n_minus)` over the adjacency spectrum of H.
/// `None` when the graph is too large for the eigensolve.
pub fn clique_upper_inertia(g: &Graph) -> Option<usize> {
    let n = g.vertex_count();
    if n > INERTIA_MAX_VERTICES {
        return None;
    }
    if n == 0 {
        return Some(0);
    }
    let h = g.complement();
    let adjacency = DMatrix::from_fn(
        n,
        n,
        |i, j| if i != j && h.has_edge(i, j) { 1.0 } else { 0.0 },
    );
    let max_entry = if h.edge_count() > 0 { 1.0 } else { 0.0 };
    let threshold = 1e-8 * n as f64 * max_entry;
    let eigenvalues = adjacency.symmetric_eigenvalues();
    let positive = eigenvalues.iter().filter(|&&l| l > threshold).count();
    let negative = eigenvalues.iter().filter(|&&l| l < -threshold).count();
    Some((n - positive).min(n - negative))
}

/// Degeneracy bound: every clique of size `c` lies in the `(c-1)`-core.
pub fn clique_upper_degeneracy(g: &Graph) -> usize {
    if g.is_empty() {
        0
    } else {
        g.degeneracy().0 + 1
    }
}

/// Minimum of the matching, inertia and degeneracy bounds.
pub fn clique_upper_deterministic(g: &Graph) -> usize {
    let mut bound = clique_upper_matching(g).min(clique_upper_degeneracy(g));
    if let Some(inertia) = clique_upper_inertia(g) {
        bound = bound.min(inertia);
    }
    bound
}

/// Size of the greedy clique.
pub fn clique_lower_heuristic(g: &Graph) -> usize {
    g.greedy_clique().len()
}

/// Lower bound on the minimum vertex cover from the selected families.
/// The matching size is always included; it is free and always sound.
pub fn cover_lower(g: &Graph, selection: BoundSelection) -> usize {
    let n = g.vertex_count();
    let mut lower = g.maximal_matching().len();
    if selection.chromatic() || selection.deterministic() {
        let h = g.complement();
        if selection.chromatic() {
            lower = lower.max(n - clique_upper_chromatic(&h));
        }
        if selection.deterministic() {
            lower = lower.max(n - clique_upper_deterministic(&h));
        }
    }
    lower
}

/// Upper bound on the minimum vertex cover: the complement of a greedy
/// independent set.
pub fn cover_upper(g: &Graph) -> usize {
    g.vertex_count() - clique_lower_heuristic(&g.complement())
}

/// `(lower, upper)` with every family enabled.
pub fn cover_bounds(g: &Graph) -> (usize, usize) {
    (cover_lower(g, BoundSelection::Both), cover_upper(g))
}

/// Upper bound on the clique number from the selected families; the vertex
/// count when nothing is selected.
pub fn clique_upper(g: &Graph, selection: BoundSelection) -> usize {
    let mut upper = g.vertex_count();
    if selection.chromatic() {
        upper = upper.min(clique_upper_chromatic(g));
    }
    if selection.deterministic() {
        upper = upper.min(clique_upper_deterministic(g));
    }
    upper
}

/// All bounds of one graph, with the names of the components that won.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub clique_upper: usize,
    pub clique_lower: usize,
    pub cover_lower: usize,
    pub cover_upper: usize,
    pub sources: Vec<&'static str>,
}

impl BoundReport {
    pub fn compute(g: &Graph) -> Self {
        let chromatic = clique_upper_chromatic(g);
        let deterministic = clique_upper_deterministic(g);
        let (cover_lower, cover_upper) = cover_bounds(g);
        let mut sources = vec![if chromatic <= deterministic {
            "chromatic"
        } else {
            "deterministic"
        }];
        sources.push("greedy-clique");
        let n = g.vertex_count();
        let matching = g.maximal_matching().len();
        sources.push(if matching == cover_lower {
            "matching"
        } else if n - clique_upper_chromatic(&g.complement()) == cover_lower {
            "complement-chromatic"
        } else {
            "complement-deterministic"
        });
        sources.push("complement-greedy-clique");
        BoundReport {
            clique_upper: chromatic.min(deterministic),
            clique_lower: clique_lower_heuristic(g),
            cover_lower,
            cover_upper,
            sources,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        Graph::empty(n).complement()
    }

    fn c5() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(clique_upper_chromatic(&complete(4)), 4);
        assert_eq!(clique_upper_chromatic(&c5()), 3);
        assert_eq!(clique_upper_chromatic(&Graph::empty(5)), 1);
    }

    #[test]
    fn deterministic_components_on_k4() {
        let k4 = complete(4);
        assert_eq!(clique_upper_matching(&k4), 4);
        assert_eq!(clique_upper_inertia(&k4), Some(4));
        assert_eq!(clique_upper_degeneracy(&k4), 4);
        assert_eq!(clique_upper_deterministic(&k4), 4);
    }

    #[test]
    fn deterministic_on_c5_uses_spectrum() {
        // complement(C5) is a 5-cycle: eigenvalues 2, 0.618 (x2), -1.618 (x2)
        assert_eq!(clique_upper_inertia(&c5()), Some(2));
        assert_eq!(clique_upper_matching(&c5()), 3);
        assert_eq!(clique_upper_degeneracy(&c5()), 3);
        assert_eq!(clique_upper_deterministic(&c5()), 2);
    }

    #[test]
    fn deterministic_on_edgeless() {
        assert_eq!(clique_upper_deterministic(&Graph::empty(3)), 1);
        assert_eq!(clique_upper_deterministic(&Graph::empty(0)), 0);
    }

    #[test]
    fn heuristic_lower() {
        assert_eq!(clique_lower_heuristic(&complete(4)), 4);
        assert_eq!(clique_lower_heuristic(&c5()), 2);
        assert_eq!(clique_lower_heuristic(&Graph::empty(0)), 0);
    }

    #[test]
    fn cover_bound_examples() {
        assert_eq!(cover_bounds(&complete(2)), (1, 1));
        assert_eq!(cover_bounds(&Graph::empty(4)), (0, 0));
        assert_eq!(cover_bounds(&c5()), (3, 3));
    }

    #[test]
    fn report_on_c5() {
        let report = BoundReport::compute(&c5());
        assert_eq!(report.clique_upper, 2);
        assert_eq!(report.clique_lower, 2);
        assert_eq!((report.cover_lower, report.cover_upper), (3, 3));
        assert_eq!(report.sources[0], "deterministic");
    }

    #[test]
    fn selection_parsing() {
        assert_eq!("both".parse::<BoundSelection>(), Ok(BoundSelection::Both));
        assert!("lovasz".parse::<BoundSelection>().is_err());
        assert!(!BoundSelection::None.is_enabled());
        assert_eq!(clique_upper(&complete(3), BoundSelection::None), 3);
    }
}
