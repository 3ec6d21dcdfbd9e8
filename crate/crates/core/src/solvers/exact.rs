//! Exact maximum clique by bitmask branch and bound.
//!
//! Vertices are branched in ascending index order and only strict
//! improvements are recorded, so the first maximum clique found is the
//! lexicographically smallest one. Pruning uses a greedy coloring of the
//! remaining candidates.

use crate::graph::{Graph, VertexSet};
use crate::problem::Solution;

use super::SolverError;

/// Largest graph the bitmask solver accepts.
pub const EXACT_LIMIT: usize = 64;

fn check_size(g: &Graph) -> Result<(), SolverError> {
    if g.vertex_count() > EXACT_LIMIT {
        return Err(SolverError::TooLarge {
            vertices: g.vertex_count(),
            limit: EXACT_LIMIT,
        });
    }
    Ok(())
}

fn bitmask_adjacency(g: &Graph) -> Vec<u64> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

/// Number of colors a greedy sequential coloring needs for `candidates`.
fn color_bound(adj: &[u64], mut candidates: u64) -> usize {
    let mut colors = 0;
    while candidates != 0 {
        colors += 1;
        let mut available = candidates;
        while available != 0 {
            let v = available.trailing_zeros() as usize;
            let bit = 1u64 << v;
            candidates &= !bit;
            available &= !bit & !adj[v];
        }
    }
    colors
}

struct Search<'a> {
    adj: &'a [u64],
    current: Vec<usize>,
    best: Vec<usize>,
}

impl Search<'_> {
    fn expand(&mut self, mut candidates: u64) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        while candidates != 0 {
            if self.current.len() + color_bound(self.adj, candidates) <= self.best.len() {
                return;
            }
            let v = candidates.trailing_zeros() as usize;
            candidates &= !(1u64 << v);
            self.current.push(v);
            self.expand(candidates & self.adj[v]);
            self.current.pop();
        }
    }
}

/// A maximum clique; the lexicographically smallest among all maximum ones.
pub fn exact_mc(g: &Graph) -> Result<Solution, SolverError> {
    check_size(g)?;
    let n = g.vertex_count();
    let adj = bitmask_adjacency(g);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = Search {
        adj: &adj,
        current: Vec::new(),
        best: Vec::new(),
    };
    search.expand(all);
    Ok(Solution::new(
        search.best.iter().map(|&v| g.label(v)).collect(),
    ))
}

/// A minimum vertex cover: the complement of a maximum clique of the
/// complement graph.
pub fn exact_mvc(g: &Graph) -> Result<Solution, SolverError> {
    check_size(g)?;
    let independent = exact_mc(&g.complement())?.vertices;
    let cover: VertexSet = g
        .labels()
        .iter()
        .copied()
        .filter(|l| !independent.contains(l))
        .collect();
    Ok(Solution::new(cover))
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
    fn clique_examples() {
        assert_eq!(exact_mc(&complete(4)).unwrap().value, 4);
        let c = exact_mc(&c5()).unwrap();
        assert_eq!(c.value, 2);
        assert_eq!(c.vertices, VertexSet::from([0, 1]));
        assert_eq!(
            exact_mc(&Graph::empty(3)).unwrap().vertices,
            VertexSet::from([0])
        );
        assert_eq!(exact_mc(&Graph::empty(0)).unwrap().value, 0);
    }

    #[test]
    fn cover_examples() {
        assert_eq!(exact_mvc(&complete(2)).unwrap().value, 1);
        let c = exact_mvc(&c5()).unwrap();
        assert_eq!(c.value, 3);
        assert!(c5().is_vertex_cover(&c.vertices));
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(exact_mvc(&star).unwrap().vertices, VertexSet::from([0]));
    }

    #[test]
    fn witness_uses_labels() {
        let g = complete(5)
            .induced_subgraph(&VertexSet::from([1, 3, 4]))
            .unwrap();
        assert_eq!(exact_mc(&g).unwrap().vertices, VertexSet::from([1, 3, 4]));
    }

    #[test]
    fn size_limit() {
        let err = exact_mc(&Graph::empty(65)).unwrap_err();
        assert_eq!(
            err,
            SolverError::TooLarge {
                vertices: 65,
                limit: 64
            }
        );
        assert!(err.to_string().contains("64"));
        assert_eq!(exact_mc(&complete(64)).unwrap().value, 64);
    }

    #[test]
    fn lexicographically_smallest_witness() {
        // two triangles {2,3,4} and {0,5,6}; lexicographic order prefers the second
        let g = Graph::from_edges(7, &[(2, 3), (3, 4), (2, 4), (0, 5), (5, 6), (0, 6)]).unwrap();
        assert_eq!(exact_mc(&g).unwrap().vertices, VertexSet::from([0, 5, 6]));
    }
}
