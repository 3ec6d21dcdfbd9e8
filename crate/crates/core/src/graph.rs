//! Undirected simple graphs with label bookkeeping.
//!
//! Every [`Graph`] keeps the original vertex label of each internal index, so
//! induced subgraphs produced deep inside a decomposition can be mapped back to
//! the input instance. Internal indices are always ordered by ascending label.

use std::collections::BTreeSet;

use rand::Rng;

use crate::rng;

/// Original vertex identifier, as found in the input graph.
pub type Label = usize;

/// A set of original vertex labels (clique candidates, cover candidates).
pub type VertexSet = BTreeSet<Label>;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    LabelOutOfRange { u: usize, v: usize, n: usize },
    #[error("edge ({v}, {v}) is a self-loop")]
    SelfLoop { v: usize },
    #[error("vertex label {0} is not part of the graph")]
    UnknownLabel(Label),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Vec<Label>,
    edge_count: usize,
}

impl Graph {
    /// Graph with `n` isolated vertices labelled `0..n`.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            labels: (0..n).collect(),
            edge_count: 0,
        }
    }

    /// Builds a graph on labels `0..n`. Duplicate edges (in either orientation)
    /// are collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::LabelOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v });
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_parts(adj, (0..n).collect()))
    }

    /// Sorts and dedups neighbor lists; `labels` must be strictly increasing.
    fn from_parts(mut adj: Vec<Vec<usize>>, labels: Vec<Label>) -> Self {
        debug_assert_eq!(adj.len(), labels.len());
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let mut degree_sum = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            degree_sum += list.len();
        }
        Graph {
            adj,
            labels,
            edge_count: degree_sum / 2,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> Label {
        self.labels[index]
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn label_set(&self) -> VertexSet {
        self.labels.iter().copied().collect()
    }

    pub fn neighbors(&self, index: usize) -> &[usize] {
        &self.adj[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.adj[index].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as internal index pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Edges as label pairs, smaller label first.
    pub fn label_edges(&self) -> Vec<(Label, Label)> {
        self.edges()
            .map(|(u, v)| (self.labels[u], self.labels[v]))
            .collect()
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let mut adj = Vec::with_capacity(n);
        for u in 0..n {
            let mut present = vec![false; n];
            present[u] = true;
            for &v in &self.adj[u] {
                present[v] = true;
            }
            adj.push((0..n).filter(|&v| !present[v]).collect());
        }
        Self::from_parts(adj, self.labels.clone())
    }

    /// Subgraph induced by a set of labels of this graph.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<Graph, GraphError> {
        let mut indices = Vec::with_capacity(keep.len());
        for &label in keep {
            indices.push(
                self.index_of(label)
                    .ok_or(GraphError::UnknownLabel(label))?,
            );
        }
        Ok(self.induced_by_indices(&indices))
    }

    /// Subgraph induced by internal indices; `indices` must be sorted and unique.
    pub fn induced_by_indices(&self, indices: &[usize]) -> Graph {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        let mut remap = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in indices.iter().enumerate() {
            remap[old] = new;
        }
        let adj = indices
            .iter()
            .map(|&old| {
                self.adj[old]
                    .iter()
                    .filter_map(|&w| (remap[w] != usize::MAX).then_some(remap[w]))
                    .collect()
            })
            .collect();
        let labels = indices.iter().map(|&i| self.labels[i]).collect();
        Self::from_parts(adj, labels)
    }

    /// Subgraph induced by all vertices whose `drop` flag is false.
    pub fn without(&self, drop: &[bool]) -> Graph {
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&i| !drop[i]).collect();
        self.induced_by_indices(&keep)
    }

    /// Same vertex set, keeping only edges for which `keep(u, v)` holds.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Graph {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for (u, v) in self.edges() {
            if keep(u, v) {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        Self::from_parts(adj, self.labels.clone())
    }

    /// Maximal induced subgraph in which every vertex has degree at least `k`.
    pub fn k_core(&self, k: usize) -> Graph {
        let n = self.vertex_count();
        let mut degree = self.degrees();
        let mut removed = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&v| degree[v] < k).collect();
        for &v in &stack {
            removed[v] = true;
        }
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !removed[w] {
                    degree[w] -= 1;
                    if degree[w] < k {
                        removed[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        self.without(&removed)
    }

    /// Degeneracy and the peeling order (labels) that witnesses it.
    ///
    /// Each step removes a vertex of minimum remaining degree (smallest index on
    /// ties); the degeneracy is the largest such minimum seen.
    pub fn degeneracy(&self) -> (usize, Vec<Label>) {
        let n = self.vertex_count();
        if n == 0 {
            return (0, Vec::new());
        }
        let mut degree = self.degrees();
        let max_degree = degree.iter().copied().max().unwrap_or(0);
        let mut buckets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); max_degree + 1];
        for (v, &d) in degree.iter().enumerate() {
            buckets[d].insert(v);
        }
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut degeneracy = 0;
        let mut low = 0;
        for _ in 0..n {
            while buckets[low].is_empty() {
                low += 1;
            }
            let v = buckets[low].pop_first().expect("bucket is non-empty");
            degeneracy = degeneracy.max(low);
            removed[v] = true;
            order.push(self.labels[v]);
            for &w in &self.adj[v] {
                if !removed[w] {
                    buckets[degree[w]].remove(&w);
                    degree[w] -= 1;
                    buckets[degree[w]].insert(w);
                }
            }
            low = low.saturating_sub(1);
        }
        (degeneracy, order)
    }

    /// Greedy proper coloring; returns the number of colors used.
    ///
    /// Vertices are visited by non-increasing degree (smallest label first on
    /// ties) and receive the smallest color not used by a colored neighbor.
    pub fn greedy_coloring(&self) -> usize {
        self.greedy_color_classes()
            .into_iter()
            .max()
            .map_or(0, |c| c + 1)
    }

    /// Color of each vertex under the coloring of [`Graph::greedy_coloring`].
    pub fn greedy_color_classes(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(self.degree(v)), v));
        let mut color = vec![usize::MAX; n];
        let mut used = vec![usize::MAX; n + 1];
        for v in order {
            for &w in &self.adj[v] {
                if color[w] != usize::MAX {
                    used[color[w]] = v;
                }
            }
            color[v] = (0..).find(|&c| used[c] != v).expect("some color is free");
        }
        color
    }

    /// Greedy maximal matching over edges in lexicographic label order.
    pub fn maximal_matching(&self) -> Vec<(Label, Label)> {
        let mut matched = vec![false; self.vertex_count()];
        let mut matching = Vec::new();
        for (u, v) in self.edges() {
            if !matched[u] && !matched[v] {
                matched[u] = true;
                matched[v] = true;
                matching.push((self.labels[u], self.labels[v]));
            }
        }
        matching
    }

    /// Greedy clique: repeatedly takes the candidate with the most neighbors
    /// among the remaining candidates, then shrinks the candidates to its
    /// neighborhood.
    pub fn greedy_clique(&self) -> VertexSet {
        let n = self.vertex_count();
        let mut candidate = vec![true; n];
        let mut remaining = n;
        let mut clique = VertexSet::new();
        while remaining > 0 {
            let best = (0..n)
                .filter(|&v| candidate[v])
                .max_by_key(|&v| {
                    let inside = self.adj[v].iter().filter(|&&w| candidate[w]).count();
                    (inside, std::cmp::Reverse(v))
                })
                .expect("at least one candidate remains");
            clique.insert(self.labels[best]);
            let mut next = vec![false; n];
            for &w in &self.adj[best] {
                next[w] = candidate[w];
            }
            candidate = next;
            remaining = candidate.iter().filter(|&&c| c).count();
        }
        clique
    }

    /// True when every pair of the given labels is adjacent.
    pub fn is_clique(&self, set: &VertexSet) -> bool {
        let Some(indices) = self.indices_of(set) else {
            return false;
        };
        indices
            .iter()
            .enumerate()
            .all(|(a, &u)| indices[a + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// True when every edge has at least one endpoint in the given labels.
    pub fn is_vertex_cover(&self, set: &VertexSet) -> bool {
        self.edges()
            .all(|(u, v)| set.contains(&self.labels[u]) || set.contains(&self.labels[v]))
    }

    fn indices_of(&self, set: &VertexSet) -> Option<Vec<usize>> {
        set.iter().map(|&l| self.index_of(l)).collect()
    }

    /// G(n, p) random graph: pairs `(i, j)`, `i < j`, are visited in
    /// lexicographic order and each becomes an edge iff the next uniform draw
    /// from the seeded ChaCha8 stream is below `p`.
    pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
        let mut rng = rng::seeded(seed);
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen::<f64>() < p {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        Self::from_parts(adj, (0..n).collect())
    }
}
