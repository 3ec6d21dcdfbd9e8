use serde::Serialize;

/// Per-leaf annealer access time assumed by the runtime model, in seconds.
pub const DEFAULT_ANNEAL_SECONDS: f64 = 1.6;

/// Predicted solution time: every leaf costs one annealer call on top of the
/// classical preprocessing.
pub fn predicted_time(leaf_count: usize, preprocessing_seconds: f64, anneal_seconds: f64) -> f64 {
    leaf_count as f64 * anneal_seconds + preprocessing_seconds
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct RunMetrics {
    /// Leaf subproblems handed to the leaf solver (the subgraph count).
    pub leaf_count: usize,
    /// Wall time of the run minus time spent inside leaf solves.
    pub preprocessing_seconds: f64,
    pub predicted_seconds: f64,
    pub leaf_seconds: f64,
    /// Internal nodes that were split.
    pub split_count: usize,
    pub pruned_count: usize,
    pub reduced_vertices: usize,
    pub reduced_edges: usize,
    /// Times the incumbent strictly improved.
    pub incumbent_updates: usize,
    pub max_depth: usize,
}
