use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Problem {
    #[serde(rename = "mc")]
    MaxClique,
    #[serde(rename = "mvc")]
    MinVertexCover,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::MaxClique => "mc",
            Problem::MinVertexCover => "mvc",
        }
    }

    /// True when `candidate` is strictly better than `current`.
    pub fn improves(self, candidate: usize, current: usize) -> bool {
        match self {
            Problem::MaxClique => candidate > current,
            Problem::MinVertexCover => candidate < current,
        }
    }

    pub fn is_feasible(self, g: &Graph, set: &VertexSet) -> bool {
        match self {
            Problem::MaxClique => g.is_clique(set),
            Problem::MinVertexCover => g.is_vertex_cover(set),
        }
    }
}

impl std::str::FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mc" => Ok(Problem::MaxClique),
            "mvc" => Ok(Problem::MinVertexCover),
            other => Err(format!("unknown problem {other:?}")),
        }
    }
}

/// A vertex set in original labels and its objective (clique or cover size).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub vertices: VertexSet,
    pub value: usize,
}

impl Solution {
    pub fn new(vertices: VertexSet) -> Self {
        let value = vertices.len();
        Solution { vertices, value }
    }
}

/// One node of the decomposition tree.
///
/// `committed` holds vertices already decided to be in the solution along
/// this branch; none of them appear in `graph`. `delta` is the objective
/// contribution of everything already decided.
#[derive(Debug, Clone, PartialEq)]
pub struct Subproblem {
    pub graph: Graph,
    pub committed: VertexSet,
    pub delta: usize,
    pub depth: usize,
}

impl Subproblem {
    pub fn root(graph: Graph) -> Self {
        Subproblem {
            graph,
            committed: VertexSet::new(),
            delta: 0,
            depth: 0,
        }
    }

    /// Combines a solution of `self.graph` with the committed part.
    pub fn lift(&self, local: Solution) -> Solution {
        let mut vertices = self.committed.clone();
        vertices.extend(local.vertices);
        Solution {
            vertices,
            value: self.delta + local.value,
        }
    }
}
