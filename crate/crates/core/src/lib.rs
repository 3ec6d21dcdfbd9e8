//! Exact maximum clique and minimum vertex cover by recursive decomposition
//! into subproblems small enough for a fixed-capacity leaf solver.
//!
//! The leaf solver is either an exact bitmask branch and bound or a simulated
//! annealer over the QUBO form of the subproblem. Bounds and reductions prune
//! the decomposition tree; the number of leaves drives the predicted runtime
//! on annealing hardware.

pub mod bounds;
pub mod decomposer;
pub mod graph;
pub mod harness;
pub mod io;
pub mod metrics;
pub mod problem;
pub mod qubo;
pub mod reductions;
pub mod rng;
pub mod solvers;

pub use bounds::BoundSelection;
pub use decomposer::{
    decompose_and_solve, DecompError, EngineConfig, IncumbentSource, Selection, Traversal,
};
pub use graph::{Graph, GraphError, Label, VertexSet};
pub use metrics::{predicted_time, RunMetrics};
pub use problem::{Problem, Solution, Subproblem};
pub use qubo::{Ising, Qubo};
pub use reductions::Reduction;
pub use solvers::{AnnealParams, LeafKind, LeafSolver, SolverError};
