//! Single runs and parameter sweeps, with their JSON and CSV outputs.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::BoundSelection;
use crate::decomposer::{
    decompose_and_solve, DecompError, EngineConfig, IncumbentSource, Selection,
};
use crate::graph::{Graph, Label};
use crate::metrics::RunMetrics;
use crate::problem::{Problem, Solution};
use crate::reductions::{reductions_name, Reduction};
use crate::rng;
use crate::solvers::{LeafKind, LeafSolver};

/// Named configurations used in the experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Clique: low-degree splitting, chromatic bounds, k-core reduction.
    Dbk,
    /// Cover: high-degree splitting, chromatic bounds, neighbor-based removal.
    Dbr,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Dbk => "dbk",
            Preset::Dbr => "dbr",
        }
    }

    pub fn problem(self) -> Problem {
        match self {
            Preset::Dbk => Problem::MaxClique,
            Preset::Dbr => Problem::MinVertexCover,
        }
    }

    pub fn config(self) -> EngineConfig {
        let (selection, reduction) = match self {
            Preset::Dbk => (Selection::Low, Reduction::KCore),
            Preset::Dbr => (Selection::High, Reduction::Nbvr),
        };
        EngineConfig {
            selection,
            bounds: BoundSelection::Chromatic,
            incumbent: IncumbentSource::Decomposition,
            reductions: vec![reduction],
            ..EngineConfig::default()
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dbk" => Ok(Preset::Dbk),
            "dbr" => Ok(Preset::Dbr),
            other => Err(format!("unknown preset {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub engine: EngineConfig,
    pub leaf: LeafKind,
    pub timing: &'static str,
}

/// Result document of a single solve.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub problem: Problem,
    pub input: String,
    pub n: usize,
    pub m: usize,
    pub objective: usize,
    pub solution_vertices: Vec<Label>,
    pub leaf_count: usize,
    pub preprocessing_seconds: f64,
    pub predicted_seconds: f64,
    pub config: RunConfig,
    pub seed: u64,
    #[serde(skip)]
    pub metrics: RunMetrics,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// How preprocessing time is measured; reported alongside every result.
pub const TIMING_NOTE: &str = "wall time minus leaf solve time";

pub fn run_single(
    g: &Graph,
    input: &str,
    problem: Problem,
    cfg: &EngineConfig,
    leaf: LeafKind,
) -> Result<(RunReport, Solution), DecompError> {
    let solver = LeafSolver::new(leaf);
    let (solution, metrics) = decompose_and_solve(g, problem, cfg, &solver)?;
    let report = RunReport {
        problem,
        input: input.to_string(),
        n: g.vertex_count(),
        m: g.edge_count(),
        objective: solution.value,
        solution_vertices: solution.vertices.iter().copied().collect(),
        leaf_count: metrics.leaf_count,
        preprocessing_seconds: metrics.preprocessing_seconds,
        predicted_seconds: metrics.predicted_seconds,
        config: RunConfig {
            engine: cfg.clone(),
            leaf,
            timing: TIMING_NOTE,
        },
        seed: cfg.seed,
        metrics,
    };
    Ok((report, solution))
}

/// One row per (graph, configuration) pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub n: usize,
    pub density: f64,
    pub seed: u64,
    pub problem: &'static str,
    pub strategy: &'static str,
    pub bounds: &'static str,
    pub reductions: String,
    pub cutoff: usize,
    pub objective: usize,
    pub leaf_count: usize,
    pub preprocessing_seconds: f64,
    pub predicted_seconds: f64,
}

pub const EXPERIMENT_HEADER: &str =
    "n,density,seed,problem,strategy,bounds,reductions,cutoff,objective,leaf_count,preprocessing_seconds,predicted_seconds";

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub sizes: Vec<usize>,
    pub densities: Vec<f64>,
    pub trials: usize,
    pub strategies: Vec<Selection>,
    pub cutoffs: Vec<usize>,
    pub problem: Problem,
    /// Template for every run; selection, cutoff and seed are overwritten.
    pub base: EngineConfig,
    pub leaf: LeafKind,
    pub master_seed: u64,
    /// Trials run concurrently on this many threads.
    pub workers: usize,
    /// Report zero timings so that output depends on the seed alone.
    pub zero_timings: bool,
}

impl ExperimentSpec {
    pub fn from_preset(preset: Preset) -> Self {
        ExperimentSpec {
            sizes: vec![100],
            densities: (1..=9).map(|k| k as f64 / 10.0).collect(),
            trials: 1,
            strategies: Selection::ALL.to_vec(),
            cutoffs: vec![46],
            problem: preset.problem(),
            base: preset.config(),
            leaf: LeafKind::Exact,
            master_seed: 0,
            workers: 1,
            zero_timings: false,
        }
    }

    /// Seed of the graph drawn for a grid cell and trial.
    pub fn graph_seed(&self, size_index: usize, density_index: usize, trial: usize) -> u64 {
        let cell = rng::mix(size_index as u64, density_index as u64);
        rng::mix(self.master_seed, rng::mix(cell, trial as u64))
    }

    fn runs(&self) -> Vec<(usize, f64, u64, Selection, usize)> {
        let mut runs = Vec::new();
        for (si, &n) in self.sizes.iter().enumerate() {
            for (di, &p) in self.densities.iter().enumerate() {
                for trial in 0..self.trials {
                    let seed = self.graph_seed(si, di, trial);
                    for &strategy in &self.strategies {
                        for &cutoff in &self.cutoffs {
                            runs.push((n, p, seed, strategy, cutoff));
                        }
                    }
                }
            }
        }
        runs
    }
}

/// Runs the whole grid. Rows come back in grid order (size, density, trial,
/// strategy, cutoff) regardless of how trials were scheduled.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<Vec<ExperimentRecord>, DecompError> {
    assert!(spec.trials >= 1, "need at least one trial");
    let run = |&(n, p, seed, strategy, cutoff): &(usize, f64, u64, Selection, usize)| {
        let g = Graph::erdos_renyi(n, p, seed);
        let cfg = EngineConfig {
            selection: strategy,
            cutoff,
            seed,
            workers: 1,
            ..spec.base.clone()
        };
        let (solution, metrics) =
            decompose_and_solve(&g, spec.problem, &cfg, &LeafSolver::new(spec.leaf))?;
        let (pre, predicted) = if spec.zero_timings {
            (
                0.0,
                crate::metrics::predicted_time(metrics.leaf_count, 0.0, cfg.anneal_seconds),
            )
        } else {
            (metrics.preprocessing_seconds, metrics.predicted_seconds)
        };
        Ok(ExperimentRecord {
            n,
            density: p,
            seed,
            problem: spec.problem.name(),
            strategy: strategy.name(),
            bounds: cfg.bounds.name(),
            reductions: reductions_name(&cfg.reductions),
            cutoff,
            objective: solution.value,
            leaf_count: metrics.leaf_count,
            preprocessing_seconds: pre,
            predicted_seconds: predicted,
        })
    };
    let runs = spec.runs();
    if spec.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(spec.workers)
            .build()
            .map_err(|e| DecompError::Pool(e.to_string()))?;
        pool.install(|| runs.par_iter().map(run).collect())
    } else {
        runs.iter().map(run).collect()
    }
}

pub fn write_experiment_csv<W: Write>(records: &[ExperimentRecord], out: W) -> csv::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    if records.is_empty() {
        writer.write_record(EXPERIMENT_HEADER.split(','))?;
    }
    for record in records {
        writer.serialize(record)?;
    }
    writer.flush()?;
    Ok(())
}

/// The single-run report as an experiment row.
pub fn report_csv(report: &RunReport) -> String {
    let record = ExperimentRecord {
        n: report.n,
        density: density(report.n, report.m),
        seed: report.seed,
        problem: report.problem.name(),
        strategy: report.config.engine.selection.name(),
        bounds: report.config.engine.bounds.name(),
        reductions: reductions_name(&report.config.engine.reductions),
        cutoff: report.config.engine.cutoff,
        objective: report.objective,
        leaf_count: report.leaf_count,
        preprocessing_seconds: report.preprocessing_seconds,
        predicted_seconds: report.predicted_seconds,
    };
    let mut buf = Vec::new();
    write_experiment_csv(&[record], &mut buf).expect("in-memory write");
    String::from_utf8(buf).expect("csv is utf-8")
}

pub fn density(n: usize, m: usize) -> f64 {
    if n < 2 {
        0.0
    } else {
        m as f64 / (n * (n - 1) / 2) as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_spec() -> ExperimentSpec {
        ExperimentSpec {
            sizes: vec![30],
            densities: vec![0.3, 0.6],
            trials: 2,
            strategies: vec![Selection::Low],
            cutoffs: vec![8],
            zero_timings: true,
            ..ExperimentSpec::from_preset(Preset::Dbk)
        }
    }

    #[test]
    fn presets() {
        let dbk = Preset::Dbk.config();
        assert_eq!(dbk.selection, Selection::Low);
        assert_eq!(dbk.reductions, vec![Reduction::KCore]);
        assert_eq!(Preset::Dbr.problem(), Problem::MinVertexCover);
        assert_eq!(Preset::Dbr.config().reductions, vec![Reduction::Nbvr]);
        assert_eq!("dbr".parse::<Preset>().unwrap(), Preset::Dbr);
    }

    #[test]
    fn row_count_and_order() {
        let rows = run_experiment(&small_spec()).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].density, 0.3);
        assert_eq!(rows[3].density, 0.6);
        assert_ne!(rows[0].seed, rows[1].seed);
    }

    #[test]
    fn csv_header_is_fixed() {
        let rows = run_experiment(&small_spec()).unwrap();
        let mut buf = Vec::new();
        write_experiment_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), EXPERIMENT_HEADER);
        assert_eq!(text.lines().count(), 5);

        let mut buf = Vec::new();
        write_experiment_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap().trim_end(),
            EXPERIMENT_HEADER
        );
    }

    #[test]
    fn parallel_trials_keep_grid_order() {
        let spec = small_spec();
        let parallel = ExperimentSpec {
            workers: 3,
            ..spec.clone()
        };
        assert_eq!(
            run_experiment(&spec).unwrap(),
            run_experiment(&parallel).unwrap()
        );
    }

    #[test]
    fn report_fields() {
        let k3 = Graph::empty(3).complement();
        let cfg = EngineConfig {
            cutoff: 2,
            ..Preset::Dbk.config()
        };
        let (report, _) = run_single(&k3, "k3", Problem::MaxClique, &cfg, LeafKind::Exact).unwrap();
        assert_eq!(report.objective, 3);
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        for key in [
            "problem",
            "input",
            "n",
            "m",
            "objective",
            "solution_vertices",
            "leaf_count",
            "preprocessing_seconds",
            "predicted_seconds",
            "config",
            "seed",
        ] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["problem"], "mc");
        assert_eq!(json["solution_vertices"], serde_json::json!([0, 1, 2]));
        assert!(report_csv(&report).starts_with(EXPERIMENT_HEADER));
    }
}
