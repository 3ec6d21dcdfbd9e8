use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qdecomp::decomposer::{DecompError, EngineConfig, IncumbentSource, Selection};
use qdecomp::harness::{self, ExperimentSpec, Preset};
use qdecomp::io::{read_dimacs, read_edge_list, write_edge_list};
use qdecomp::reductions::parse_reductions;
use qdecomp::{AnnealParams, BoundSelection, Graph, LeafKind, Problem, Qubo, SolverError};

#[derive(Parser)]
#[command(
    name = "qdecomp",
    version,
    about = "Exact maximum clique and minimum vertex cover by decomposition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one graph and print the result document.
    Solve(SolveArgs),
    /// Write a seeded Erdos-Renyi graph as an edge list.
    Generate(GenerateArgs),
    /// Run a parameter sweep over random graphs and write CSV.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dimacs,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverKind {
    Exact,
    Anneal,
}

#[derive(Args)]
struct LeafArgs {
    /// Leaf solver.
    #[arg(long, value_enum, default_value = "exact")]
    solver: SolverKind,
    /// Annealer reads per leaf.
    #[arg(long)]
    reads: Option<usize>,
    /// Annealer sweeps per read.
    #[arg(long)]
    sweeps: Option<usize>,
}

impl LeafArgs {
    fn kind(&self) -> Result<LeafKind, CliError> {
        if matches!(self.solver, SolverKind::Exact)
            && (self.reads.is_some() || self.sweeps.is_some())
        {
            return Err(CliError::Usage(
                "--reads and --sweeps require --solver anneal".into(),
            ));
        }
        Ok(match self.solver {
            SolverKind::Exact => LeafKind::Exact,
            SolverKind::Anneal => {
                let defaults = AnnealParams::default();
                let params = AnnealParams {
                    num_reads: self.reads.unwrap_or(defaults.num_reads),
                    sweeps: self.sweeps.unwrap_or(defaults.sweeps),
                    ..defaults
                };
                if params.num_reads == 0 || params.sweeps == 0 {
                    return Err(CliError::Usage(
                        "--reads and --sweeps must be positive".into(),
                    ));
                }
                LeafKind::Anneal(params)
            }
        })
    }
}

#[derive(Args)]
struct SolveArgs {
    /// Graph file.
    #[arg(long)]
    input: PathBuf,
    /// Input format; guessed from the extension when omitted (.clq/.dimacs/.col are DIMACS).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// mc or mvc.
    #[arg(long, value_parser = Problem::from_str)]
    problem: Option<Problem>,
    /// dbk or dbr; individual flags override preset values.
    #[arg(long, value_parser = Preset::from_str)]
    preset: Option<Preset>,
    /// Largest subproblem handed to the leaf solver.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Splitting vertex: low, median, high or random degree.
    #[arg(long, value_parser = Selection::from_str)]
    select: Option<Selection>,
    /// Pruning bounds: none, chromatic, deterministic or both.
    #[arg(long, value_parser = BoundSelection::from_str)]
    bounds: Option<BoundSelection>,
    /// decomposition or heuristic.
    #[arg(long, value_parser = IncumbentSource::from_str)]
    incumbent: Option<IncumbentSource>,
    /// Comma separated list of kcore, edge-kcore, persistency, nbvr, or none.
    #[arg(long)]
    reductions: Option<String>,
    #[command(flatten)]
    leaf: LeafArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Threads exploring the decomposition tree.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Annealer time per leaf used for the predicted runtime.
    #[arg(long)]
    anneal_seconds: Option<f64>,
    /// Also write the QUBO of the whole input graph to this file.
    #[arg(long)]
    dump_qubo: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    output: Output,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    /// Edge probability.
    #[arg(long)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Graph sizes: a comma list or start:end:step.
    #[arg(long, default_value = "100")]
    n_range: String,
    /// Edge densities: a comma list or start:end:step.
    #[arg(long, default_value = "0.1:0.9:0.1")]
    density_range: String,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Comma separated cutoffs.
    #[arg(long, default_value = "46")]
    cutoffs: String,
    /// Comma separated selection strategies.
    #[arg(long, default_value = "low,median,high,random")]
    strategies: String,
    #[arg(long, value_parser = Preset::from_str, default_value = "dbk")]
    preset: Preset,
    #[command(flatten)]
    leaf: LeafArgs,
    /// Master seed from which every graph seed is derived.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trials run concurrently.
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    anneal_seconds: Option<f64>,
    /// Report zero preprocessing time so output depends on the seed alone.
    #[arg(long)]
    zero_timings: bool,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Parse(String),
    Limit(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Limit(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Limit(m) | CliError::Io(m) => m,
        }
    }
}

impl From<DecompError> for CliError {
    fn from(e: DecompError) -> Self {
        match e {
            DecompError::Leaf {
                source: SolverError::TooLarge { .. },
                ..
            } => CliError::Limit(e.to_string()),
            other => CliError::Io(other.to_string()),
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    let result = match path {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    result.map_err(|e| CliError::Io(format!("cannot write output: {e}")))
}

fn read_graph(path: &Path, format: Option<Format>) -> Result<Graph, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let format = format.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some("clq" | "dimacs" | "col") => Format::Dimacs,
        _ => Format::Edgelist,
    });
    let parsed = match format {
        Format::Dimacs => read_dimacs(&text),
        Format::Edgelist => read_edge_list(&text),
    };
    parsed.map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn solve(args: SolveArgs) -> Result<(), CliError> {
    let problem = match (args.problem, args.preset) {
        (Some(p), Some(preset)) if p != preset.problem() => {
            return Err(CliError::Usage(format!(
                "preset {} solves {}, not {}",
                preset.name(),
                preset.problem().name(),
                p.name()
            )))
        }
        (Some(p), _) => p,
        (None, Some(preset)) => preset.problem(),
        (None, None) => {
            return Err(CliError::Usage(
                "either --problem or --preset is required".into(),
            ))
        }
    };
    let mut cfg = args.preset.map(Preset::config).unwrap_or_default();
    if let Some(cutoff) = args.cutoff {
        if cutoff == 0 {
            return Err(CliError::Usage("--cutoff must be positive".into()));
        }
        cfg.cutoff = cutoff;
    }
    if let Some(select) = args.select {
        cfg.selection = select;
    }
    if let Some(bounds) = args.bounds {
        cfg.bounds = bounds;
    }
    if let Some(incumbent) = args.incumbent {
        cfg.incumbent = incumbent;
    }
    if let Some(list) = &args.reductions {
        cfg.reductions = parse_reductions(list).map_err(CliError::Usage)?;
    }
    if let Some(bad) = cfg.reductions.iter().find(|r| !r.supports(problem)) {
        return Err(CliError::Usage(format!(
            "reduction {} does not apply to {}",
            bad.name(),
            problem.name()
        )));
    }
    if args.workers == 0 {
        return Err(CliError::Usage("--workers must be positive".into()));
    }
    cfg.workers = args.workers;
    cfg.seed = args.seed;
    if let Some(seconds) = args.anneal_seconds {
        if seconds.is_nan() || seconds < 0.0 {
            return Err(CliError::Usage(
                "--anneal-seconds must be non-negative".into(),
            ));
        }
        cfg.anneal_seconds = seconds;
    }
    let leaf = args.leaf.kind()?;

    let g = read_graph(&args.input, args.format)?;
    if let Some(path) = &args.dump_qubo {
        let q = match problem {
            Problem::MaxClique => Qubo::max_clique(&g),
            Problem::MinVertexCover => Qubo::min_vertex_cover(&g),
        };
        fs::write(path, q.to_text())
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    let input = args.input.display().to_string();
    let (report, _) = harness::run_single(&g, &input, problem, &cfg, leaf)?;
    let text = match args.output {
        Output::Json => report.to_json() + "\n",
        Output::Csv => harness::report_csv(&report),
    };
    write_output(None, &text)
}

fn generate(args: GenerateArgs) -> Result<(), CliError> {
    if !(0.0..=1.0).contains(&args.p) {
        return Err(CliError::Usage("--p must lie in [0, 1]".into()));
    }
    let g = Graph::erdos_renyi(args.n, args.p, args.seed);
    write_output(args.out.as_deref(), &write_edge_list(&g))
}

/// Parses `a,b,c` or `start:end:step` (inclusive end).
fn parse_grid<T>(text: &str, what: &str) -> Result<Vec<T>, CliError>
where
    T: FromStr + Copy + Into<f64> + PartialOrd,
{
    let bad = || CliError::Usage(format!("invalid {what} {text:?}"));
    let parse = |s: &str| s.trim().parse::<T>().map_err(|_| bad());
    let parts: Vec<&str> = text.split(':').collect();
    let values = match parts.as_slice() {
        [list] => list.split(',').map(parse).collect::<Result<Vec<T>, _>>()?,
        [start, end, step] => {
            let (start, end, step) = (
                parse(start)?.into(),
                parse(end)?.into(),
                parse(step)?.into(),
            );
            if step.is_nan() || step <= 0.0 || end < start {
                return Err(bad());
            }
            let count = ((end - start) / step + 1e-9).floor() as usize + 1;
            (0..count)
                .map(|k| {
                    // round to kill accumulated binary noise (0.30000000000000004)
                    let x = start + k as f64 * step;
                    let x = (x * 1e9).round() / 1e9;
                    parse(&x.to_string())
                })
                .collect::<Result<Vec<T>, _>>()?
        }
        _ => return Err(bad()),
    };
    if values.is_empty() {
        return Err(bad());
    }
    Ok(values)
}

fn experiment(args: ExperimentArgs) -> Result<(), CliError> {
    let sizes: Vec<u32> = parse_grid(&args.n_range, "--n-range")?;
    let densities: Vec<f64> = parse_grid(&args.density_range, "--density-range")?;
    if densities.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(CliError::Usage("densities must lie in [0, 1]".into()));
    }
    let cutoffs: Vec<u32> = parse_grid(&args.cutoffs, "--cutoffs")?;
    if cutoffs.contains(&0) {
        return Err(CliError::Usage("cutoffs must be positive".into()));
    }
    let strategies = args
        .strategies
        .split(',')
        .map(|s| s.trim().parse::<Selection>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::Usage)?;
    if args.trials == 0 || args.workers == 0 {
        return Err(CliError::Usage(
            "--trials and --workers must be positive".into(),
        ));
    }
    let mut spec = ExperimentSpec::from_preset(args.preset);
    spec.sizes = sizes.into_iter().map(|n| n as usize).collect();
    spec.densities = densities;
    spec.trials = args.trials;
    spec.strategies = strategies;
    spec.cutoffs = cutoffs.into_iter().map(|c| c as usize).collect();
    spec.leaf = args.leaf.kind()?;
    spec.master_seed = args.seed;
    spec.workers = args.workers;
    spec.zero_timings = args.zero_timings;
    if let Some(seconds) = args.anneal_seconds {
        spec.base = EngineConfig {
            anneal_seconds: seconds,
            ..spec.base
        };
    }
    let records = harness::run_experiment(&spec)?;
    let mut buf = Vec::new();
    harness::write_experiment_csv(&records, &mut buf).map_err(|e| CliError::Io(e.to_string()))?;
    write_output(
        args.out.as_deref(),
        &String::from_utf8(buf).expect("csv is utf-8"),
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => solve(args),
        Command::Generate(args) => generate(args),
        Command::Experiment(args) => experiment(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qdecomp: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
