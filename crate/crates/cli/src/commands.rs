use std::fmt;
use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, Context};
use callclust_core::rng::{stream_rng, Stream};
use callclust_core::{
    full_report, generate_random_graph, greedy_clustering, load_edge_list,
    monte_carlo_clustering, run_ga, Clustering, ClusteringDocument, GaConfig, Graph,
    MetricsReport,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::{Algorithm, CompareArgs, GenerateArgs, InputSource, MetricsArgs, RunArgs};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const DEFAULT_TRIALS: usize = 100;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or infeasible parameters.
    Usage(anyhow::Error),
    /// Unreadable or malformed input, invalid clustering.
    Input(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(e) | CliError::Input(e) => write!(f, "{e:#}"),
        }
    }
}

type CliResult<T = ()> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(anyhow!(msg.into()))
}

#[derive(Serialize)]
struct RunReport {
    algorithm: &'static str,
    seed: u64,
    vertices: usize,
    edges: usize,
    #[serde(flatten)]
    metrics: MetricsReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed_metrics: Option<MetricsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trials: Option<usize>,
}

fn algorithm_name(algo: Algorithm) -> &'static str {
    match algo {
        Algorithm::Greedy => "greedy",
        Algorithm::Ga => "ga",
        Algorithm::Mc => "mc",
    }
}

fn resolve_seed(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random();
        eprintln!("seed: {s}");
        s
    })
}

fn load_graph(source: &InputSource, seed: u64) -> CliResult<Graph> {
    match (&source.input, source.gen) {
        (Some(path), _) => read_graph(path),
        (None, Some((n, m))) => {
            generate_random_graph(n, m, &mut stream_rng(seed, Stream::GraphGeneration))
                .map_err(|e| CliError::Usage(e.into()))
        }
        (None, None) => Err(usage("one of --input or --gen is required")),
    }
}

fn read_graph(path: &Path) -> CliResult<Graph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(CliError::Input)?;
    load_edge_list(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(CliError::Input)
}

fn write_output(path: Option<&Path>, contents: &str) -> CliResult {
    match path {
        Some(path) => fs::write(path, contents)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(CliError::Input),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn ga_config(
    seed: u64,
    epsilon: Option<f64>,
    patience: Option<usize>,
    max_iter: Option<usize>,
) -> CliResult<GaConfig> {
    let defaults = GaConfig::default();
    let config = GaConfig {
        epsilon: epsilon.unwrap_or(defaults.epsilon),
        patience: patience.unwrap_or(defaults.patience),
        max_iterations: max_iter.unwrap_or(defaults.max_iterations),
        seed,
    };
    config.validate().map_err(|e| CliError::Usage(e.into()))?;
    Ok(config)
}

/// Reject flags that belong to a different algorithm.
fn check_algorithm_flags(args: &RunArgs) -> CliResult {
    let ga_only = [
        ("--epsilon", args.epsilon.is_some()),
        ("--patience", args.patience.is_some()),
        ("--max-iter", args.max_iter.is_some()),
        ("--trace", args.trace.is_some()),
    ];
    if args.algo != Algorithm::Ga {
        if let Some((flag, _)) = ga_only.iter().find(|(_, set)| *set) {
            return Err(usage(format!("{flag} only applies to --algo ga")));
        }
    }
    if args.algo != Algorithm::Mc && args.trials.is_some() {
        return Err(usage("--trials only applies to --algo mc"));
    }
    Ok(())
}

pub fn run(args: RunArgs) -> CliResult {
    check_algorithm_flags(&args)?;
    let seed = resolve_seed(args.seed);
    let graph = load_graph(&args.source, seed)?;
    if graph.vertex_count() == 0 {
        return Err(CliError::Input(anyhow!("graph has no vertices")));
    }

    let mut report = RunReport {
        algorithm: algorithm_name(args.algo),
        seed,
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        metrics: MetricsReport { kal: 0, cc: 0.0, cpl: 0.0, cluster_count: 0 },
        seed_metrics: None,
        iterations: None,
        trials: None,
    };

    let clustering = match args.algo {
        Algorithm::Greedy => greedy_clustering(&graph),
        Algorithm::Mc => {
            let trials = args.trials.unwrap_or(DEFAULT_TRIALS);
            if trials == 0 {
                return Err(usage("--trials must be at least 1"));
            }
            report.trials = Some(trials);
            monte_carlo_clustering(&graph, trials, &mut stream_rng(seed, Stream::MonteCarlo))
        }
        Algorithm::Ga => {
            let config = ga_config(seed, args.epsilon, args.patience, args.max_iter)?;
            let run = run_ga(&graph, &config).map_err(|e| CliError::Input(e.into()))?;
            report.seed_metrics = Some(run.seed_report);
            report.iterations = Some(run.trace.iterations.len());
            if let Some(path) = &args.trace {
                write_output(Some(path), &run.trace.to_csv())?;
            }
            run.clustering
        }
    };
    report.metrics = full_report(&graph, &clustering).map_err(|e| CliError::Input(e.into()))?;

    if let Some(path) = &args.clusters {
        write_clustering(path, &clustering, &graph)?;
    }
    write_output(args.report.as_deref(), &to_json(&report))
}

fn write_clustering(path: &Path, c: &Clustering, g: &Graph) -> CliResult {
    let doc = ClusteringDocument::from_clustering(c, g);
    let mut text = serde_json::to_string(&doc).expect("clusterings serialize");
    text.push('\n');
    write_output(Some(path), &text)
}

pub fn metrics(args: MetricsArgs) -> CliResult {
    let graph = read_graph(&args.input)?;
    let text = fs::read_to_string(&args.clustering)
        .with_context(|| format!("reading {}", args.clustering.display()))
        .map_err(CliError::Input)?;
    let doc: ClusteringDocument = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", args.clustering.display()))
        .map_err(CliError::Input)?;
    let clustering = doc
        .to_clustering(&graph)
        .with_context(|| format!("validating {}", args.clustering.display()))
        .map_err(CliError::Input)?;
    let report = full_report(&graph, &clustering).map_err(|e| CliError::Input(e.into()))?;
    write_output(args.report.as_deref(), &to_json(&report))
}

pub fn generate(args: GenerateArgs) -> CliResult {
    let seed = resolve_seed(args.seed);
    let (n, m) = args.gen;
    let graph = generate_random_graph(n, m, &mut stream_rng(seed, Stream::GraphGeneration))
        .map_err(|e| CliError::Usage(e.into()))?;
    let mut text = format!("# random graph n={n} m={m} seed={seed}\n");
    text.push_str(&graph.to_edge_list());
    write_output(Some(&args.out), &text)
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    algo: Algorithm,
    seed: u64,
}

struct Row {
    cell: Cell,
    report: MetricsReport,
    iterations: usize,
    wall_ms: f64,
}

pub const COMPARE_HEADER: &str = "algorithm,seed,kal,cc,cpl,cluster_count,iterations,wall_ms";

pub fn compare(args: CompareArgs) -> CliResult {
    if args.seeds.is_empty() {
        return Err(usage("--seeds must list at least one seed"));
    }
    if args.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let graph = load_graph(&args.source, args.graph_seed)?;
    if graph.vertex_count() == 0 {
        return Err(CliError::Input(anyhow!("graph has no vertices")));
    }
    // Validate GA flags once, before fanning out.
    ga_config(0, args.epsilon, args.patience, args.max_iter)?;

    let cells: Vec<Cell> = args
        .seeds
        .iter()
        .flat_map(|&seed| {
            [Algorithm::Greedy, Algorithm::Ga, Algorithm::Mc]
                .map(|algo| Cell { algo, seed })
        })
        .collect();

    let rows: Vec<Row> = cells
        .par_iter()
        .map(|&cell| -> CliResult<Row> {
            let start = Instant::now();
            let (clustering, iterations) = match cell.algo {
                Algorithm::Greedy => (greedy_clustering(&graph), 0),
                Algorithm::Mc => (
                    monte_carlo_clustering(
                        &graph,
                        args.trials,
                        &mut stream_rng(cell.seed, Stream::MonteCarlo),
                    ),
                    args.trials,
                ),
                Algorithm::Ga => {
                    let config = ga_config(cell.seed, args.epsilon, args.patience, args.max_iter)?;
                    let run = run_ga(&graph, &config).map_err(|e| CliError::Input(e.into()))?;
                    let iterations = run.trace.iterations.len();
                    (run.clustering, iterations)
                }
            };
            let report = full_report(&graph, &clustering).map_err(|e| CliError::Input(e.into()))?;
            Ok(Row {
                cell,
                report,
                iterations,
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect::<CliResult<_>>()?;

    let mut csv = String::from(COMPARE_HEADER);
    csv.push('\n');
    for r in rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{:.3}\n",
            algorithm_name(r.cell.algo),
            r.cell.seed,
            r.report.kal,
            r.report.cc,
            r.report.cpl,
            r.report.cluster_count,
            r.iterations,
            r.wall_ms
        ));
    }
    write_output(args.out.as_deref(), &csv)
}
