//! `callclust`: cluster call graphs from edge-list files.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "callclust", version, about = "Genetic-algorithm clustering of call graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cluster a graph with one algorithm and write its report.
    Run(RunArgs),
    /// Score an existing clustering of a graph.
    Metrics(MetricsArgs),
    /// Write a uniformly random graph in edge-list format.
    Generate(GenerateArgs),
    /// Compare greedy, GA and Monte Carlo over a list of seeds (CSV).
    Compare(CompareArgs),
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct InputSource {
    /// Edge-list file.
    #[arg(long)]
    input: Option<std::path::PathBuf>,
    /// Generate a random graph with `n` vertices and `m` edges.
    #[arg(long, value_name = "N,M", value_parser = parse_gen)]
    gen: Option<(usize, usize)>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Greedy,
    Ga,
    #[value(alias = "monte-carlo")]
    Mc,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    source: InputSource,
    #[arg(long, value_enum)]
    algo: Algorithm,
    /// Root seed for every random choice; sampled and printed when omitted.
    #[arg(long)]
    seed: Option<u64>,
    /// Mutation probability (GA only).
    #[arg(long)]
    epsilon: Option<f64>,
    /// Non-improving iterations before the GA stops (GA only).
    #[arg(long)]
    patience: Option<usize>,
    /// Iteration cap (GA only).
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
    /// Random restarts (Monte Carlo only).
    #[arg(long)]
    trials: Option<usize>,
    /// Report JSON path; stdout when omitted.
    #[arg(long)]
    report: Option<std::path::PathBuf>,
    /// Trace CSV path (GA only).
    #[arg(long)]
    trace: Option<std::path::PathBuf>,
    /// Write the resulting clustering as JSON.
    #[arg(long)]
    clusters: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
struct MetricsArgs {
    #[arg(long)]
    input: std::path::PathBuf,
    /// Clustering JSON: `{"clusters": [[...], ...]}`.
    #[arg(long)]
    clustering: std::path::PathBuf,
    #[arg(long)]
    report: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, value_name = "N,M", value_parser = parse_gen)]
    gen: (usize, usize),
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: std::path::PathBuf,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[command(flatten)]
    source: InputSource,
    /// Comma-separated seeds, one row per algorithm and seed.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4")]
    seeds: Vec<u64>,
    /// Seed for `--gen` graphs.
    #[arg(long, default_value_t = 0)]
    graph_seed: u64,
    #[arg(long, default_value_t = commands::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    patience: Option<usize>,
    #[arg(long = "max-iter")]
    max_iter: Option<usize>,
    /// CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn parse_gen(s: &str) -> Result<(usize, usize), String> {
    let (n, m) = s
        .split_once(',')
        .ok_or_else(|| format!("expected N,M, got `{s}`"))?;
    let n = n.trim().parse().map_err(|e| format!("bad N: {e}"))?;
    let m = m.trim().parse().map_err(|e| format!("bad M: {e}"))?;
    Ok((n, m))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(commands::EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Run(args) => commands::run(args),
        Command::Metrics(args) => commands::metrics(args),
        Command::Generate(args) => commands::generate(args),
        Command::Compare(args) => commands::compare(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(e.exit_code())
        }
    }
}
