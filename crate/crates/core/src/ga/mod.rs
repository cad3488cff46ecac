//! Single-candidate genetic algorithm over clusterings.
//!
//! A run starts from the greedy seed and a random vertex order. Every
//! iteration copies the best clustering so far, scores its clusters, pairs
//! them by fitness, exchanges vertices inside each pair (chosen by descending
//! order value), and possibly swaps two order values inside one cluster. The
//! candidate replaces the best one when its Kal index is at least as high.
//! The run stops after `patience` consecutive iterations without a strict
//! improvement, or at `max_iterations`.

mod operators;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::clustering::{random_order, Clustering, VertexOrder};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::{full_report, kal_unchecked, MetricsReport};
use crate::rng::{stream_rng, Stream, StreamRng};
use crate::seeding::greedy_clustering;

pub use operators::{
    crossover, exchange, fitness_calculation, mutation, parent_selection, FitnessList, PairList,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    /// Mutation probability.
    pub epsilon: f64,
    /// Consecutive non-improving iterations before stopping.
    pub patience: usize,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.1,
            patience: 5,
            max_iterations: 10_000,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Error::Argument(format!(
                "epsilon must lie in [0, 1], got {}",
                self.epsilon
            )));
        }
        if self.patience == 0 {
            return Err(Error::Argument("patience must be at least 1".into()));
        }
        if self.max_iterations == 0 {
            return Err(Error::Argument("max_iterations must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub candidate_kappa: i64,
    pub best_kappa: i64,
    pub accepted: bool,
}

/// Kal index of every candidate and of the best clustering, per iteration.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RunTrace {
    pub iterations: Vec<IterationRecord>,
    pub seed_kappa: i64,
    pub final_kappa: i64,
}

impl RunTrace {
    pub const CSV_HEADER: &'static str = "iteration,candidate_kappa,best_kappa,accepted";

    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(32 * (self.iterations.len() + 1));
        out.push_str(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.iterations {
            writeln!(
                out,
                "{},{},{},{}",
                r.iteration, r.candidate_kappa, r.best_kappa, r.accepted
            )
            .unwrap();
        }
        out
    }

    /// Iterations whose candidate strictly raised the best Kal index.
    pub fn strict_improvements(&self) -> usize {
        let mut prev = self.seed_kappa;
        let mut count = 0;
        for r in &self.iterations {
            if r.best_kappa > prev {
                count += 1;
            }
            prev = r.best_kappa;
        }
        count
    }
}

/// Everything a finished run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct GaRun {
    /// Greedy seed, heads included.
    pub seed: Clustering,
    pub seed_report: MetricsReport,
    pub clustering: Clustering,
    pub trace: RunTrace,
    pub report: MetricsReport,
}

/// Step-wise GA driver. [`run_ga`] drives it to completion; tests and tools
/// that need to inspect every candidate call [`GeneticClustering::step`].
pub struct GeneticClustering<'g> {
    graph: &'g Graph,
    config: GaConfig,
    seed: Clustering,
    best: Clustering,
    best_kappa: i64,
    candidate: Clustering,
    order: VertexOrder,
    crossover_rng: StreamRng,
    mutation_rng: StreamRng,
    stale: usize,
    trace: RunTrace,
}

impl<'g> GeneticClustering<'g> {
    pub fn new(graph: &'g Graph, config: GaConfig) -> Result<Self> {
        config.validate()?;
        if graph.vertex_count() == 0 {
            return Err(Error::Argument("cannot cluster an empty graph".into()));
        }
        let order = random_order(
            graph.vertex_count(),
            &mut stream_rng(config.seed, Stream::VertexOrder),
        );
        let seed = greedy_clustering(graph);
        // Crossover moves heads between clusters, so the working copy drops them.
        let best = seed.clone().without_heads();
        let best_kappa = kal_unchecked(graph, &best);
        Ok(Self {
            graph,
            config,
            candidate: best.clone(),
            seed,
            best,
            best_kappa,
            order,
            crossover_rng: stream_rng(config.seed, Stream::Crossover),
            mutation_rng: stream_rng(config.seed, Stream::Mutation),
            stale: 0,
            trace: RunTrace {
                iterations: Vec::new(),
                seed_kappa: best_kappa,
                final_kappa: best_kappa,
            },
        })
    }

    pub fn is_finished(&self) -> bool {
        self.stale >= self.config.patience
            || self.trace.iterations.len() >= self.config.max_iterations
    }

    /// Run one iteration. Returns `None` once the run has stopped.
    pub fn step(&mut self) -> Option<IterationRecord> {
        if self.is_finished() {
            return None;
        }
        let fitness = fitness_calculation(&self.best, self.graph)
            .expect("working clustering is always a partition");
        let pairs = parent_selection(&self.best, &fitness).expect("one fitness per cluster");
        self.candidate = crossover(&self.best, &pairs, &self.order, &mut self.crossover_rng)
            .expect("pairs come from parent_selection");
        operators::mutate_in_place(
            &self.candidate,
            &mut self.order,
            &mut self.mutation_rng,
            self.config.epsilon,
        );

        let candidate_kappa = kal_unchecked(self.graph, &self.candidate);
        if candidate_kappa > self.best_kappa {
            self.stale = 0;
        } else {
            self.stale += 1;
        }
        let accepted = candidate_kappa >= self.best_kappa;
        if accepted {
            self.best = self.candidate.clone();
            self.best_kappa = candidate_kappa;
        }
        let record = IterationRecord {
            iteration: self.trace.iterations.len() + 1,
            candidate_kappa,
            best_kappa: self.best_kappa,
            accepted,
        };
        self.trace.iterations.push(record);
        self.trace.final_kappa = self.best_kappa;
        Some(record)
    }

    /// Candidate produced by the latest iteration (the seed before any step).
    pub fn candidate(&self) -> &Clustering {
        &self.candidate
    }

    pub fn best(&self) -> &Clustering {
        &self.best
    }

    pub fn best_kappa(&self) -> i64 {
        self.best_kappa
    }

    pub fn order(&self) -> &VertexOrder {
        &self.order
    }

    pub fn trace(&self) -> &RunTrace {
        &self.trace
    }

    pub fn finish(mut self) -> GaRun {
        while self.step().is_some() {}
        let seed_report = full_report(self.graph, &self.seed).expect("seed is a partition");
        let report = full_report(self.graph, &self.best).expect("best is a partition");
        GaRun {
            seed: self.seed,
            seed_report,
            clustering: self.best,
            trace: self.trace,
            report,
        }
    }
}

pub fn run_ga(g: &Graph, config: &GaConfig) -> Result<GaRun> {
    Ok(GeneticClustering::new(g, *config)?.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_random_graph;

    fn disjoint_triangles() -> Graph {
        Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(GaConfig::default().validate().is_ok());
        let bad = [
            GaConfig { epsilon: 1.5, ..GaConfig::default() },
            GaConfig { epsilon: -0.1, ..GaConfig::default() },
            GaConfig { patience: 0, ..GaConfig::default() },
            GaConfig { max_iterations: 0, ..GaConfig::default() },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }

    #[test]
    fn empty_graph_is_rejected() {
        assert!(run_ga(&Graph::empty(0), &GaConfig::default()).is_err());
    }

    #[test]
    fn disjoint_triangles_stay_within_bounds() {
        let g = disjoint_triangles();
        for seed in 0..20 {
            let run = run_ga(&g, &GaConfig::with_seed(seed)).unwrap();
            assert_eq!(run.trace.seed_kappa, -3);
            assert!(run.trace.final_kappa >= -3 && run.trace.final_kappa <= 5);
            assert_eq!(run.report.kal, run.trace.final_kappa);
            assert_eq!(run.clustering.len(), 3);
        }
    }

    #[test]
    fn identical_seeds_give_identical_traces() {
        let g = generate_random_graph(50, 120, &mut stream_rng(1, Stream::GraphGeneration)).unwrap();
        let a = run_ga(&g, &GaConfig::with_seed(7)).unwrap();
        let b = run_ga(&g, &GaConfig::with_seed(7)).unwrap();
        assert_eq!(a.trace.to_csv(), b.trace.to_csv());
        assert_eq!(a.clustering, b.clustering);
    }

    #[test]
    fn patience_counts_only_strict_improvements() {
        let g = generate_random_graph(40, 90, &mut stream_rng(3, Stream::GraphGeneration)).unwrap();
        let cfg = GaConfig { patience: 3, ..GaConfig::with_seed(5) };
        let run = run_ga(&g, &cfg).unwrap();
        let tail = &run.trace.iterations[run.trace.iterations.len() - 3..];
        let before = run.trace.iterations.len().checked_sub(4).map_or(run.trace.seed_kappa, |i| run.trace.iterations[i].best_kappa);
        assert!(tail.iter().all(|r| r.best_kappa == before));
    }

    #[test]
    fn max_iterations_caps_the_run() {
        let g = generate_random_graph(40, 90, &mut stream_rng(3, Stream::GraphGeneration)).unwrap();
        let cfg = GaConfig { patience: usize::MAX, max_iterations: 17, ..GaConfig::with_seed(1) };
        assert_eq!(run_ga(&g, &cfg).unwrap().trace.iterations.len(), 17);
    }

    #[test]
    fn csv_layout() {
        let trace = RunTrace {
            iterations: vec![
                IterationRecord { iteration: 1, candidate_kappa: 3, best_kappa: 5, accepted: false },
                IterationRecord { iteration: 2, candidate_kappa: 6, best_kappa: 6, accepted: true },
            ],
            seed_kappa: 5,
            final_kappa: 6,
        };
        assert_eq!(
            trace.to_csv(),
            "iteration,candidate_kappa,best_kappa,accepted\n1,3,5,false\n2,6,6,true\n"
        );
        assert_eq!(trace.strict_improvements(), 1);
    }

    #[test]
    fn seed_keeps_heads_and_working_copy_drops_them() {
        let g = disjoint_triangles();
        let run = run_ga(&g, &GaConfig::default()).unwrap();
        assert!(run.seed.heads().is_some());
        assert!(run.clustering.heads().is_none());
        run.seed.validate(&g).unwrap();
        run.clustering.validate(&g).unwrap();
    }
}
