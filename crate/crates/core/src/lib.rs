//! Call-graph clustering for design migration.
//!
//! The crate turns the undirected call graph of a structured program into a
//! partition of its functions. Each cluster is a candidate class or interface
//! in an object oriented redesign. Three pieces do the work:
//!
//! * [`seeding`] builds an initial clustering, either with the degree-driven
//!   greedy heuristic or with a random-restart Monte Carlo baseline.
//! * [`ga`] improves a clustering with a single-candidate genetic algorithm
//!   (fitness, parent pairing, crossover by vertex order, order mutation).
//! * [`metrics`] scores clusterings with the Kal index, the clustering
//!   coefficient and the characteristic path length.

pub mod clustering;
pub mod error;
pub mod ga;
pub mod graph;
pub mod metrics;
pub mod oracle;
pub mod rng;
pub mod seeding;

pub use clustering::{random_order, Clustering, ClusteringDocument, VertexOrder, VertexRef};
pub use error::{Error, Result, ValidationError};
pub use ga::{
    crossover, fitness_calculation, mutation, parent_selection, run_ga, FitnessList, GaConfig,
    GaRun, GeneticClustering, IterationRecord, PairList, RunTrace,
};
pub use graph::{generate_random_graph, load_edge_list, Graph, VertexId};
pub use metrics::{
    characteristic_path_length, classify_edges, clustering_coefficient, full_report,
    intra_edge_subgraph, kal_index, EdgeClassification, MetricsReport,
};
pub use oracle::brute_force_optimal;
pub use seeding::{greedy_clustering, monte_carlo_clustering};
