//! Clustering quality metrics.
//!
//! * Kal index: intra-cluster edges minus inter-cluster edges plus the number
//!   of clusters.
//! * Clustering coefficient: mean local coefficient over all vertices, with
//!   vertices of degree below two contributing zero.
//! * Characteristic path length: summed BFS distance over ordered pairs,
//!   divided by `n(n-1)`. Unreachable pairs contribute zero and stay in the
//!   denominator.
//!
//! When a clustering is scored, the coefficient and the path length are taken
//! on the graph that keeps only the intra-cluster edges.

use serde::{Deserialize, Serialize};

use crate::clustering::Clustering;
use crate::error::Result;
use crate::graph::Graph;

/// Per-edge intra/inter flags, aligned with [`Graph::edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClassification {
    pub intra: Vec<bool>,
    pub inter: Vec<bool>,
}

impl EdgeClassification {
    pub fn intra_count(&self) -> usize {
        self.intra.iter().filter(|&&x| x).count()
    }

    pub fn inter_count(&self) -> usize {
        self.inter.iter().filter(|&&y| y).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub kal: i64,
    pub cc: f64,
    pub cpl: f64,
    pub cluster_count: usize,
}

pub fn classify_edges(g: &Graph, c: &Clustering) -> Result<EdgeClassification> {
    c.validate(g)?;
    Ok(classify_unchecked(g, c))
}

fn classify_unchecked(g: &Graph, c: &Clustering) -> EdgeClassification {
    let owner = c.assignment(g.vertex_count());
    let intra: Vec<bool> = g.edges().iter().map(|&(u, v)| owner[u] == owner[v]).collect();
    let inter = intra.iter().map(|&x| !x).collect();
    EdgeClassification { intra, inter }
}

pub fn kal_index(g: &Graph, c: &Clustering) -> Result<i64> {
    c.validate(g)?;
    Ok(kal_unchecked(g, c))
}

/// Kal index without validating `c`. Callers guarantee a partition.
pub(crate) fn kal_unchecked(g: &Graph, c: &Clustering) -> i64 {
    let owner = c.assignment(g.vertex_count());
    let intra = g
        .edges()
        .iter()
        .filter(|&&(u, v)| owner[u] == owner[v])
        .count() as i64;
    let inter = g.edge_count() as i64 - intra;
    intra - inter + c.len() as i64
}

pub fn clustering_coefficient(g: &Graph) -> f64 {
    let n = g.vertex_count();
    if n == 0 {
        return 0.0;
    }
    let total: f64 = (0..n).map(|v| local_coefficient(g, v)).sum();
    total / n as f64
}

fn local_coefficient(g: &Graph, v: usize) -> f64 {
    let nbrs = g.neighbors(v);
    let k = nbrs.len();
    if k < 2 {
        return 0.0;
    }
    let mut links = 0usize;
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if g.has_edge(a, b) {
                links += 1;
            }
        }
    }
    2.0 * links as f64 / (k * (k - 1)) as f64
}

pub fn characteristic_path_length(g: &Graph) -> f64 {
    let n = g.vertex_count();
    if n <= 1 {
        return 0.0;
    }
    let total: usize = (0..n)
        .map(|s| g.bfs(s, None).into_iter().flatten().sum::<usize>())
        .sum();
    total as f64 / (n * (n - 1)) as f64
}

/// Same vertex set as `g`, keeping only edges inside a cluster.
pub fn intra_edge_subgraph(g: &Graph, c: &Clustering) -> Result<Graph> {
    let classes = classify_edges(g, c)?;
    let kept = g
        .edges()
        .iter()
        .zip(&classes.intra)
        .filter(|(_, &intra)| intra)
        .map(|(&e, _)| e);
    let sub = Graph::from_edges(g.vertex_count(), kept)?;
    match g.labels() {
        Some(labels) => sub.with_labels(labels.to_vec()),
        None => Ok(sub),
    }
}

pub fn full_report(g: &Graph, c: &Clustering) -> Result<MetricsReport> {
    let intra = intra_edge_subgraph(g, c)?;
    Ok(MetricsReport {
        kal: kal_unchecked(g, c),
        cc: clustering_coefficient(&intra),
        cpl: characteristic_path_length(&intra),
        cluster_count: c.len(),
    })
}
