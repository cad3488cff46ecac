//! Initial clusterings: the degree-driven greedy heuristic and a Monte Carlo
//! baseline.

use rand::Rng;

use crate::clustering::Clustering;
use crate::graph::{Graph, VertexId};
use crate::metrics::kal_unchecked;

/// Number of clusters the greedy heuristic opens: `ceil(sqrt(n))`.
pub fn greedy_cluster_count(n: usize) -> usize {
    let mut k = (n as f64).sqrt() as usize;
    while k * k < n {
        k += 1;
    }
    while k > 0 && (k - 1) * (k - 1) >= n {
        k -= 1;
    }
    k
}

/// Greedy seeding.
///
/// The `ceil(sqrt(n))` highest-degree vertices (ties by ascending id) head one
/// cluster each. Edges are then scanned in ascending `(u, v)` order; an edge
/// with exactly one assigned endpoint pulls the other endpoint into that
/// cluster. Scanning repeats until nothing changes. Vertices still unassigned
/// (components without a head) go, in id order, to the currently smallest
/// cluster, ties to the lowest index.
pub fn greedy_clustering(g: &Graph) -> Clustering {
    let n = g.vertex_count();
    if n == 0 {
        return Clustering::default();
    }
    let k = greedy_cluster_count(n);

    let mut by_degree: Vec<VertexId> = (0..n).collect();
    by_degree.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let heads: Vec<VertexId> = by_degree[..k].to_vec();

    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut clusters: Vec<Vec<VertexId>> = heads.iter().map(|&h| vec![h]).collect();
    for (ci, &h) in heads.iter().enumerate() {
        owner[h] = Some(ci);
    }

    loop {
        let mut changed = false;
        for &(u, v) in g.edges() {
            match (owner[u], owner[v]) {
                (Some(ci), None) => {
                    owner[v] = Some(ci);
                    clusters[ci].push(v);
                    changed = true;
                }
                (None, Some(cj)) => {
                    owner[u] = Some(cj);
                    clusters[cj].push(u);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }

    for (v, slot) in owner.iter_mut().enumerate() {
        if slot.is_none() {
            let smallest = (0..k)
                .min_by_key(|&ci| (clusters[ci].len(), ci))
                .expect("k >= 1 for n >= 1");
            *slot = Some(smallest);
            clusters[smallest].push(v);
        }
    }

    Clustering::with_heads(clusters, heads)
}

/// Upper end of the cluster-count range sampled by the Monte Carlo baseline.
pub fn monte_carlo_max_clusters(n: usize) -> usize {
    let bound = (2.0 * (n as f64).sqrt()).ceil() as usize;
    bound.max(1)
}

/// Random-restart baseline: each trial draws `k` uniformly from
/// `1..=ceil(2 sqrt(n))`, drops every vertex into a uniform cluster, removes
/// empty clusters and keeps the result if its Kal index beats all earlier
/// trials. The first trial wins ties.
pub fn monte_carlo_clustering<R: Rng + ?Sized>(g: &Graph, trials: usize, rng: &mut R) -> Clustering {
    let n = g.vertex_count();
    if n == 0 {
        return Clustering::default();
    }
    let max_k = monte_carlo_max_clusters(n);
    let mut best: Option<(i64, Clustering)> = None;
    let mut labels = vec![0usize; n];
    for _ in 0..trials.max(1) {
        let k = rng.gen_range(1..=max_k);
        for l in labels.iter_mut() {
            *l = rng.gen_range(0..k);
        }
        let candidate = Clustering::from_assignment(&labels);
        let kal = kal_unchecked(g, &candidate);
        if best.as_ref().is_none_or(|(b, _)| kal > *b) {
            best = Some((kal, candidate));
        }
    }
    best.expect("at least one trial").1
}
