//! The four per-iteration operators: fitness, parent pairing, crossover and
//! mutation.

use rand::Rng;

use crate::clustering::{Clustering, VertexOrder};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::metrics::characteristic_path_length;

/// One fitness value per cluster, in cluster order.
#[derive(Debug, Clone, PartialEq)]
pub struct FitnessList {
    pub values: Vec<f64>,
}

/// Cluster pairs chosen for crossover. With an odd cluster count the
/// lowest-ranked cluster sits out as `leftover`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PairList {
    pub pairs: Vec<(usize, usize)>,
    pub leftover: Option<usize>,
}

/// Fitness of each cluster: the number of edges inside it plus the
/// characteristic path length of the subgraph it induces.
pub fn fitness_calculation(c: &Clustering, g: &Graph) -> Result<FitnessList> {
    c.validate(g)?;
    let values = c
        .clusters()
        .iter()
        .map(|members| cluster_fitness(g, members))
        .collect::<Result<_>>()?;
    Ok(FitnessList { values })
}

fn cluster_fitness(g: &Graph, members: &[VertexId]) -> Result<f64> {
    let (sub, _) = g.induced_subgraph(members)?;
    Ok(sub.edge_count() as f64 + characteristic_path_length(&sub))
}

/// Rank clusters by fitness, highest first (ties by lower index), and pair
/// neighbours in that ranking top-down.
pub fn parent_selection(c: &Clustering, f: &FitnessList) -> Result<PairList> {
    if c.len() != f.values.len() {
        return Err(Error::Argument(format!(
            "{} fitness values for {} clusters",
            f.values.len(),
            c.len()
        )));
    }
    let mut ranked: Vec<usize> = (0..f.values.len()).collect();
    ranked.sort_by(|&a, &b| f.values[b].total_cmp(&f.values[a]).then(a.cmp(&b)));

    let chunks = ranked.chunks_exact(2);
    let leftover = chunks.remainder().first().copied();
    Ok(PairList {
        pairs: chunks.map(|p| (p[0], p[1])).collect(),
        leftover,
    })
}

/// Number of vertices a cluster of `size` hands over: uniform in
/// `1..=size-1`, or zero for clusters with fewer than two members.
fn transit_count<R: Rng + ?Sized>(size: usize, rng: &mut R) -> usize {
    if size < 2 {
        0
    } else {
        rng.gen_range(1..size)
    }
}

/// Exchange vertices between clusters `a` and `b`: the `take_a` members of
/// `a` with the highest order values move to `b`, and the `take_b` highest
/// of `b` move to `a`.
pub fn exchange(
    c: &mut Clustering,
    a: usize,
    b: usize,
    take_a: usize,
    take_b: usize,
    order: &VertexOrder,
) {
    let (keep_a, alpha) = split_by_order(c.cluster(a), take_a, order);
    let (keep_b, beta) = split_by_order(c.cluster(b), take_b, order);
    c.replace_cluster(a, keep_a.into_iter().chain(beta).collect());
    c.replace_cluster(b, keep_b.into_iter().chain(alpha).collect());
}

/// Split `members` into (kept, transit) where transit holds the `take`
/// members with the highest order values.
fn split_by_order(
    members: &[VertexId],
    take: usize,
    order: &VertexOrder,
) -> (Vec<VertexId>, Vec<VertexId>) {
    let mut sorted = members.to_vec();
    sorted.sort_by_key(|&v| std::cmp::Reverse(order.get(v)));
    let kept = sorted.split_off(take.min(sorted.len()));
    (kept, sorted)
}

/// Apply [`exchange`] to every pair, drawing the transit sizes from `rng`
/// (first cluster then second, pair by pair). Clusters outside the pairs are
/// untouched.
pub fn crossover<R: Rng + ?Sized>(
    c: &Clustering,
    p: &PairList,
    order: &VertexOrder,
    rng: &mut R,
) -> Result<Clustering> {
    check_crossover_inputs(c, p, order)?;
    let mut next = c.clone();
    for &(a, b) in &p.pairs {
        let take_a = transit_count(next.cluster(a).len(), rng);
        let take_b = transit_count(next.cluster(b).len(), rng);
        exchange(&mut next, a, b, take_a, take_b, order);
    }
    Ok(next)
}

fn check_crossover_inputs(c: &Clustering, p: &PairList, order: &VertexOrder) -> Result<()> {
    let mut used = vec![false; c.len()];
    let indices = p.pairs.iter().flat_map(|&(a, b)| [a, b]).chain(p.leftover);
    for i in indices {
        if i >= c.len() {
            return Err(Error::Argument(format!(
                "cluster index {i} out of range ({} clusters)",
                c.len()
            )));
        }
        if std::mem::replace(&mut used[i], true) {
            return Err(Error::Argument(format!("cluster index {i} paired twice")));
        }
    }
    if let Some(&v) = c.clusters().iter().flatten().find(|&&v| v >= order.len()) {
        return Err(Error::Argument(format!("vertex {v} has no order value")));
    }
    Ok(())
}

/// Draw `r` in `[0, 1)`; when `r <= epsilon`, swap the order values of two
/// distinct members of a uniformly chosen cluster with at least two members.
/// Returns whether a swap happened. The clustering is never touched.
pub(crate) fn mutate_in_place<R: Rng + ?Sized>(
    c: &Clustering,
    order: &mut VertexOrder,
    rng: &mut R,
    epsilon: f64,
) -> bool {
    let r: f64 = rng.gen();
    if r > epsilon {
        return false;
    }
    let eligible: Vec<&Vec<VertexId>> = c.clusters().iter().filter(|m| m.len() >= 2).collect();
    if eligible.is_empty() {
        return false;
    }
    let members = eligible[rng.gen_range(0..eligible.len())];
    let i = rng.gen_range(0..members.len());
    let mut j = rng.gen_range(0..members.len() - 1);
    if j >= i {
        j += 1;
    }
    order.swap(members[i], members[j]);
    true
}

pub fn mutation<R: Rng + ?Sized>(
    c: &Clustering,
    order: &VertexOrder,
    rng: &mut R,
    epsilon: f64,
) -> VertexOrder {
    let mut next = order.clone();
    mutate_in_place(c, &mut next, rng, epsilon);
    next
}
