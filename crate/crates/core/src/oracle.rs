//! Exhaustive search over set partitions, for checking heuristics on tiny
//! graphs.

use crate::clustering::Clustering;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count [`brute_force_optimal`] accepts. Bell(10) = 115975.
pub const MAX_BRUTE_FORCE_VERTICES: usize = 10;

/// The partition with the highest Kal index, optionally restricted to exactly
/// `fixed_k` clusters.
///
/// Partitions are enumerated as restricted growth strings in lexicographic
/// order and only a strictly better score replaces the incumbent, so ties
/// resolve to the lexicographically smallest string.
pub fn brute_force_optimal(g: &Graph, fixed_k: Option<usize>) -> Result<(Clustering, i64)> {
    let n = g.vertex_count();
    if n > MAX_BRUTE_FORCE_VERTICES {
        return Err(Error::TooLarge {
            n,
            limit: MAX_BRUTE_FORCE_VERTICES,
        });
    }
    if let Some(k) = fixed_k {
        if k > n || (k == 0 && n > 0) {
            return Err(Error::Argument(format!(
                "no partition of {n} vertices into {k} clusters"
            )));
        }
    }
    if n == 0 {
        return Ok((Clustering::default(), 0));
    }

    let mut search = Search {
        g,
        fixed_k,
        labels: vec![0; n],
        best: None,
    };
    search.descend(1, 1);
    let (labels, kappa) = search.best.expect("at least one partition exists");
    Ok((Clustering::from_assignment(&labels), kappa))
}

struct Search<'a> {
    g: &'a Graph,
    fixed_k: Option<usize>,
    labels: Vec<usize>,
    best: Option<(Vec<usize>, i64)>,
}

impl Search<'_> {
    /// Positions `0..pos` are fixed and use `blocks` distinct labels.
    fn descend(&mut self, pos: usize, blocks: usize) {
        let n = self.labels.len();
        if let Some(k) = self.fixed_k {
            if blocks > k || blocks + (n - pos) < k {
                return;
            }
        }
        if pos == n {
            let kappa = self.score(blocks);
            if self.best.as_ref().is_none_or(|(_, b)| kappa > *b) {
                self.best = Some((self.labels.clone(), kappa));
            }
            return;
        }
        for label in 0..=blocks {
            self.labels[pos] = label;
            self.descend(pos + 1, blocks.max(label + 1));
        }
    }

    fn score(&self, blocks: usize) -> i64 {
        let mut kappa = blocks as i64;
        for &(u, v) in self.g.edges() {
            kappa += if self.labels[u] == self.labels[v] { 1 } else { -1 };
        }
        kappa
    }
}
