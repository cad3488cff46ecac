//! Partitions of a graph's vertex set and the global vertex order.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, ValidationError};
use crate::graph::{Graph, VertexId};

/// A partition of the vertices into ordered, non-empty clusters.
///
/// Cluster order matters: fitness lists and parent pairs refer to clusters by
/// index. Members inside a cluster are kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Clustering {
    clusters: Vec<Vec<VertexId>>,
    heads: Option<Vec<VertexId>>,
}

impl Clustering {
    pub fn new(clusters: Vec<Vec<VertexId>>) -> Self {
        let mut c = Self {
            clusters,
            heads: None,
        };
        c.normalize();
        c
    }

    pub fn with_heads(clusters: Vec<Vec<VertexId>>, heads: Vec<VertexId>) -> Self {
        let mut c = Self::new(clusters);
        c.heads = Some(heads);
        c
    }

    /// One cluster holding `0..n`.
    pub fn single(n: usize) -> Self {
        if n == 0 {
            return Self::default();
        }
        Self::new(vec![(0..n).collect()])
    }

    /// Every vertex in its own cluster.
    pub fn singletons(n: usize) -> Self {
        Self::new((0..n).map(|v| vec![v]).collect())
    }

    /// Build from a cluster label per vertex. Labels need not be dense;
    /// clusters are ordered by their smallest member.
    pub fn from_assignment(labels: &[usize]) -> Self {
        let mut by_label: Vec<(usize, Vec<VertexId>)> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            match by_label.iter_mut().find(|(label, _)| *label == l) {
                Some((_, members)) => members.push(v),
                None => by_label.push((l, vec![v])),
            }
        }
        Self::new(by_label.into_iter().map(|(_, m)| m).collect())
    }

    fn normalize(&mut self) {
        for members in &mut self.clusters {
            members.sort_unstable();
        }
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn clusters(&self) -> &[Vec<VertexId>] {
        &self.clusters
    }

    pub fn cluster(&self, index: usize) -> &[VertexId] {
        &self.clusters[index]
    }

    pub fn heads(&self) -> Option<&[VertexId]> {
        self.heads.as_deref()
    }

    pub fn without_heads(mut self) -> Self {
        self.heads = None;
        self
    }

    pub(crate) fn replace_cluster(&mut self, index: usize, mut members: Vec<VertexId>) {
        members.sort_unstable();
        self.clusters[index] = members;
    }

    /// Cluster index of every vertex, for a clustering over `n` vertices.
    /// Vertices not covered map to `None`.
    pub fn assignment(&self, n: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n];
        for (ci, members) in self.clusters.iter().enumerate() {
            for &v in members {
                if v < n {
                    out[v] = Some(ci);
                }
            }
        }
        out
    }

    /// Check that this is a partition of `g`'s vertex set, and that heads,
    /// when present, are distinct members of their own clusters.
    pub fn validate(&self, g: &Graph) -> Result<(), ValidationError> {
        let n = g.vertex_count();
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (ci, members) in self.clusters.iter().enumerate() {
            if members.is_empty() {
                return Err(ValidationError::EmptyCluster { cluster: ci });
            }
            for &v in members {
                if v >= n {
                    return Err(ValidationError::OutOfRange {
                        vertex: v,
                        cluster: ci,
                        vertex_count: n,
                    });
                }
                if let Some(first) = owner[v] {
                    return Err(ValidationError::Overlap {
                        vertex: v,
                        first,
                        second: ci,
                    });
                }
                owner[v] = Some(ci);
            }
        }
        if let Some(vertex) = owner.iter().position(Option::is_none) {
            return Err(ValidationError::Uncovered { vertex });
        }
        if let Some(heads) = &self.heads {
            if heads.len() != self.clusters.len() {
                return Err(ValidationError::HeadCount {
                    expected: self.clusters.len(),
                    found: heads.len(),
                });
            }
            let mut seen = vec![false; n];
            for (ci, &head) in heads.iter().enumerate() {
                if head >= n || owner[head] != Some(ci) {
                    return Err(ValidationError::HeadNotMember { head, cluster: ci });
                }
                if std::mem::replace(&mut seen[head], true) {
                    return Err(ValidationError::DuplicateHead { head });
                }
            }
        }
        Ok(())
    }
}

/// A bijection from vertices to the integers `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrder(Vec<usize>);

impl VertexOrder {
    /// Wrap explicit order values; they must be a permutation of `0..n`.
    pub fn from_values(values: Vec<usize>) -> Option<Self> {
        let order = Self(values);
        order.is_permutation().then_some(order)
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: VertexId) -> usize {
        self.0[v]
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn swap(&mut self, a: VertexId, b: VertexId) {
        self.0.swap(a, b);
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0
            .iter()
            .all(|&x| x < seen.len() && !std::mem::replace(&mut seen[x], true))
    }
}

/// A uniformly random order over `n` vertices.
pub fn random_order<R: Rng + ?Sized>(n: usize, rng: &mut R) -> VertexOrder {
    let mut values: Vec<usize> = (0..n).collect();
    values.shuffle(rng);
    VertexOrder(values)
}

/// A vertex as written in a clustering file: its label for labelled graphs,
/// its id otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Id(usize),
    Name(String),
}

/// On-disk form of a [`Clustering`]:
/// `{"clusters": [[...], ...], "heads": [...]}`, `heads` omitted when absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusteringDocument {
    pub clusters: Vec<Vec<VertexRef>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heads: Option<Vec<VertexRef>>,
}

impl ClusteringDocument {
    pub fn from_clustering(c: &Clustering, g: &Graph) -> Self {
        let to_ref = |v: VertexId| match g.labels() {
            Some(labels) => VertexRef::Name(labels[v].clone()),
            None => VertexRef::Id(v),
        };
        Self {
            clusters: c
                .clusters()
                .iter()
                .map(|m| m.iter().map(|&v| to_ref(v)).collect())
                .collect(),
            heads: c.heads().map(|h| h.iter().map(|&v| to_ref(v)).collect()),
        }
    }

    /// Resolve names against `g` and validate the result as a partition.
    pub fn to_clustering(&self, g: &Graph) -> Result<Clustering> {
        let resolve = |r: &VertexRef| -> Result<VertexId> {
            let key = match r {
                VertexRef::Id(v) => v.to_string(),
                VertexRef::Name(name) => name.clone(),
            };
            g.vertex_by_label(&key)
                .ok_or_else(|| Error::Argument(format!("unknown vertex `{key}`")))
        };
        let clusters = self
            .clusters
            .iter()
            .map(|m| m.iter().map(resolve).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let c = match &self.heads {
            Some(h) => Clustering::with_heads(clusters, h.iter().map(resolve).collect::<Result<_>>()?),
            None => Clustering::new(clusters),
        };
        c.validate(g)?;
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream_rng, Stream};

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let g = path3();
        assert_eq!(Clustering::new(vec![vec![0, 1], vec![2]]).validate(&g), Ok(()));
        assert_eq!(
            Clustering::new(vec![vec![0, 1], vec![1, 2]]).validate(&g),
            Err(ValidationError::Overlap {
                vertex: 1,
                first: 0,
                second: 1
            })
        );
        assert_eq!(
            Clustering::new(vec![vec![0, 1]]).validate(&g),
            Err(ValidationError::Uncovered { vertex: 2 })
        );
    }

    #[test]
    fn validate_rejects_bad_shapes() {
        let g = path3();
        assert_eq!(
            Clustering::new(vec![vec![0, 1, 2], vec![]]).validate(&g),
            Err(ValidationError::EmptyCluster { cluster: 1 })
        );
        assert!(matches!(
            Clustering::new(vec![vec![0, 1, 2, 3]]).validate(&g),
            Err(ValidationError::OutOfRange { vertex: 3, .. })
        ));
        assert_eq!(
            Clustering::with_heads(vec![vec![0, 1], vec![2]], vec![2, 0]).validate(&g),
            Err(ValidationError::HeadNotMember { head: 2, cluster: 0 })
        );
        assert_eq!(
            Clustering::with_heads(vec![vec![0, 1], vec![2]], vec![1]).validate(&g),
            Err(ValidationError::HeadCount {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            Clustering::with_heads(vec![vec![0, 1], vec![2]], vec![1, 2]).validate(&g),
            Ok(())
        );
    }

    #[test]
    fn from_assignment_orders_by_first_member() {
        let c = Clustering::from_assignment(&[7, 3, 7, 0]);
        assert_eq!(c.clusters(), &[vec![0, 2], vec![1], vec![3]]);
    }

    #[test]
    fn random_order_examples() {
        let mut rng = stream_rng(0, Stream::VertexOrder);
        assert_eq!(random_order(1, &mut rng).values(), &[0]);

        let a = random_order(5, &mut stream_rng(11, Stream::VertexOrder));
        let b = random_order(5, &mut stream_rng(11, Stream::VertexOrder));
        assert_eq!(a, b);

        for n in [0, 2, 17, 100] {
            assert!(random_order(n, &mut rng).is_permutation());
        }
    }

    #[test]
    fn document_uses_labels_when_present() {
        let g = crate::graph::load_edge_list("main foo\nfoo bar\n").unwrap();
        let c = Clustering::with_heads(vec![vec![0, 1], vec![2]], vec![1, 2]);
        let doc = ClusteringDocument::from_clustering(&c, &g);
        assert_eq!(
            serde_json::to_string(&doc).unwrap(),
            r#"{"clusters":[["main","foo"],["bar"]],"heads":["foo","bar"]}"#
        );
        assert_eq!(doc.to_clustering(&g).unwrap(), c);
    }

    #[test]
    fn document_with_ids() {
        let g = Graph::complete(3);
        let doc: ClusteringDocument = serde_json::from_str(r#"{"clusters":[[0,2],[1]]}"#).unwrap();
        assert_eq!(doc.to_clustering(&g).unwrap().clusters(), &[vec![0, 2], vec![1]]);

        let overlap: ClusteringDocument = serde_json::from_str(r#"{"clusters":[[0,1],[1,2]]}"#).unwrap();
        assert_eq!(
            overlap.to_clustering(&g),
            Err(Error::Validation(ValidationError::Overlap { vertex: 1, first: 0, second: 1 }))
        );
        let unknown: ClusteringDocument = serde_json::from_str(r#"{"clusters":[[0,1,2,9]]}"#).unwrap();
        assert!(unknown.to_clustering(&g).is_err());
    }

    #[test]
    fn from_values_requires_permutation() {
        assert!(VertexOrder::from_values(vec![2, 0, 1]).is_some());
        assert!(VertexOrder::from_values(vec![0, 0, 1]).is_none());
        assert!(VertexOrder::from_values(vec![0, 3]).is_none());
    }
}
