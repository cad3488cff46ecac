//! Simple undirected graphs: edge-list ingestion, BFS distances, induced
//! subgraphs and uniform random generation.

use std::collections::{BTreeMap, HashMap};
use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};

pub type VertexId = usize;

/// An immutable simple undirected graph on the dense vertex ids `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted ascending. The
/// adjacency lists are sorted as well, so iteration order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<VertexId>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Build a graph from arbitrary pairs. Self-loops are dropped and
    /// duplicates (in either orientation) collapse to one edge.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Argument(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{vertex_count}"
                )));
            }
            if u != v {
                normalized.push((u.min(v), u.max(v)));
            }
        }
        normalized.sort_unstable();
        normalized.dedup();

        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        Ok(Self {
            vertex_count,
            edges: normalized,
            adjacency,
            labels: None,
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); vertex_count],
            labels: None,
        }
    }

    /// Complete graph on `q` vertices.
    pub fn complete(q: usize) -> Self {
        let edges = (0..q).flat_map(|u| (u + 1..q).map(move |v| (u, v)));
        Self::from_edges(q, edges).expect("ids are in range")
    }

    /// Attach vertex names. `labels.len()` must equal the vertex count.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count {
            return Err(Error::Argument(format!(
                "{} labels supplied for {} vertices",
                labels.len(),
                self.vertex_count
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.vertex_count && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `v`: its label when present, otherwise the id.
    pub fn label(&self, v: VertexId) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    /// Look a vertex up by label, or by numeric id when the graph is unlabeled.
    pub fn vertex_by_label(&self, name: &str) -> Option<VertexId> {
        match &self.labels {
            Some(labels) => labels.iter().position(|l| l == name),
            None => name.parse().ok().filter(|&v| v < self.vertex_count),
        }
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v >= self.vertex_count {
            return Err(Error::Argument(format!(
                "vertex {v} out of range (graph has {} vertices)",
                self.vertex_count
            )));
        }
        Ok(())
    }

    /// BFS hop counts from `source`. Entry `i` is `None` when `i` is
    /// unreachable or excluded by `mask`.
    pub(crate) fn bfs(&self, source: VertexId, mask: Option<&[bool]>) -> Vec<Option<usize>> {
        let allowed = |v: VertexId| mask.is_none_or(|m| m[v]);
        let mut dist = vec![None; self.vertex_count];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let next = dist[u].expect("queued vertices have a distance") + 1;
            for &w in &self.adjacency[u] {
                if dist[w].is_none() && allowed(w) {
                    dist[w] = Some(next);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Hop counts from `source` within the subgraph induced by `restrict`
    /// (the whole graph when `None`). Unreachable vertices are absent.
    pub fn shortest_path_lengths(
        &self,
        source: VertexId,
        restrict: Option<&[VertexId]>,
    ) -> Result<BTreeMap<VertexId, usize>> {
        self.check_vertex(source)?;
        let mask = match restrict {
            Some(set) => {
                let mut mask = vec![false; self.vertex_count];
                for &v in set {
                    self.check_vertex(v)?;
                    mask[v] = true;
                }
                if !mask[source] {
                    return Err(Error::Argument(format!(
                        "source {source} is not in the restriction set"
                    )));
                }
                Some(mask)
            }
            None => None,
        };
        Ok(self
            .bfs(source, mask.as_deref())
            .into_iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|d| (v, d)))
            .collect())
    }

    /// Subgraph induced by `vertices`. The returned vector maps each new id
    /// to its original id; new ids follow the order of `vertices`.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> Result<(Graph, Vec<VertexId>)> {
        let mut local = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            self.check_vertex(v)?;
            if local[v] != usize::MAX {
                return Err(Error::Argument(format!("vertex {v} listed twice")));
            }
            local[v] = i;
        }
        let mut edges = Vec::new();
        for &v in vertices {
            for &w in &self.adjacency[v] {
                if v < w && local[w] != usize::MAX {
                    edges.push((local[v], local[w]));
                }
            }
        }
        let mut sub = Graph::from_edges(vertices.len(), edges)?;
        if let Some(labels) = &self.labels {
            sub.labels = Some(vertices.iter().map(|&v| labels[v].clone()).collect());
        }
        Ok((sub, vertices.to_vec()))
    }

    /// Serialize in the edge-list interchange format, with a `vertices`
    /// header so isolated vertices survive a reload.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vertices {}", self.vertex_count).unwrap();
        for &(u, v) in &self.edges {
            writeln!(out, "{} {}", self.label(u), self.label(v)).unwrap();
        }
        out
    }
}

/// Parse the edge-list format.
///
/// `#` starts a comment line. An optional first directive `vertices N` fixes
/// the vertex count. Every other non-blank line holds two vertex tokens.
/// When every token is a non-negative integer the tokens are used as ids
/// directly; otherwise tokens are names, numbered in first-appearance order.
pub fn load_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut pairs: Vec<(usize, &str, &str)> = Vec::new();
    let mut seen_content = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if !seen_content && tokens.first() == Some(&"vertices") {
            seen_content = true;
            if tokens.len() != 2 {
                return Err(parse_error(line_no, "expected `vertices <N>`"));
            }
            let n = tokens[1].parse::<usize>().map_err(|_| {
                parse_error(line_no, format!("invalid vertex count `{}`", tokens[1]))
            })?;
            declared = Some(n);
            continue;
        }
        seen_content = true;
        if tokens.len() != 2 {
            return Err(parse_error(
                line_no,
                format!("expected 2 vertex tokens, found {}", tokens.len()),
            ));
        }
        for tok in &tokens {
            if is_negative_integer(tok) {
                return Err(parse_error(line_no, format!("negative vertex id `{tok}`")));
            }
        }
        pairs.push((line_no, tokens[0], tokens[1]));
    }

    let numeric = pairs
        .iter()
        .all(|(_, a, b)| a.parse::<usize>().is_ok() && b.parse::<usize>().is_ok());

    if numeric {
        let mut edges = Vec::with_capacity(pairs.len());
        let mut max_id = None::<usize>;
        for &(line_no, a, b) in &pairs {
            let (u, v) = (a.parse::<usize>().unwrap(), b.parse::<usize>().unwrap());
            if let Some(n) = declared {
                if u >= n || v >= n {
                    return Err(parse_error(
                        line_no,
                        format!("vertex id exceeds declared count {n}"),
                    ));
                }
            }
            max_id = max_id.max(Some(u.max(v)));
            edges.push((u, v));
        }
        let n = declared.unwrap_or(max_id.map_or(0, |m| m + 1));
        return Graph::from_edges(n, edges);
    }

    let mut ids: HashMap<&str, VertexId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::with_capacity(pairs.len());
    for &(_, a, b) in &pairs {
        let u = intern(&mut ids, &mut labels, a);
        let v = intern(&mut ids, &mut labels, b);
        edges.push((u, v));
    }
    let n = match declared {
        Some(n) if n < labels.len() => {
            return Err(Error::Parse {
                line: 1,
                message: format!("declared {n} vertices but {} names appear", labels.len()),
            })
        }
        Some(n) => n,
        None => labels.len(),
    };
    // Vertices beyond the named ones are isolated; they are labelled by id.
    for v in labels.len()..n {
        labels.push(v.to_string());
    }
    Graph::from_edges(n, edges)?.with_labels(labels)
}

fn intern<'a>(ids: &mut HashMap<&'a str, VertexId>, labels: &mut Vec<String>, name: &'a str) -> VertexId {
    *ids.entry(name).or_insert_with(|| {
        labels.push(name.to_string());
        labels.len() - 1
    })
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn is_negative_integer(tok: &str) -> bool {
    tok.strip_prefix('-')
        .is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
}

/// Uniformly random simple graph with exactly `n` vertices and `m` edges.
pub fn generate_random_graph<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    let max = n.saturating_mul(n.saturating_sub(1)) / 2;
    if m > max {
        return Err(Error::Argument(format!(
            "{m} edges requested but a simple graph on {n} vertices has at most {max}"
        )));
    }
    let picks = index::sample(rng, max, m);
    let edges = picks.into_iter().map(|k| pair_from_index(n, k));
    Graph::from_edges(n, edges)
}

/// Map `k` in `0..n(n-1)/2` to the k-th pair `(u, v)`, `u < v`, in row-major order.
fn pair_from_index(n: usize, mut k: usize) -> (VertexId, VertexId) {
    let mut u = 0;
    loop {
        let row = n - 1 - u;
        if k < row {
            return (u, u + 1 + k);
        }
        k -= row;
        u += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{stream_rng, Stream};
    use proptest::prelude::*;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn loads_integer_edges() {
        let g = load_edge_list("0 1\n1 2").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
        assert!(g.labels().is_none());
    }

    #[test]
    fn drops_duplicates_and_self_loops() {
        let g = load_edge_list("0 1\n1 0\n2 2").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 1));
    }

    #[test]
    fn names_get_first_appearance_ids() {
        let g = load_edge_list("main foo\nfoo bar").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
        assert_eq!(g.labels().unwrap(), ["main", "foo", "bar"]);
        assert_eq!(g.vertex_by_label("bar"), Some(2));
    }

    #[test]
    fn header_comments_and_isolated_vertices() {
        let g = load_edge_list("# demo\nvertices 5\n\n0 1\n# trailing\n3 1\n").unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edges(), &[(0, 1), (1, 3)]);
        assert_eq!(g.degree(4), 0);
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        assert_eq!(
            load_edge_list("0 1\n1 2 3\n").unwrap_err(),
            Error::Parse {
                line: 2,
                message: "expected 2 vertex tokens, found 3".into()
            }
        );
        assert!(matches!(
            load_edge_list("# c\n4\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            load_edge_list("0 -3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            load_edge_list("vertices 2\n0 5\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn bfs_examples() {
        let d = path3().shortest_path_lengths(0, None).unwrap();
        assert_eq!(d, BTreeMap::from([(0, 0), (1, 1), (2, 2)]));

        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let d = g.shortest_path_lengths(0, None).unwrap();
        assert_eq!(d, BTreeMap::from([(0, 0), (1, 1)]));

        let d = Graph::complete(3).shortest_path_lengths(1, None).unwrap();
        assert_eq!(d, BTreeMap::from([(1, 0), (0, 1), (2, 1)]));
    }

    #[test]
    fn bfs_respects_restriction() {
        let d = path3().shortest_path_lengths(0, Some(&[0, 2])).unwrap();
        assert_eq!(d, BTreeMap::from([(0, 0)]));
        assert!(path3().shortest_path_lengths(0, Some(&[1, 2])).is_err());
        assert!(path3().shortest_path_lengths(3, None).is_err());
    }

    #[test]
    fn induced_subgraph_examples() {
        let (sub, map) = Graph::complete(3).induced_subgraph(&[0, 1]).unwrap();
        assert_eq!((sub.vertex_count(), sub.edge_count()), (2, 1));
        assert_eq!(map, vec![0, 1]);

        let (sub, map) = path3().induced_subgraph(&[0, 2]).unwrap();
        assert_eq!((sub.vertex_count(), sub.edge_count()), (2, 0));
        assert_eq!(map, vec![0, 2]);

        let g = path3();
        let (whole, _) = g.induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(whole, g);

        assert!(g.induced_subgraph(&[0, 7]).is_err());
    }

    #[test]
    fn random_graph_sizes() {
        let mut rng = stream_rng(1, Stream::GraphGeneration);
        let g = generate_random_graph(166, 450, &mut rng).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (166, 450));

        let k4 = generate_random_graph(4, 6, &mut rng).unwrap();
        assert_eq!(k4, Graph::complete(4));

        let empty = generate_random_graph(5, 0, &mut rng).unwrap();
        assert_eq!((empty.vertex_count(), empty.edge_count()), (5, 0));

        assert!(generate_random_graph(4, 7, &mut rng).is_err());
    }

    #[test]
    fn random_graph_is_seed_deterministic() {
        let a = generate_random_graph(30, 60, &mut stream_rng(9, Stream::GraphGeneration)).unwrap();
        let b = generate_random_graph(30, 60, &mut stream_rng(9, Stream::GraphGeneration)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = generate_random_graph(12, 20, &mut stream_rng(3, Stream::GraphGeneration)).unwrap();
        assert_eq!(load_edge_list(&g.to_edge_list()).unwrap(), g);
        let named = load_edge_list("a b\nb c\n").unwrap();
        assert_eq!(load_edge_list(&named.to_edge_list()).unwrap(), named);
    }

    fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<usize>>> {
        let n = g.vertex_count();
        let mut d = vec![vec![None; n]; n];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = Some(0);
        }
        for &(u, v) in g.edges() {
            d[u][v] = Some(1);
            d[v][u] = Some(1);
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                        if d[i][j].is_none_or(|c| a + b < c) {
                            d[i][j] = Some(a + b);
                        }
                    }
                }
            }
        }
        d
    }

    fn small_graph() -> impl Strategy<Value = Graph> {
        (0usize..=8).prop_flat_map(|n| {
            let max = n * n.saturating_sub(1) / 2;
            (Just(n), proptest::collection::vec(0..max.max(1), 0..=max))
        })
        .prop_map(|(n, picks)| {
            let edges: Vec<_> = if n < 2 {
                Vec::new()
            } else {
                picks.into_iter().map(|k| pair_from_index(n, k)).collect()
            };
            Graph::from_edges(n, edges).unwrap()
        })
    }

    proptest! {
        #[test]
        fn structural_invariants(g in small_graph()) {
            let degree_sum: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
            prop_assert_eq!(degree_sum, 2 * g.edge_count());
            for v in 0..g.vertex_count() {
                for &w in g.neighbors(v) {
                    prop_assert!(w < g.vertex_count());
                    prop_assert!(w != v);
                    prop_assert!(g.has_edge(w, v));
                }
            }
        }

        #[test]
        fn bfs_matches_floyd_warshall(g in small_graph()) {
            let fw = floyd_warshall(&g);
            for (s, row) in fw.iter().enumerate() {
                let bfs = g.shortest_path_lengths(s, None).unwrap();
                for (t, &d) in row.iter().enumerate() {
                    prop_assert_eq!(bfs.get(&t).copied(), d);
                }
            }
        }

        #[test]
        fn induced_edge_count_matches_filter(g in small_graph(), mask in proptest::collection::vec(any::<bool>(), 8)) {
            let subset: Vec<_> = (0..g.vertex_count()).filter(|&v| mask[v]).collect();
            let expected = g.edges().iter().filter(|&&(u, v)| mask[u] && mask[v]).count();
            let (sub, map) = g.induced_subgraph(&subset).unwrap();
            prop_assert_eq!(sub.edge_count(), expected);
            for &(a, b) in sub.edges() {
                prop_assert!(g.has_edge(map[a], map[b]));
            }
        }
    }
}
