//! Simple undirected graphs on dense vertex ids, plus the edge-list text format.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use crate::set::VertexSet;

pub const UNREACHABLE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {v} out of range for {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph is disconnected: {0} and {1} are not joined by a path")]
    DisconnectedGraph(usize, usize),
    #[error("graph has no vertices")]
    Empty,
}

/// Finite simple undirected graph with vertex set `0..n` and sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged, loops rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn neighborhood(&self, v: usize) -> VertexSet {
        VertexSet::from_vertices(self.n(), self.adj[v].iter().copied())
    }

    /// `B_1(v)`: the neighbors of `v` together with `v`.
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        let mut s = self.neighborhood(v);
        s.insert(v);
        s
    }

    /// Induced subgraph; the returned vector maps new ids to old ids.
    pub fn induced(&self, vertices: &VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = vertices.iter().collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = old
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| new_id[w] != usize::MAX)
                    .map(|&w| new_id[w])
                    .collect()
            })
            .collect();
        (Graph { adj }, old)
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let edges = self.edges().map(|(u, v)| (perm[u], perm[v]));
        Graph::from_edges(self.n(), edges).expect("permutation preserves simplicity")
    }

    /// Hop distances from `source`; unreachable vertices get [`UNREACHABLE`].
    pub fn bfs_distances(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == UNREACHABLE {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs_distances(0).iter().all(|&d| d != UNREACHABLE)
    }

    /// Length of a shortest cycle, or `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![UNREACHABLE; n];
            let mut parent = vec![usize::MAX; n];
            let mut queue = VecDeque::new();
            dist[s] = 0;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &y in &self.adj[x] {
                    if dist[y] == UNREACHABLE {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push_back(y);
                    } else if parent[x] != y {
                        let len = (dist[x] + dist[y] + 1) as usize;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        let vs: Vec<usize> = s.iter().collect();
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    /// True if `perm` is a bijection preserving adjacency and non-adjacency.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        let n = self.n();
        if perm.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        self.edges().all(|(u, v)| self.has_edge(perm[u], perm[v]))
    }
}

/// A graph read from text, with the original labels of its dense vertex ids.
#[derive(Clone, Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// `labels[i]` is the label the file used for dense vertex `i`.
    pub labels: Vec<u64>,
}

impl LoadedGraph {
    pub fn dense_id(&self, label: u64) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }
}

/// Parses the edge-list format: `u v` per line, `v` alone for an isolated
/// vertex, `#` starts a comment line. Labels are relabeled to `0..n` in
/// ascending label order.
pub fn parse_edge_list(text: &str) -> Result<LoadedGraph, GraphError> {
    let mut labels = BTreeSet::new();
    let mut raw_edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Result<Vec<u64>, _> = line.split_whitespace().map(str::parse::<u64>).collect();
        let nums = nums.map_err(|e| GraphError::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?;
        match nums.as_slice() {
            [v] => {
                labels.insert(*v);
            }
            [u, v] => {
                if u == v {
                    return Err(GraphError::Parse {
                        line: i + 1,
                        msg: format!("self-loop at {u}"),
                    });
                }
                labels.insert(*u);
                labels.insert(*v);
                raw_edges.push((*u, *v));
            }
            _ => {
                return Err(GraphError::Parse {
                    line: i + 1,
                    msg: format!("expected 1 or 2 vertex ids, found {}", nums.len()),
                })
            }
        }
    }
    let labels: Vec<u64> = labels.into_iter().collect();
    let index: BTreeMap<u64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let graph = Graph::from_edges(
        labels.len(),
        raw_edges.into_iter().map(|(u, v)| (index[&u], index[&v])),
    )?;
    Ok(LoadedGraph { graph, labels })
}

/// Serializes to the edge-list format; isolated vertices get their own line.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "# n={} m={}", g.n(), g.m()).unwrap();
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            writeln!(out, "{v}").unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loader_merges_duplicates_and_relabels() {
        let g = parse_edge_list("# demo\n10 20\n20 10\n20 30\n7\n").unwrap();
        assert_eq!(g.labels, vec![7, 10, 20, 30]);
        assert_eq!(g.graph.m(), 2);
        assert_eq!(g.graph.degree(0), 0);
        assert!(g.graph.has_edge(1, 2));
        assert_eq!(g.dense_id(30), Some(3));
    }

    #[test]
    fn loader_rejects_loops_and_garbage() {
        assert!(matches!(
            parse_edge_list("1 1\n"),
            Err(GraphError::Parse { line: 1, .. })
        ));
        assert!(parse_edge_list("1 2 3\n").is_err());
        assert!(parse_edge_list("a b\n").is_err());
    }

    #[test]
    fn round_trip() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        let back = parse_edge_list(&write_edge_list(&g)).unwrap();
        assert_eq!(back.graph, g);
        let iso = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(parse_edge_list(&write_edge_list(&iso)).unwrap().graph, iso);
    }

    #[test]
    fn girth_values() {
        let c7 = Graph::from_edges(7, (0..7).map(|i| (i, (i + 1) % 7))).unwrap();
        assert_eq!(c7.girth(), Some(7));
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.girth(), None);
    }
}
