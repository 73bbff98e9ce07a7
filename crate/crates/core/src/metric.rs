//! All-pairs hop distances with interval, ball, hull and power queries.

use rayon::prelude::*;

use crate::graph::{Graph, GraphError, UNREACHABLE};
use crate::set::VertexSet;

/// Materialized `n x n` distance table of a connected graph.
///
/// Owns a copy of the graph so that every query has the adjacency at hand.
#[derive(Clone, Debug)]
pub struct DistanceOracle {
    graph: Graph,
    dist: Vec<u32>,
    diameter: usize,
}

/// BFS from every vertex. Fails on disconnected (or empty) graphs.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceOracle, GraphError> {
    let n = g.n();
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let rows: Vec<Vec<u32>> = (0..n).into_par_iter().map(|s| g.bfs_distances(s)).collect();
    let mut dist = Vec::with_capacity(n * n);
    let mut diameter = 0;
    for (s, row) in rows.into_iter().enumerate() {
        if let Some(t) = row.iter().position(|&d| d == UNREACHABLE) {
            return Err(GraphError::DisconnectedGraph(s, t));
        }
        diameter = diameter.max(*row.iter().max().unwrap() as usize);
        dist.extend(row);
    }
    Ok(DistanceOracle {
        graph: g.clone(),
        dist,
        diameter,
    })
}

impl DistanceOracle {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    #[inline]
    pub fn d(&self, u: usize, v: usize) -> usize {
        self.dist[u * self.graph.n() + v] as usize
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.dist[u * self.graph.n() + v] == 1
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn eccentricity(&self, v: usize) -> usize {
        (0..self.n()).map(|x| self.d(v, x)).max().unwrap_or(0)
    }

    /// `x` lies on a shortest `(u, v)`-path.
    #[inline]
    pub fn in_interval(&self, u: usize, x: usize, v: usize) -> bool {
        self.d(u, x) + self.d(x, v) == self.d(u, v)
    }

    pub fn interval(&self, u: usize, v: usize) -> VertexSet {
        VertexSet::from_vertices(self.n(), (0..self.n()).filter(|&x| self.in_interval(u, x, v)))
    }

    pub fn ball(&self, v: usize, r: usize) -> VertexSet {
        VertexSet::from_vertices(self.n(), (0..self.n()).filter(|&x| self.d(v, x) <= r))
    }

    pub fn sphere(&self, v: usize, r: usize) -> VertexSet {
        VertexSet::from_vertices(self.n(), (0..self.n()).filter(|&x| self.d(v, x) == r))
    }

    /// Vertices within distance `r` of some member of `s`.
    pub fn ball_around_set(&self, s: &VertexSet, r: usize) -> VertexSet {
        VertexSet::from_vertices(
            self.n(),
            (0..self.n()).filter(|&x| s.iter().any(|a| self.d(a, x) <= r)),
        )
    }

    /// `B*_k(S)`, the intersection of the `k`-balls around members of `s`.
    pub fn joint_ball(&self, s: &VertexSet, k: usize) -> VertexSet {
        VertexSet::from_vertices(
            self.n(),
            (0..self.n()).filter(|&x| s.iter().all(|a| self.d(a, x) <= k)),
        )
    }

    /// Vertices of `s` at distance `k` from `v`, as a set.
    pub fn sphere_within(&self, v: usize, r: usize, s: &VertexSet) -> VertexSet {
        VertexSet::from_vertices(self.n(), s.iter().filter(|&x| self.d(v, x) == r))
    }

    /// Neighbors of `u` lying in `I(u, v)`.
    pub fn toward(&self, u: usize, v: usize) -> Vec<usize> {
        let k = self.d(u, v);
        self.graph
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| self.d(w, v) + 1 == k)
            .collect()
    }

    /// Least convex superset of `s`, by interval closure. `conv(∅) = ∅`.
    ///
    /// Each round only closes pairs that involve a vertex added in the previous round.
    pub fn convex_hull(&self, s: &VertexSet) -> VertexSet {
        let n = self.n();
        let mut hull = s.clone();
        let mut members: Vec<usize> = s.iter().collect();
        let mut frontier = members.clone();
        while !frontier.is_empty() {
            let mut added = Vec::new();
            for &a in &frontier {
                for &b in &members {
                    let dab = self.d(a, b);
                    if dab < 2 {
                        continue;
                    }
                    for x in 0..n {
                        if !hull.contains(x) && self.d(a, x) + self.d(x, b) == dab {
                            hull.insert(x);
                            added.push(x);
                        }
                    }
                }
            }
            // Pairs within `added` are covered next round via the extended member list.
            members.extend_from_slice(&added);
            frontier = added;
        }
        hull
    }

    /// Largest pairwise distance inside `s` (0 for sets of size at most 1).
    pub fn set_diameter(&self, s: &VertexSet) -> usize {
        let vs: Vec<usize> = s.iter().collect();
        let mut best = 0;
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                best = best.max(self.d(a, b));
            }
        }
        best
    }

    /// True if every member of `s` is at distance exactly `k` from `v`.
    pub fn uniform_distance(&self, v: usize, s: &VertexSet, k: usize) -> bool {
        s.iter().all(|x| self.d(v, x) == k)
    }

    /// Minimum distance between the two sets.
    pub fn set_distance(&self, a: &VertexSet, b: &VertexSet) -> usize {
        let mut best = usize::MAX;
        for x in a.iter() {
            for y in b.iter() {
                best = best.min(self.d(x, y));
            }
        }
        best
    }
}

/// `G^p`: same vertices, `u ~ v` iff `1 <= d(u, v) <= p`.
pub fn power_graph(g: &Graph, p: usize) -> Graph {
    assert!(p >= 1, "power must be at least 1");
    let n = g.n();
    let rows: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let d = g.bfs_distances(s);
            (0..n)
                .filter(|&t| t != s && d[t] != UNREACHABLE && d[t] as usize <= p)
                .collect()
        })
        .collect();
    let edges = rows
        .iter()
        .enumerate()
        .flat_map(|(s, row)| row.iter().filter(move |&&t| t > s).map(move |&t| (s, t)));
    Graph::from_edges(n, edges).expect("power of a simple graph is simple")
}

/// True if distances inside the induced subgraph on `h` equal ambient distances.
pub fn is_isometric_subgraph(d: &DistanceOracle, h: &VertexSet) -> bool {
    let (sub, map) = d.graph().induced(h);
    (0..sub.n()).all(|i| {
        let di = sub.bfs_distances(i);
        (0..sub.n()).all(|j| di[j] != UNREACHABLE && di[j] as usize == d.d(map[i], map[j]))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn intervals_on_small_cycles() {
        let c5 = all_pairs_distances(&cycle(5)).unwrap();
        assert_eq!(c5.d(0, 2), 2);
        assert_eq!(c5.interval(0, 2).to_vec(), vec![0, 1, 2]);
        assert_eq!(c5.interval(3, 3).to_vec(), vec![3]);
        let c4 = all_pairs_distances(&cycle(4)).unwrap();
        assert_eq!(c4.interval(0, 2).to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(c4.convex_hull(&VertexSet::from_vertices(4, [0, 2])).len(), 4);
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            all_pairs_distances(&g),
            Err(GraphError::DisconnectedGraph(0, 2))
        ));
    }

    #[test]
    fn hull_of_empty_is_empty() {
        let d = all_pairs_distances(&cycle(6)).unwrap();
        assert!(d.convex_hull(&VertexSet::new(6)).is_empty());
    }

    #[test]
    fn c6_square_is_circulant() {
        let sq = power_graph(&cycle(6), 2);
        assert_eq!(sq.m(), 12);
        for v in 0..6 {
            assert_eq!(sq.neighbors(v).len(), 4);
            assert!(!sq.has_edge(v, (v + 3) % 6));
        }
    }

    #[test]
    fn joint_ball_of_edge_in_triangle_free_graph() {
        let d = all_pairs_distances(&cycle(5)).unwrap();
        let e = VertexSet::from_vertices(5, [0, 1]);
        assert_eq!(d.joint_ball(&e, 1).to_vec(), vec![0, 1]);
    }
}
