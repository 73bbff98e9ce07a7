//! BFS orders, dismantlability of powers, cores and sets stabilized by automorphisms.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;
use crate::metric::{power_graph, DistanceOracle};
use crate::set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DismantleError {
    #[error("permutation is not an automorphism")]
    NotAnAutomorphism,
    #[error("no stabilized convex set of diameter at most 2")]
    NotFound,
}

/// A BFS order from `base` with its parent map (`parent[base] = base`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsOrder {
    pub base: usize,
    pub order: Vec<usize>,
    pub parent: Vec<usize>,
}

impl BfsOrder {
    /// Layering, parent adjacency and earliest-parent checks.
    pub fn is_valid(&self, d: &DistanceOracle) -> bool {
        let n = d.n();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        if self.order.len() != n || pos.contains(&usize::MAX) || self.order[0] != self.base {
            return false;
        }
        let layered = self.order.windows(2).all(|w| d.d(self.base, w[0]) <= d.d(self.base, w[1]));
        layered
            && self.order[1..].iter().all(|&v| {
                let p = self.parent[v];
                let earliest = d
                    .graph()
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| d.d(self.base, w) + 1 == d.d(self.base, v))
                    .min_by_key(|&w| pos[w]);
                d.adjacent(p, v) && pos[p] < pos[v] && earliest == Some(p)
            })
    }
}

/// Queue-based BFS; seed 0 discovers neighbors in ascending id order, other
/// seeds shuffle each adjacency list.
pub fn bfs_order(g: &Graph, base: usize, tiebreak_seed: u64) -> BfsOrder {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(tiebreak_seed);
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([base]);
    parent[base] = base;
    while let Some(x) = queue.pop_front() {
        order.push(x);
        let mut nbrs = g.neighbors(x).to_vec();
        if tiebreak_seed != 0 {
            nbrs.shuffle(&mut rng);
        }
        for y in nbrs {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    BfsOrder { base, order, parent }
}

/// `N[v] ∩ P ⊆ N[w] ∩ P` in `h`, where `in_p` marks `P`.
fn dominates(h: &Graph, in_p: &[bool], w: usize, v: usize) -> bool {
    w != v
        && h.has_edge(w, v)
        && h.neighbors(v).iter().all(|&x| !in_p[x] || x == w || h.has_edge(w, x))
}

/// First vertex of `order` not dominated in `G^p` restricted to its prefix, if any.
pub fn verify_dismantling(g: &Graph, order: &[usize], p: usize) -> Option<usize> {
    let h = if p == 1 { g.clone() } else { power_graph(g, p) };
    let mut in_p = vec![false; g.n()];
    let mut placed = Vec::with_capacity(order.len());
    for &v in order {
        in_p[v] = true;
        if !placed.is_empty() && !placed.iter().any(|&w| dominates(&h, &in_p, w, v)) {
            return Some(v);
        }
        placed.push(v);
    }
    None
}

/// Deletes dominated vertices (smallest id first) until none is left.
pub fn compute_core(g: &Graph) -> VertexSet {
    let n = g.n();
    let mut alive = vec![true; n];
    loop {
        let victim = (0..n).find(|&v| alive[v] && g.neighbors(v).iter().any(|&w| alive[w] && dominates(g, &alive, w, v)));
        match victim {
            Some(v) => alive[v] = false,
            None => break,
        }
    }
    VertexSet::from_vertices(n, (0..n).filter(|&v| alive[v]))
}

/// A graph automorphism as an image list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism(Vec<usize>);

impl Automorphism {
    pub fn new(g: &Graph, images: Vec<usize>) -> Result<Self, DismantleError> {
        if g.is_automorphism(&images) {
            Ok(Self(images))
        } else {
            Err(DismantleError::NotAnAutomorphism)
        }
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn image_of(&self, s: &VertexSet) -> VertexSet {
        VertexSet::from_vertices(self.0.len(), s.iter().map(|v| self.0[v]))
    }

    /// Orbits, each sorted, ordered by smallest member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                orbit.push(x);
                x = self.0[x];
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }
}

/// Unions of orbits of total size `size` whose diameter is at most `max_diam`,
/// fed to `visit` in discovery order.
fn orbit_unions(
    d: &DistanceOracle,
    orbits: &[Vec<usize>],
    size: usize,
    max_diam: usize,
    visit: &mut dyn FnMut(&VertexSet),
) {
    let ok: Vec<bool> = orbits
        .iter()
        .map(|o| o.iter().all(|&a| o.iter().all(|&b| d.d(a, b) <= max_diam)))
        .collect();
    fn go(
        d: &DistanceOracle,
        orbits: &[Vec<usize>],
        ok: &[bool],
        start: usize,
        remaining: usize,
        max_diam: usize,
        cur: &mut VertexSet,
        visit: &mut dyn FnMut(&VertexSet),
    ) {
        if remaining == 0 {
            visit(cur);
            return;
        }
        for i in start..orbits.len() {
            let o = &orbits[i];
            if !ok[i] || o.len() > remaining {
                continue;
            }
            if !o.iter().all(|&a| cur.iter().all(|b| d.d(a, b) <= max_diam)) {
                continue;
            }
            for &a in o {
                cur.insert(a);
            }
            go(d, orbits, ok, i + 1, remaining - o.len(), max_diam, cur, visit);
            for &a in o {
                cur.remove(a);
            }
        }
    }
    go(d, orbits, &ok, 0, size, max_diam, &mut VertexSet::new(d.n()), visit);
}

/// Smallest (then lexicographically least) convex `f`-invariant set of diameter at most 2.
pub fn stabilized_convex_set(d: &DistanceOracle, f: &Automorphism) -> Result<VertexSet, DismantleError> {
    let orbits = f.orbits();
    for size in 1..=d.n() {
        let mut best: Option<VertexSet> = None;
        orbit_unions(d, &orbits, size, 2, &mut |s| {
            if d.convex_hull(s).len() == s.len() && best.as_ref().is_none_or(|b| s < b) {
                best = Some(s.clone());
            }
        });
        if let Some(b) = best {
            return Ok(b);
        }
    }
    Err(DismantleError::NotFound)
}

/// Smallest nonempty clique with `f(C) = C`, if any.
pub fn find_stabilized_clique(d: &DistanceOracle, f: &Automorphism) -> Option<VertexSet> {
    let orbits = f.orbits();
    for size in 1..=d.n() {
        let mut best: Option<VertexSet> = None;
        orbit_unions(d, &orbits, size, 1, &mut |s| {
            if best.as_ref().is_none_or(|b| s < b) {
                best = Some(s.clone());
            }
        });
        if best.is_some() {
            return best;
        }
    }
    None
}

/// A 5-cycle (not necessarily induced) mapped onto itself by `f`, as a cyclic vertex list.
pub fn find_stabilized_five_cycle(g: &Graph, f: &Automorphism) -> Option<[usize; 5]> {
    let n = g.n();
    for a in 0..n {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b).iter().filter(|&&c| c > a && c != b) {
                for &dd in g.neighbors(c).iter().filter(|&&x| x > a && x != b) {
                    for &e in g.neighbors(dd).iter().filter(|&&e| e > b && e != c && e != a) {
                        if !g.has_edge(e, a) {
                            continue;
                        }
                        let cyc = [a, b, c, dd, e];
                        let edge_set: Vec<(usize, usize)> = (0..5)
                            .map(|i| {
                                let (x, y) = (cyc[i], cyc[(i + 1) % 5]);
                                (x.min(y), x.max(y))
                            })
                            .collect();
                        let mapped = edge_set.iter().all(|&(x, y)| {
                            let (fx, fy) = (f.apply(x), f.apply(y));
                            edge_set.contains(&(fx.min(fy), fx.max(fy)))
                        });
                        if mapped {
                            return Some(cyc);
                        }
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{circulant, complete_bipartite, cycle, path, petersen};
    use crate::metric::all_pairs_distances;

    #[test]
    fn bfs_on_path_and_star() {
        let p = path(3);
        let o = bfs_order(&p, 0, 0);
        assert_eq!(o.order, vec![0, 1, 2]);
        assert_eq!(o.parent, vec![0, 0, 1]);
        let star = complete_bipartite(1, 3);
        let d = all_pairs_distances(&star).unwrap();
        for seed in 0..5 {
            let o = bfs_order(&star, 0, seed);
            assert_eq!(o.order[0], 0);
            assert!(o.is_valid(&d));
        }
    }

    #[test]
    fn dismantling_examples() {
        assert_eq!(verify_dismantling(&Graph::empty(1), &[0], 1), None);
        let c5 = cycle(5);
        assert!(verify_dismantling(&c5, &bfs_order(&c5, 0, 0).order, 1).is_some());
        let pg = petersen();
        for base in 0..10 {
            for seed in 0..3 {
                assert_eq!(verify_dismantling(&pg, &bfs_order(&pg, base, seed).order, 2), None);
            }
        }
    }

    #[test]
    fn cores() {
        assert_eq!(compute_core(&path(6)).len(), 1);
        assert_eq!(compute_core(&cycle(5)).len(), 5);
        assert_eq!(compute_core(&petersen()).len(), 10);
    }

    #[test]
    fn circulant_stabilizers() {
        let g = circulant(9, &[1, 2]);
        let d = all_pairs_distances(&g).unwrap();
        for step in [1, 3] {
            let f = Automorphism::new(&g, (0..9).map(|v| (v + step) % 9).collect()).unwrap();
            assert_eq!(find_stabilized_clique(&d, &f), None);
            assert_eq!(find_stabilized_five_cycle(&g, &f), None);
            let s = stabilized_convex_set(&d, &f).unwrap();
            assert!(d.set_diameter(&s) <= 2);
            assert_eq!(f.image_of(&s), s);
            assert_eq!(d.convex_hull(&s), s);
        }
        let id = Automorphism::identity(9);
        assert_eq!(stabilized_convex_set(&d, &id).unwrap().to_vec(), vec![0]);
        let c5 = all_pairs_distances(&cycle(5)).unwrap();
        let rot = Automorphism::new(c5.graph(), vec![1, 2, 3, 4, 0]).unwrap();
        assert_eq!(stabilized_convex_set(&c5, &rot).unwrap().len(), 5);
        assert!(find_stabilized_five_cycle(c5.graph(), &rot).is_some());
        assert!(Automorphism::new(c5.graph(), vec![1, 0, 2, 3, 4]).is_err());
    }
}
