//! Clique-paths, the normal-path bicombing, fellow-traveler scans, the
//! shortening step behind falsification by fellow travelers, and almost convexity.

use std::fmt;

use rand::seq::IteratorRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::UNREACHABLE;
use crate::metric::DistanceOracle;
use crate::set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombingError {
    #[error("clique-path level {level} is empty")]
    EmptyLevel { level: usize },
    #[error("clique-path level {level} is not a clique")]
    NotAClique { level: usize },
    #[error("sink is not at uniform distance from the source")]
    NotUniformDistance,
    #[error("path is already a geodesic")]
    AlreadyGeodesic,
    #[error("consecutive vertices {0} and {1} are not adjacent")]
    NotAWalk(usize, usize),
    #[error("path is empty")]
    EmptyPath,
    #[error("local conditions fail: {0}")]
    LocalConditionsFail(String),
}

/// Levels `C_0 = {u}, C_1, ..., C_k` from a source vertex to a sink clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliquePath {
    pub source: usize,
    pub levels: Vec<VertexSet>,
}

impl CliquePath {
    /// Number of steps `k`.
    pub fn len(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.levels.len() <= 1
    }

    pub fn sink(&self) -> &VertexSet {
        self.levels.last().expect("at least the source level")
    }

    /// Level `i`, with levels past the sink repeating the sink.
    pub fn level(&self, i: usize) -> &VertexSet {
        &self.levels[i.min(self.levels.len() - 1)]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(VertexSet::len).collect()
    }
}

impl fmt::Display for CliquePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.levels.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" -> "))
    }
}

/// Descending construction `C_{i-1} = B*_1(C_i) ∩ B_{i-1}(u)` from `C_k = sink`.
fn descend(d: &DistanceOracle, u: usize, sink: VertexSet, k: usize) -> Result<CliquePath, CombingError> {
    let mut levels = vec![sink];
    for i in (1..=k).rev() {
        let next = d.joint_ball(&levels[levels.len() - 1], 1).intersection(&d.ball(u, i - 1));
        if next.is_empty() {
            return Err(CombingError::EmptyLevel { level: i - 1 });
        }
        if !d.graph().is_clique(&next) {
            return Err(CombingError::NotAClique { level: i - 1 });
        }
        levels.push(next);
    }
    levels.reverse();
    Ok(CliquePath { source: u, levels })
}

/// The canonical clique-path from `u` to `v`. Requires 2-convex balls.
pub fn clique_path(d: &DistanceOracle, u: usize, v: usize) -> Result<CliquePath, CombingError> {
    descend(d, u, VertexSet::singleton(d.n(), v), d.d(u, v))
}

/// Clique-path from `u` to a clique `sink` at uniform distance; `None` if a level empties.
pub fn clique_path_to_set(d: &DistanceOracle, u: usize, sink: &VertexSet) -> Result<Option<CliquePath>, CombingError> {
    let k = sink.first().map(|x| d.d(u, x)).ok_or(CombingError::NotUniformDistance)?;
    if !d.uniform_distance(u, sink, k) {
        return Err(CombingError::NotUniformDistance);
    }
    if !d.graph().is_clique(sink) {
        return Err(CombingError::NotAClique { level: k });
    }
    match descend(d, u, sink.clone(), k) {
        Ok(p) => Ok(Some(p)),
        Err(CombingError::EmptyLevel { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// First failing index for each normal-path axiom; `None` means the axiom holds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NormalAxiomReport {
    pub nonempty: Option<usize>,
    /// Consecutive levels disjoint with clique union.
    pub i: Option<usize>,
    /// Levels two apart disjoint with no edges between them.
    pub ii: Option<usize>,
    /// Levels three apart at uniform distance 3.
    pub iii: Option<usize>,
    /// `C_i = B*_1(C_{i+1}) ∩ B_1(C_{i-1})`.
    pub iv: Option<usize>,
}

impl NormalAxiomReport {
    pub fn holds(&self) -> bool {
        self.nonempty.is_none() && self.i.is_none() && self.ii.is_none() && self.iii.is_none() && self.iv.is_none()
    }
}

fn all_pairs_at(d: &DistanceOracle, a: &VertexSet, b: &VertexSet, dist: usize) -> bool {
    a.iter().all(|x| b.iter().all(|y| d.d(x, y) == dist))
}

fn no_edges_between(d: &DistanceOracle, a: &VertexSet, b: &VertexSet) -> bool {
    a.iter().all(|x| b.iter().all(|y| d.d(x, y) >= 2))
}

pub fn is_normal(d: &DistanceOracle, path: &CliquePath) -> NormalAxiomReport {
    let c = &path.levels;
    let k = c.len() - 1;
    let g = d.graph();
    NormalAxiomReport {
        nonempty: first_failure(0..=k, |i| c[i].is_empty()),
        i: first_failure(0..k, |i| !c[i].is_disjoint(&c[i + 1]) || !g.is_clique(&c[i].union(&c[i + 1]))),
        ii: first_failure(1..k, |i| {
            !c[i - 1].is_disjoint(&c[i + 1]) || !no_edges_between(d, &c[i - 1], &c[i + 1])
        }),
        iii: first_failure(3..=k, |i| !all_pairs_at(d, &c[i], &c[i - 3], 3)),
        iv: first_failure(1..k, |i| {
            c[i] != d.joint_ball(&c[i + 1], 1).intersection(&d.ball_around_set(&c[i - 1], 1))
        }),
    }
}

fn first_failure(range: impl Iterator<Item = usize>, mut bad: impl FnMut(usize) -> bool) -> Option<usize> {
    range.into_iter().find(|&i| bad(i))
}

/// Every nonempty clique contained in `candidates` (sorted), in lexicographic order.
fn cliques_within(d: &DistanceOracle, candidates: &[usize]) -> Vec<Vec<usize>> {
    fn go(d: &DistanceOracle, cand: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for (i, &x) in cand.iter().enumerate() {
            if cur.iter().all(|&y| d.adjacent(x, y)) {
                cur.push(x);
                out.push(cur.clone());
                go(d, &cand[i + 1..], cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(d, candidates, &mut Vec::new(), &mut out);
    out
}

/// All normal clique-paths from `u` to `{v}` with at most `max_len` steps
/// (default `n`), by level-wise backtracking. Graphs without convex balls can
/// carry arbitrarily long normal paths, hence the cap.
pub fn enumerate_normal_paths(d: &DistanceOracle, u: usize, v: usize, max_len: Option<usize>) -> Vec<CliquePath> {
    let n = d.n();
    let cap = max_len.unwrap_or(n);
    let target = VertexSet::singleton(n, v);
    let mut out = Vec::new();
    let mut levels = vec![VertexSet::singleton(n, u)];
    if u == v {
        out.push(CliquePath { source: u, levels: levels.clone() });
    }

    fn extend(
        d: &DistanceOracle,
        u: usize,
        target: &VertexSet,
        cap: usize,
        levels: &mut Vec<VertexSet>,
        out: &mut Vec<CliquePath>,
    ) {
        let i = levels.len() - 1;
        if i >= cap {
            return;
        }
        let mut cand = d.joint_ball(&levels[i], 1).difference(&levels[i]);
        if i >= 1 {
            cand.difference_with(&d.ball_around_set(&levels[i - 1], 1));
        }
        let below = (i >= 1).then(|| d.ball_around_set(&levels[i - 1], 1));
        for clique in cliques_within(d, &cand.to_vec()) {
            let next = VertexSet::from_vertices(d.n(), clique);
            if i + 1 >= 3 && !all_pairs_at(d, &next, &levels[i - 2], 3) {
                continue;
            }
            if let Some(below) = &below {
                if levels[i] != d.joint_ball(&next, 1).intersection(below) {
                    continue;
                }
            }
            let hit = &next == target;
            levels.push(next);
            if hit {
                out.push(CliquePath { source: u, levels: levels.clone() });
            }
            extend(d, u, target, cap, levels, out);
            levels.pop();
        }
    }
    extend(d, u, &target, cap, &mut levels, &mut out);
    out
}

/// A vertex path choosing one member per level of `clique_path(u, v)`: the
/// smallest id for `seed = 0`, a seeded random member otherwise.
pub fn normal_vertex_path(d: &DistanceOracle, u: usize, v: usize, seed: u64) -> Result<Vec<usize>, CombingError> {
    let cp = clique_path(d, u, v)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(cp
        .levels
        .iter()
        .map(|c| if seed == 0 { c.first().unwrap() } else { c.iter().choose(&mut rng).unwrap() })
        .collect())
}

/// Canonical clique-paths for every ordered pair.
#[derive(Clone, Debug)]
pub struct CliquePathTable {
    n: usize,
    paths: Vec<CliquePath>,
}

impl CliquePathTable {
    pub fn new(d: &DistanceOracle) -> Result<Self, CombingError> {
        let n = d.n();
        let paths = (0..n * n)
            .into_par_iter()
            .map(|i| clique_path(d, i / n, i % n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { n, paths })
    }

    pub fn get(&self, u: usize, v: usize) -> &CliquePath {
        &self.paths[u * self.n + v]
    }
}

/// `max_i max_{x ∈ C_i, y ∈ C'_i} d(x, y)` with sinks repeated past their end.
pub fn level_distance(d: &DistanceOracle, a: &CliquePath, b: &CliquePath) -> usize {
    let k = a.len().max(b.len());
    (0..=k)
        .map(|i| {
            let (ca, cb) = (a.level(i), b.level(i));
            ca.iter().flat_map(|x| cb.iter().map(move |y| d.d(x, y))).max().unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// Worst case of a fellow-traveler scan.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FellowTravelerStats {
    pub quadruples: usize,
    /// Largest level distance seen.
    pub max_distance: usize,
    /// Largest `level distance / max(d(u,u'), d(v,v'))`, as a fraction.
    pub ratio_num: usize,
    pub ratio_den: usize,
    /// `(u, v, u', v')` attaining the ratio.
    pub worst: Option<(usize, usize, usize, usize)>,
}

impl FellowTravelerStats {
    pub fn ratio(&self) -> f64 {
        if self.ratio_den == 0 {
            0.0
        } else {
            self.ratio_num as f64 / self.ratio_den as f64
        }
    }

    fn absorb(&mut self, q: (usize, usize, usize, usize), dist: usize, den: usize) {
        self.quadruples += 1;
        self.max_distance = self.max_distance.max(dist);
        if den > 0 && (self.ratio_den == 0 || dist * self.ratio_den > self.ratio_num * den) {
            self.ratio_num = dist;
            self.ratio_den = den;
            self.worst = Some(q);
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.quadruples += other.quadruples;
        self.max_distance = self.max_distance.max(other.max_distance);
        if other.ratio_den > 0 && (self.ratio_den == 0 || other.ratio_num * self.ratio_den > self.ratio_num * other.ratio_den)
        {
            self.ratio_num = other.ratio_num;
            self.ratio_den = other.ratio_den;
            self.worst = other.worst;
        }
        self
    }
}

impl fmt::Display for FellowTravelerStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "quadruples={} max_distance={} max_ratio={}/{}",
            self.quadruples, self.max_distance, self.ratio_num, self.ratio_den
        )?;
        if let Some((u, v, u2, v2)) = self.worst {
            write!(f, " worst=({u},{v},{u2},{v2})")?;
        }
        Ok(())
    }
}

/// Scans the given quadruples `(u, v, u', v')`, skipping those with `u = u'` and `v = v'`.
pub fn fellow_traveler_scan<I>(d: &DistanceOracle, table: &CliquePathTable, quadruples: I) -> FellowTravelerStats
where
    I: IntoIterator<Item = (usize, usize, usize, usize)>,
{
    let mut stats = FellowTravelerStats::default();
    for q @ (u, v, u2, v2) in quadruples {
        if u == u2 && v == v2 {
            continue;
        }
        let dist = level_distance(d, table.get(u, v), table.get(u2, v2));
        stats.absorb(q, dist, d.d(u, u2).max(d.d(v, v2)));
    }
    stats
}

/// All four scans over a graph, each exhaustive.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FellowTravelerReport {
    /// All quadruples; the ratio is bounded by 7.
    pub general: FellowTravelerStats,
    /// `u = u'`, `v ~ v'`; distance bounded by 3.
    pub adjacent_sinks: FellowTravelerStats,
    /// `u ~ u'`, `v = v'`, `d(u,v) > d(u',v)`; distance bounded by 1.
    pub adjacent_sources_closer: FellowTravelerStats,
    /// `u ~ u'`, `v = v'`, `d(u,v) = d(u',v)`; distance bounded by 4.
    pub adjacent_sources_equal: FellowTravelerStats,
}

pub fn exhaustive_fellow_scan(d: &DistanceOracle, table: &CliquePathTable) -> FellowTravelerReport {
    let n = d.n();
    let g = d.graph();
    let general = (0..n)
        .into_par_iter()
        .map(|u| {
            let quads = (0..n).flat_map(move |v| (0..n).flat_map(move |u2| (0..n).map(move |v2| (u, v, u2, v2))));
            fellow_traveler_scan(d, table, quads)
        })
        .reduce(FellowTravelerStats::default, FellowTravelerStats::merge);
    let sinks = (0..n).flat_map(|u| (0..n).flat_map(move |v| g.neighbors(v).iter().map(move |&v2| (u, v, u, v2))));
    let adjacent_sinks = fellow_traveler_scan(d, table, sinks);
    let sources = |closer: bool| {
        (0..n).flat_map(move |u| {
            g.neighbors(u).iter().flat_map(move |&u2| {
                (0..n)
                    .filter(move |&v| (d.d(u, v) > d.d(u2, v)) == closer && d.d(u, v) >= d.d(u2, v))
                    .map(move |v| (u, v, u2, v))
            })
        })
    };
    FellowTravelerReport {
        general,
        adjacent_sinks,
        adjacent_sources_closer: fellow_traveler_scan(d, table, sources(true)),
        adjacent_sources_equal: fellow_traveler_scan(d, table, sources(false)),
    }
}

fn check_walk(d: &DistanceOracle, path: &[usize]) -> Result<(), CombingError> {
    if path.is_empty() {
        return Err(CombingError::EmptyPath);
    }
    match path.windows(2).find(|w| !d.adjacent(w[0], w[1])) {
        Some(w) => Err(CombingError::NotAWalk(w[0], w[1])),
        None => Ok(()),
    }
}

/// Given a geodesic `gamma` from `u` to `w` and `w'` equal or adjacent to `w`
/// with `d(u, w') = d(u, w)`, a geodesic to `w'` staying within distance 1 of `gamma`.
fn companion_geodesic(d: &DistanceOracle, gamma: &[usize], target: usize) -> Option<Vec<usize>> {
    let m = gamma.len() - 1;
    let w = gamma[m];
    if target == w {
        return Some(gamma.to_vec());
    }
    if m == 0 || !d.adjacent(w, target) || d.d(gamma[0], target) != m {
        return None;
    }
    let prev = gamma[m - 1];
    let z = if d.adjacent(prev, target) {
        prev
    } else {
        d.graph()
            .neighbors(w)
            .iter()
            .copied()
            .find(|&z| d.adjacent(z, target) && d.d(gamma[0], z) + 1 == m)?
    };
    let mut out = companion_geodesic(d, &gamma[..m], z)?;
    out.push(target);
    Some(out)
}

/// One shortening step for a non-geodesic walk: same endpoints, strictly
/// shorter, asynchronously 2-fellow traveling the input on graphs with convex balls.
pub fn fftp_shorten(d: &DistanceOracle, path: &[usize]) -> Result<Vec<usize>, CombingError> {
    check_walk(d, path)?;
    let k = path.len() - 1;
    let u = path[0];
    if d.d(u, path[k]) == k {
        return Err(CombingError::AlreadyGeodesic);
    }
    // A walk with k >= 2 steps that is not a geodesic stops gaining distance somewhere.
    let i0 = (1..k).find(|&i| d.d(u, path[i + 1]) <= i).expect("non-geodesic walks have a first non-increase");
    let tail = &path[i0 + 2..];
    let join = |mut head: Vec<usize>, rest: &[usize]| {
        head.extend_from_slice(rest);
        head
    };
    if i0 == 1 {
        // `path[2]` is `u` or adjacent to it.
        let head = if path[2] == u { vec![u] } else { vec![u, path[2]] };
        return Ok(join(head, tail));
    }
    let (w, v, v2) = (path[i0 - 1], path[i0], path[i0 + 1]);
    let prefix = &path[..i0];
    let fail = |what: &str| CombingError::LocalConditionsFail(format!("{what} at position {i0}"));
    if d.d(u, v2) + 1 == i0 {
        let gamma = companion_geodesic(d, prefix, v2).ok_or_else(|| fail("neighbor interval condition"))?;
        return Ok(join(gamma, tail));
    }
    let g = d.graph();
    // Triangle condition: a common neighbor of v, v' one level down, preferring w.
    let tc = std::iter::once(w)
        .chain(g.neighbors(v).iter().copied())
        .find(|&x| d.adjacent(x, v2) && d.adjacent(x, v) && d.d(u, x) + 1 == i0);
    if let Some(w2) = tc {
        let mut gamma = companion_geodesic(d, prefix, w2).ok_or_else(|| fail("neighbor interval condition"))?;
        gamma.push(v2);
        return Ok(join(gamma, tail));
    }
    // Pentagon condition with respect to w.
    let pc = g.neighbors(v2).iter().copied().filter(|&w2| d.d(u, w2) + 1 == i0).find_map(|w2| {
        g.neighbors(w)
            .iter()
            .copied()
            .find(|&z| d.adjacent(z, w2) && d.d(u, z) + 2 == i0)
            .map(|z| (w2, z))
    });
    let (w2, z) = pc.ok_or_else(|| fail("triangle-pentagon condition"))?;
    let mut gamma = companion_geodesic(d, &path[..i0 - 1], z).ok_or_else(|| fail("neighbor interval condition"))?;
    gamma.extend([w2, v2]);
    Ok(join(gamma, tail))
}

/// Least `K` such that some monotone reparametrization (steps advance one or
/// both paths) keeps the paths within distance `K`. Paths need not share endpoints.
pub fn async_fellow_k(d: &DistanceOracle, p1: &[usize], p2: &[usize]) -> usize {
    let (a, b) = (p1.len(), p2.len());
    assert!(a > 0 && b > 0, "paths must be nonempty");
    let mut best = vec![usize::MAX; a * b];
    for i in 0..a {
        for j in 0..b {
            let here = d.d(p1[i], p2[j]);
            let before = if i == 0 && j == 0 {
                0
            } else {
                let mut m = usize::MAX;
                if i > 0 {
                    m = m.min(best[(i - 1) * b + j]);
                }
                if j > 0 {
                    m = m.min(best[i * b + j - 1]);
                }
                if i > 0 && j > 0 {
                    m = m.min(best[(i - 1) * b + j - 1]);
                }
                m
            };
            best[i * b + j] = before.max(here);
        }
    }
    best[a * b - 1]
}

/// Calls `visit` with every walk of `1..=max_len` edges, in lexicographic order.
pub fn for_each_walk<F: FnMut(&[usize])>(d: &DistanceOracle, max_len: usize, mut visit: F) {
    let g = d.graph();
    fn go<F: FnMut(&[usize])>(g: &crate::graph::Graph, max_len: usize, walk: &mut Vec<usize>, visit: &mut F) {
        if walk.len() > 1 {
            visit(walk);
        }
        if walk.len() > max_len {
            return;
        }
        let last = *walk.last().unwrap();
        for &x in g.neighbors(last) {
            walk.push(x);
            go(g, max_len, walk, visit);
            walk.pop();
        }
    }
    for s in 0..d.n() {
        go(g, max_len, &mut vec![s], &mut visit);
    }
}

/// `K_k`: the longest detour needed to join two vertices of a sphere `S_r(v)`
/// at distance at most `k` without leaving `B_r(v)`. `None` when some such pair
/// is disconnected inside its ball.
pub fn almost_convexity_constant(d: &DistanceOracle, k: usize) -> Option<usize> {
    assert!(k >= 2, "almost convexity needs k >= 2");
    let n = d.n();
    let g = d.graph();
    let per_center: Vec<Option<usize>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut worst = 0;
            for r in 1..=d.eccentricity(v) {
                let ball = d.ball(v, r);
                let (sub, map) = g.induced(&ball);
                let local: Vec<usize> = {
                    let mut inv = vec![usize::MAX; n];
                    for (i, &x) in map.iter().enumerate() {
                        inv[x] = i;
                    }
                    inv
                };
                let sphere: Vec<usize> = (0..n).filter(|&x| d.d(v, x) == r).collect();
                for &x in &sphere {
                    let dist = sub.bfs_distances(local[x]);
                    for &y in sphere.iter().filter(|&&y| y > x && d.d(x, y) <= k) {
                        let inside = dist[local[y]];
                        if inside == UNREACHABLE {
                            return None;
                        }
                        worst = worst.max(inside as usize);
                    }
                }
            }
            Some(worst)
        })
        .collect();
    per_center.into_iter().try_fold(0, |acc, x| x.map(|x| acc.max(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{clique_path_figure, complete, cycle, petersen};
    use crate::metric::all_pairs_distances;

    fn oracle(g: &crate::graph::Graph) -> DistanceOracle {
        all_pairs_distances(g).unwrap()
    }

    #[test]
    fn short_clique_paths() {
        let d = oracle(&cycle(5));
        assert_eq!(clique_path(&d, 0, 1).unwrap().sizes(), vec![1, 1]);
        let p = clique_path(&d, 0, 2).unwrap();
        assert_eq!(p.levels[1].to_vec(), vec![1]);
        assert!(is_normal(&d, &p).holds());
    }

    #[test]
    fn figure_levels() {
        let ng = clique_path_figure();
        let d = oracle(&ng.graph);
        let (u, v) = (ng.label("u"), ng.label("v"));
        let p = clique_path(&d, u, v).unwrap();
        assert_eq!(p.sizes(), vec![1, 3, 1, 2, 1]);
        let names = |s: &VertexSet| {
            let mut out: Vec<&str> = s.iter().map(|x| ng.labels.iter().find(|(_, &id)| id == x).unwrap().0.as_str()).collect();
            out.sort_unstable();
            out
        };
        assert_eq!(names(&p.levels[1]), vec!["11", "12", "13"]);
        assert_eq!(names(&p.levels[2]), vec!["22"]);
        assert_eq!(names(&p.levels[3]), vec!["31", "32"]);
        assert!(is_normal(&d, &p).holds());
        assert_eq!(enumerate_normal_paths(&d, u, v, None), vec![p.clone()]);
        let geo = normal_vertex_path(&d, u, v, 0).unwrap();
        assert_eq!(geo.len(), 5);

        // Dropping a vertex from the three-vertex level breaks the fixpoint axiom.
        let mut broken = p.clone();
        let drop = broken.levels[1].first().unwrap();
        broken.levels[1].remove(drop);
        assert!(is_normal(&d, &broken).iv.is_some());
    }

    #[test]
    fn c4_and_c6_corner_cases() {
        let c4 = oracle(&cycle(4));
        assert!(enumerate_normal_paths(&c4, 0, 2, None).is_empty());
        let c6 = oracle(&cycle(6));
        let edge = VertexSet::from_vertices(6, [2, 3]);
        assert_eq!(clique_path_to_set(&c6, 0, &edge), Err(CombingError::NotUniformDistance));
        // An edge at uniform distance in a triangle-free graph has no common neighbor.
        let c7 = oracle(&cycle(7));
        assert_eq!(clique_path_to_set(&c7, 0, &VertexSet::from_vertices(7, [3, 4])), Ok(None));
        let single = clique_path_to_set(&c7, 0, &VertexSet::singleton(7, 3)).unwrap().unwrap();
        assert_eq!(single, clique_path(&c7, 0, 3).unwrap());
        // Singleton levels along a geodesic satisfy every axiom.
        let p = CliquePath {
            source: 0,
            levels: (0..4).map(|i| VertexSet::singleton(6, i)).collect(),
        };
        assert!(is_normal(&c6, &p).holds());
    }

    #[test]
    fn c7_has_long_normal_paths() {
        let d = oracle(&cycle(7));
        // Walking around the cycle satisfies every local axiom.
        let paths = enumerate_normal_paths(&d, 0, 1, Some(8));
        assert!(paths.iter().any(|p| p.len() == 8));
    }

    #[test]
    fn fftp_small_cases() {
        let d = oracle(&cycle(5));
        let short = fftp_shorten(&d, &[0, 4, 3, 2]).unwrap();
        assert_eq!(short, vec![0, 1, 2]);
        assert!(async_fellow_k(&d, &[0, 4, 3, 2], &short) <= 2);
        assert_eq!(fftp_shorten(&d, &[0, 1, 0, 4]).unwrap(), vec![0, 4]);
        assert_eq!(fftp_shorten(&d, &[0, 1, 2]), Err(CombingError::AlreadyGeodesic));
        assert_eq!(fftp_shorten(&d, &[0, 2]), Err(CombingError::NotAWalk(0, 2)));
        let k3 = oracle(&complete(3));
        assert_eq!(fftp_shorten(&k3, &[0, 1, 0]).unwrap(), vec![0]);
    }

    #[test]
    fn async_k_values() {
        let c5 = oracle(&cycle(5));
        assert_eq!(async_fellow_k(&c5, &[0, 1, 2], &[0, 1, 2]), 0);
        // Any coupling of the two arcs passes a pair at distance 2.
        assert_eq!(async_fellow_k(&c5, &[0, 1, 2], &[0, 4, 3, 2]), 2);
        assert_eq!(async_fellow_k(&c5, &[0, 1, 2], &[0, 1, 2, 3, 2]), 1);
        let c6 = oracle(&cycle(6));
        assert_eq!(async_fellow_k(&c6, &[0, 1, 2, 3], &[0, 5, 4, 3]), 2);
    }

    #[test]
    fn petersen_fftp_and_fellow_travelers() {
        let d = oracle(&petersen());
        let mut count = 0;
        for_each_walk(&d, 6, |w| {
            if d.d(w[0], w[w.len() - 1]) < w.len() - 1 {
                let s = fftp_shorten(&d, w).unwrap();
                assert!(s.len() < w.len() && s[0] == w[0] && s.last() == w.last());
                assert!(async_fellow_k(&d, w, &s) <= 2, "{w:?} -> {s:?}");
                count += 1;
            }
        });
        assert!(count > 0);
        let table = CliquePathTable::new(&d).unwrap();
        let r = exhaustive_fellow_scan(&d, &table);
        assert!(r.general.ratio_num <= 7 * r.general.ratio_den);
        assert!(r.adjacent_sinks.max_distance <= 3);
        assert!(r.adjacent_sources_closer.max_distance <= 1);
        assert!(r.adjacent_sources_equal.max_distance <= 4);
    }

    #[test]
    fn almost_convexity() {
        assert_eq!(almost_convexity_constant(&oracle(&cycle(8)), 2), Some(6));
        assert!(almost_convexity_constant(&oracle(&petersen()), 2).unwrap() <= 2);
    }
}
