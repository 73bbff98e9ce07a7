//! Isometric cycles, forbidden pentagon patterns, pentagon pairs and the
//! triangle-free classification.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::convexity::has_convex_balls;
use crate::generators;
use crate::graph::Graph;
use crate::metric::{all_pairs_distances, DistanceOracle};
use crate::set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubstructureError {
    #[error("pentagons share {0} vertices; at least 2 are required")]
    DisjointPentagons(usize),
    #[error("{0:?} is not an induced pentagon")]
    NotAPentagon([usize; 5]),
    #[error("graph has a triangle {0:?}")]
    HasTriangle([usize; 3]),
    #[error("block {0:?} is CB and 2-connected but not a Moore graph of diameter 2")]
    UnexpectedBlock(Vec<usize>),
}

/// Five vertices in cyclic order forming an induced 5-cycle.
pub type Pentagon = [usize; 5];

pub fn is_pentagon(g: &Graph, p: &Pentagon) -> bool {
    (0..5).all(|i| {
        let a = p[i];
        g.has_edge(a, p[(i + 1) % 5]) && !g.has_edge(a, p[(i + 2) % 5]) && a != p[(i + 2) % 5]
    })
}

/// All induced 5-cycles, each listed once: smallest vertex first, then the
/// smaller of its two cycle neighbors.
pub fn enumerate_pentagons(g: &Graph) -> Vec<Pentagon> {
    let mut out = Vec::new();
    let n = g.n();
    for a in 0..n {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b).iter().filter(|&&c| c > a && !g.has_edge(a, c)) {
                for &dd in g.neighbors(c).iter().filter(|&&x| x > a && x != b && !g.has_edge(b, x) && !g.has_edge(a, x)) {
                    for &e in g.neighbors(dd).iter().filter(|&&e| e > b && e != c) {
                        if g.has_edge(e, a) && !g.has_edge(e, b) && !g.has_edge(e, c) {
                            out.push([a, b, c, dd, e]);
                        }
                    }
                }
            }
        }
    }
    out
}

/// All 3-cliques `a < b < c`.
pub fn enumerate_triangles(g: &Graph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        for &c in g.neighbors(b).iter().filter(|&&c| c > b) {
            if g.has_edge(a, c) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

fn isometric_cycles_of_length(d: &DistanceOracle, len: usize, out: &mut Vec<Vec<usize>>) {
    let g = d.graph();
    let n = d.n();
    let cyc = |gap: usize| gap.min(len - gap);
    let mut path = Vec::with_capacity(len);
    let mut used = vec![false; n];
    fn extend(
        d: &DistanceOracle,
        g: &Graph,
        len: usize,
        cyc: &dyn Fn(usize) -> usize,
        path: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        let t = path.len();
        if t == len {
            if path[1] < path[len - 1] {
                out.push(path.clone());
            }
            return;
        }
        let last = path[t - 1];
        for &y in g.neighbors(last) {
            if y <= path[0] || used[y] {
                continue;
            }
            if path.iter().enumerate().all(|(s, &c)| d.d(c, y) == cyc(t - s)) {
                used[y] = true;
                path.push(y);
                extend(d, g, len, cyc, path, used, out);
                path.pop();
                used[y] = false;
            }
        }
    }
    for start in 0..n {
        path.push(start);
        used[start] = true;
        extend(d, g, len, &cyc, &mut path, &mut used, out);
        used[start] = false;
        path.pop();
    }
}

/// Isometric cycles of length `3..=max_len`, one representative per cycle
/// (smallest vertex first, direction toward its smaller neighbor).
///
/// The search only extends paths whose every pair matches the cycle metric,
/// which prunes almost everything outside genuine isometric cycles.
pub fn enumerate_isometric_cycles(d: &DistanceOracle, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for len in 3..=max_len.min(d.n()) {
        isometric_cycles_of_length(d, len, &mut out);
    }
    out
}

/// Calls `visit` with each induced embedding of `pattern` (pattern vertex `i` maps to `phi[i]`).
pub fn for_each_induced_embedding<F>(g: &Graph, pattern: &Graph, mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let k = pattern.n();
    if k == 0 || k > g.n() {
        return;
    }
    // Pattern order in which every vertex after the first has an earlier neighbor.
    let mut order = vec![0];
    let mut placed = vec![false; k];
    placed[0] = true;
    while order.len() < k {
        let next = (0..k)
            .find(|&p| !placed[p] && pattern.neighbors(p).iter().any(|&q| placed[q]))
            .expect("pattern must be connected");
        placed[next] = true;
        order.push(next);
    }
    let anchor: Vec<Option<usize>> = order
        .iter()
        .enumerate()
        .map(|(i, &p)| order[..i].iter().copied().find(|&q| pattern.has_edge(p, q)))
        .collect();
    let mut phi = vec![usize::MAX; k];
    let mut used = vec![false; g.n()];

    #[allow(clippy::too_many_arguments)]
    fn go<F: FnMut(&[usize]) -> ControlFlow<()>>(
        i: usize,
        g: &Graph,
        pattern: &Graph,
        order: &[usize],
        anchor: &[Option<usize>],
        phi: &mut [usize],
        used: &mut [bool],
        visit: &mut F,
    ) -> ControlFlow<()> {
        if i == order.len() {
            return visit(phi);
        }
        let p = order[i];
        let candidates: Vec<usize> = match anchor[i] {
            Some(q) => g.neighbors(phi[q]).to_vec(),
            None => (0..g.n()).collect(),
        };
        for c in candidates {
            if used[c] {
                continue;
            }
            let consistent = order[..i]
                .iter()
                .all(|&q| pattern.has_edge(p, q) == g.has_edge(c, phi[q]));
            if !consistent {
                continue;
            }
            phi[p] = c;
            used[c] = true;
            let flow = go(i + 1, g, pattern, order, anchor, phi, used, visit);
            used[c] = false;
            phi[p] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }
    let _ = go(0, g, pattern, &order, &anchor, &mut phi, &mut used, &mut visit);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ForbiddenKind {
    IsoCycleBadLen,
    IsoPt,
    Pp1DiamGt3,
    Pp2DiamGt2,
}

impl ForbiddenKind {
    pub fn name(self) -> &'static str {
        match self {
            ForbiddenKind::IsoCycleBadLen => "ISO_CYCLE_BAD_LEN",
            ForbiddenKind::IsoPt => "ISO_PT",
            ForbiddenKind::Pp1DiamGt3 => "PP1_DIAM_GT3",
            ForbiddenKind::Pp2DiamGt2 => "PP2_DIAM_GT2",
        }
    }
}

/// A forbidden configuration; `vertices` follow the pattern's labeling
/// (cycle order for isometric cycles).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forbidden {
    pub kind: ForbiddenKind,
    pub vertices: Vec<usize>,
}

impl fmt::Display for Forbidden {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        if self.kind == ForbiddenKind::IsoCycleBadLen {
            write!(f, "({})", self.vertices.len())?;
        }
        let vs: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        write!(f, " [{}]", vs.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SubstructureReport {
    /// Cycle length -> number of isometric cycles of that length.
    pub isometric_cycle_lengths: BTreeMap<usize, usize>,
    pub forbidden: Vec<Forbidden>,
}

fn scan_structure(d: &DistanceOracle, first_only: bool) -> SubstructureReport {
    let g = d.graph();
    let mut report = SubstructureReport::default();
    let cycles = enumerate_isometric_cycles(d, 2 * d.diameter() + 1);
    for c in cycles {
        *report.isometric_cycle_lengths.entry(c.len()).or_insert(0) += 1;
        if c.len() >= 4 && c.len() != 5 {
            report.forbidden.push(Forbidden {
                kind: ForbiddenKind::IsoCycleBadLen,
                vertices: c,
            });
        }
    }
    if first_only && !report.forbidden.is_empty() {
        return report;
    }
    let patterns: [(ForbiddenKind, Graph); 3] = [
        (ForbiddenKind::IsoPt, generators::pt().graph),
        (ForbiddenKind::Pp1DiamGt3, generators::pp1().graph),
        (ForbiddenKind::Pp2DiamGt2, generators::pp2().graph),
    ];
    for (kind, pattern) in patterns {
        let pd = all_pairs_distances(&pattern).expect("patterns are connected");
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for_each_induced_embedding(g, &pattern, |phi| {
            let k = phi.len();
            let bad = match kind {
                ForbiddenKind::IsoPt => {
                    (0..k).all(|i| (i + 1..k).all(|j| d.d(phi[i], phi[j]) == pd.d(i, j)))
                }
                ForbiddenKind::Pp1DiamGt3 | ForbiddenKind::Pp2DiamGt2 => {
                    let limit = if kind == ForbiddenKind::Pp1DiamGt3 { 3 } else { 2 };
                    (0..k).any(|i| (i + 1..k).any(|j| d.d(phi[i], phi[j]) > limit))
                }
                ForbiddenKind::IsoCycleBadLen => unreachable!(),
            };
            if bad {
                let mut key = phi.to_vec();
                key.sort_unstable();
                if seen.insert(key) {
                    report.forbidden.push(Forbidden {
                        kind,
                        vertices: phi.to_vec(),
                    });
                    if first_only {
                        return ControlFlow::Break(());
                    }
                }
            }
            ControlFlow::Continue(())
        });
        if first_only && !report.forbidden.is_empty() {
            return report;
        }
    }
    report
}

/// Structural CB test: no isometric cycle of length 4 or at least 6, no isometric
/// PT, every induced PP1 of ambient diameter at most 3, every induced PP2 of
/// ambient diameter 2. An empty `forbidden` list means CB.
pub fn recognize_structural(d: &DistanceOracle) -> SubstructureReport {
    scan_structure(d, false)
}

/// Like [`recognize_structural`] but stops at the first forbidden configuration.
pub fn first_forbidden(d: &DistanceOracle) -> Option<Forbidden> {
    scan_structure(d, true).forbidden.into_iter().next()
}

/// A vertex outside `p` adjacent to all five of its vertices (smallest id).
pub fn universal_vertex(g: &Graph, p: &Pentagon) -> Option<usize> {
    g.neighbors(p[0])
        .iter()
        .copied()
        .find(|&x| !p.contains(&x) && p.iter().all(|&q| g.has_edge(x, q)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PentagonPairClass {
    Diam2,
    UniversalVertex { vertex: usize, which: Which },
    Neither,
}

/// For pentagons sharing at least two vertices: is the union of diameter 2,
/// and failing that, does one of them sit in a 5-wheel.
pub fn analyze_pentagon_pair(
    d: &DistanceOracle,
    p1: &Pentagon,
    p2: &Pentagon,
) -> Result<PentagonPairClass, SubstructureError> {
    for p in [p1, p2] {
        if !is_pentagon(d.graph(), p) {
            return Err(SubstructureError::NotAPentagon(*p));
        }
    }
    let shared = p1.iter().filter(|x| p2.contains(x)).count();
    if shared < 2 {
        return Err(SubstructureError::DisjointPentagons(shared));
    }
    let union = VertexSet::from_vertices(d.n(), p1.iter().chain(p2.iter()).copied());
    if d.set_diameter(&union) <= 2 {
        return Ok(PentagonPairClass::Diam2);
    }
    if let Some(vertex) = universal_vertex(d.graph(), p1) {
        return Ok(PentagonPairClass::UniversalVertex { vertex, which: Which::First });
    }
    if let Some(vertex) = universal_vertex(d.graph(), p2) {
        return Ok(PentagonPairClass::UniversalVertex { vertex, which: Which::Second });
    }
    Ok(PentagonPairClass::Neither)
}

/// Biconnected components as vertex lists (each sorted), in discovery order.
/// Bridges appear as two-vertex blocks; isolated vertices produce nothing.
pub fn blocks(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut out = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, parent, next neighbor index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < g.degree(v) {
                let w = g.neighbors(v)[*idx];
                *idx += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut comp = BTreeSet::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            comp.insert(a);
                            comp.insert(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        out.push(comp.into_iter().collect());
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    Edge,
    Moore { degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockInfo {
    pub vertices: Vec<usize>,
    pub kind: BlockKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangleFreeClass {
    MooreDiam2 { degree: usize },
    WedgeDecomposable { blocks: Vec<BlockInfo> },
    NotCb,
}

/// Regular of degree `k`, girth 5, diameter 2 and `n = k^2 + 1`.
pub fn moore_degree(g: &Graph) -> Option<usize> {
    let n = g.n();
    let k = g.degree(0);
    let regular = (0..n).all(|v| g.degree(v) == k);
    let shape = regular && n == k * k + 1 && g.girth() == Some(5);
    let diam2 = all_pairs_distances(g).is_ok_and(|d| d.diameter() == 2);
    (shape && diam2).then_some(k)
}

/// Triangle-free CB graphs: 2-connected ones are Moore graphs of diameter 2,
/// others are glued from such blocks and bridges.
pub fn classify_triangle_free(d: &DistanceOracle) -> Result<TriangleFreeClass, SubstructureError> {
    let g = d.graph();
    if let Some(t) = enumerate_triangles(g).first() {
        return Err(SubstructureError::HasTriangle(*t));
    }
    if !has_convex_balls(d).holds {
        return Ok(TriangleFreeClass::NotCb);
    }
    let classify_block = |vs: &[usize]| -> Result<BlockKind, SubstructureError> {
        if vs.len() == 2 {
            return Ok(BlockKind::Edge);
        }
        let (sub, _) = g.induced(&VertexSet::from_vertices(g.n(), vs.iter().copied()));
        moore_degree(&sub)
            .map(|degree| BlockKind::Moore { degree })
            .ok_or_else(|| SubstructureError::UnexpectedBlock(vs.to_vec()))
    };
    let bs = blocks(g);
    if bs.len() == 1 && bs[0].len() == g.n() && g.n() >= 3 {
        return match classify_block(&bs[0])? {
            BlockKind::Moore { degree } => Ok(TriangleFreeClass::MooreDiam2 { degree }),
            BlockKind::Edge => unreachable!(),
        };
    }
    let blocks = bs
        .into_iter()
        .map(|vs| classify_block(&vs).map(|kind| BlockInfo { vertices: vs, kind }))
        .collect::<Result<_, _>>()?;
    Ok(TriangleFreeClass::WedgeDecomposable { blocks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn c5_and_c6_cycles() {
        let d5 = all_pairs_distances(&cycle(5)).unwrap();
        assert_eq!(enumerate_isometric_cycles(&d5, 5), vec![vec![0, 1, 2, 3, 4]]);
        let d6 = all_pairs_distances(&cycle(6)).unwrap();
        let r = recognize_structural(&d6);
        assert_eq!(r.forbidden.len(), 1);
        assert_eq!(r.forbidden[0].kind, ForbiddenKind::IsoCycleBadLen);
        assert_eq!(r.forbidden[0].vertices.len(), 6);
    }

    #[test]
    fn blocks_of_a_wedge_and_a_path() {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend([(0, 5), (5, 6), (6, 7), (7, 8), (8, 0)]);
        let g = Graph::from_edges(9, edges).unwrap();
        let mut bs = blocks(&g);
        bs.sort();
        assert_eq!(bs, vec![vec![0, 1, 2, 3, 4], vec![0, 5, 6, 7, 8]]);
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(blocks(&path).len(), 2);
    }

    #[test]
    fn wheel_hub_is_universal() {
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        edges.extend((0..5).map(|i| (i, 5)));
        let g = Graph::from_edges(6, edges).unwrap();
        assert_eq!(universal_vertex(&g, &[0, 1, 2, 3, 4]), Some(5));
        assert_eq!(universal_vertex(&cycle(5), &[0, 1, 2, 3, 4]), None);
    }

    #[test]
    fn embedding_counts_match_automorphisms() {
        // The 5-cycle has 10 automorphisms, hence 10 embeddings into itself.
        let mut count = 0;
        for_each_induced_embedding(&cycle(5), &cycle(5), |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 10);
    }
}
