//! Triangle-pentagon complexes, cycle contraction, GF(2) homology and the
//! layer-by-layer construction of bounded balls in the universal cover.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::convexity::{balls_convex_up_to, is_convex, ConvexityViolation, ConvexityWitness};
use crate::graph::Graph;
use crate::metric::{all_pairs_distances, DistanceOracle};
use crate::set::VertexSet;
use crate::substructures::{enumerate_pentagons, enumerate_triangles, is_pentagon, Pentagon};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("local conditions fail: {0}")]
    LocalConditionsFail(String),
    #[error("radius {r} needs a cover of radius at least {}, got {radius}", r + 3)]
    MarginTooSmall { r: usize, radius: usize },
    #[error("base vertex {0} out of range")]
    BadBase(usize),
}

/// The 2-complex whose cells are the induced triangles and pentagons.
#[derive(Clone, Debug)]
pub struct TwoComplex {
    pub skeleton: Graph,
    pub triangles: Vec<[usize; 3]>,
    pub pentagons: Vec<Pentagon>,
}

pub fn build_complex(g: &Graph) -> TwoComplex {
    TwoComplex { skeleton: g.clone(), triangles: enumerate_triangles(g), pentagons: enumerate_pentagons(g) }
}

/// Rank of the cycle space modulo cell boundaries over GF(2).
pub fn h1_rank_gf2(x: &TwoComplex) -> usize {
    let g = &x.skeleton;
    let edge_ids: BTreeMap<(usize, usize), usize> = g.edges().enumerate().map(|(i, e)| (e, i)).collect();
    let m = edge_ids.len();
    let edge = |a: usize, b: usize| edge_ids[&(a.min(b), a.max(b))];
    let boundaries = x
        .triangles
        .iter()
        .map(|t| t.to_vec())
        .chain(x.pentagons.iter().map(|p| p.to_vec()))
        .map(|cell| {
            let mut row = FixedBitSet::with_capacity(m);
            for i in 0..cell.len() {
                row.toggle(edge(cell[i], cell[(i + 1) % cell.len()]));
            }
            row
        });
    // Gaussian elimination keyed by pivot column.
    let mut pivots: BTreeMap<usize, FixedBitSet> = BTreeMap::new();
    let mut rank = 0;
    for mut row in boundaries {
        while let Some(p) = row.ones().next() {
            match pivots.get(&p) {
                Some(r) => row.symmetric_difference_with(r),
                None => {
                    pivots.insert(p, row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    let components = connected_components(g);
    (m + components - g.n()) - rank
}

fn connected_components(g: &Graph) -> usize {
    let mut seen = vec![false; g.n()];
    let mut count = 0;
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contraction {
    Constant,
    /// No rewrite rule applies to this circuit.
    Stuck(Vec<usize>),
}

/// `δ(C) = Σ 5^{d(v₀,uᵢ)+d(v₀,uᵢ₊₁)}`.
pub fn cycle_potential(d: &DistanceOracle, cycle: &[usize], base: usize) -> u128 {
    let k = cycle.len();
    (0..k).map(|i| 5u128.pow((d.d(base, cycle[i]) + d.d(base, cycle[(i + 1) % k])) as u32)).sum()
}

/// Drops repeated vertices and backtracks `a b a` until none remain.
fn tidy(c: &mut Vec<usize>) {
    loop {
        let k = c.len();
        if k <= 1 {
            return;
        }
        if let Some(i) = (0..k).find(|&i| c[i] == c[(i + 1) % k]) {
            c.remove(i);
            continue;
        }
        if k == 2 {
            c.truncate(1);
            return;
        }
        if let Some(i) = (0..k).find(|&i| c[(i + k - 1) % k] == c[(i + 1) % k]) {
            // Remove u_i and u_{i+1}, keeping u_{i-1}.
            let j = (i + 1) % k;
            let (first, second) = if i < j { (j, i) } else { (i, j) };
            c.remove(first);
            c.remove(second);
            continue;
        }
        return;
    }
}

/// Pushes a closed walk toward `base` with the INC shortcut, triangle moves and
/// pentagon moves. `Stuck` does not prove the cycle is not null-homotopic.
pub fn contract_cycle(d: &DistanceOracle, cycle: &[usize], base: usize) -> Contraction {
    let g = d.graph();
    let mut c = cycle.to_vec();
    loop {
        tidy(&mut c);
        let k = c.len();
        if k <= 1 {
            return Contraction::Constant;
        }
        let before = cycle_potential(d, &c, base);
        let i = (0..k).max_by_key(|&i| (d.d(base, c[i]), std::cmp::Reverse(i))).unwrap();
        let r = d.d(base, c[i]);
        let (prev, next) = ((i + k - 1) % k, (i + 1) % k);
        let (dp, dn) = (d.d(base, c[prev]), d.d(base, c[next]));
        if dp + 1 == r && dn + 1 == r {
            if !g.has_edge(c[prev], c[next]) {
                return Contraction::Stuck(c);
            }
            c.remove(i);
        } else {
            // An edge inside the sphere of radius r, oriented so that `x` precedes `y`.
            let (pos, x, y) = if dn == r { (next, c[i], c[next]) } else { (i, c[prev], c[i]) };
            let tri = g
                .neighbors(x)
                .iter()
                .copied()
                .find(|&z| g.has_edge(z, y) && d.d(base, z) + 1 == r);
            let insert: Vec<usize> = match tri {
                Some(z) => vec![z],
                None => match pentagon_down(d, base, x, y) {
                    Some([w, z, w2]) => vec![w, z, w2],
                    None => return Contraction::Stuck(c),
                },
            };
            let pos = if pos == 0 { k } else { pos };
            c.splice(pos..pos, insert);
        }
        tidy(&mut c);
        debug_assert!(c.len() <= 1 || cycle_potential(d, &c, base) < before);
    }
}

/// `w ~ x`, `w' ~ y` one level down and `z` two levels down closing a pentagon.
fn pentagon_down(d: &DistanceOracle, base: usize, x: usize, y: usize) -> Option<[usize; 3]> {
    let g = d.graph();
    let r = d.d(base, x);
    for &w in g.neighbors(x).iter().filter(|&&w| d.d(base, w) + 1 == r) {
        for &w2 in g.neighbors(y).iter().filter(|&&w2| d.d(base, w2) + 1 == r) {
            for &z in g.neighbors(w).iter().filter(|&&z| d.d(base, z) + 2 == r) {
                if g.has_edge(z, w2) && is_pentagon(g, &[x, w, z, w2, y]) {
                    return Some([w, z, w2]);
                }
            }
        }
    }
    None
}

/// One closed walk `base → a → b → base` along BFS-tree paths for each non-tree
/// edge `ab`. These loops generate every closed walk at `base` up to homotopy, so
/// contracting all of them shows the complex is simply connected.
pub fn fundamental_loops(g: &Graph, base: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    parent[base] = base;
    let mut queue = std::collections::VecDeque::from([base]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let to_root = |mut v: usize| {
        let mut p = vec![v];
        while v != base {
            v = parent[v];
            p.push(v);
        }
        p
    };
    g.edges()
        .filter(|&(a, b)| parent[a] != b && parent[b] != a)
        .map(|(a, b)| {
            let mut walk: Vec<usize> = to_root(a).into_iter().rev().collect();
            walk.extend(to_root(b));
            walk.pop();
            walk
        })
        .collect()
}

/// `true` when every fundamental loop at `base` contracts.
pub fn loops_contract(d: &DistanceOracle, base: usize) -> bool {
    fundamental_loops(d.graph(), base).iter().all(|l| contract_cycle(d, l, base) == Contraction::Constant)
}

/// Simple cycles of length 3..=max_len, each listed once from its smallest vertex.
pub fn simple_cycles(g: &Graph, max_len: usize) -> Vec<Vec<usize>> {
    fn go(g: &Graph, max_len: usize, path: &mut Vec<usize>, on: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let s = path[0];
        let last = *path.last().unwrap();
        for &y in g.neighbors(last) {
            if y == s && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            }
            if y > s && !on[y] && path.len() < max_len {
                on[y] = true;
                path.push(y);
                go(g, max_len, path, on, out);
                path.pop();
                on[y] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; g.n()];
    for s in 0..g.n() {
        on[s] = true;
        go(g, max_len, &mut vec![s], &mut on, &mut out);
        on[s] = false;
    }
    out
}

/// A ball of radius `radius` around the base of the universal cover, with its
/// projection to `G`.
#[derive(Clone, Debug)]
pub struct CoverState {
    pub base_image: usize,
    pub radius: usize,
    pub image: Vec<usize>,
    pub height: Vec<usize>,
    pub adj: Vec<BTreeSet<usize>>,
    /// `layers[i]` lists the cover vertices at height `i`.
    pub layers: Vec<Vec<usize>>,
}

impl CoverState {
    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn graph(&self) -> Graph {
        let edges = self.adj.iter().enumerate().flat_map(|(a, s)| s.iter().filter(move |&&b| a < b).map(move |&b| (a, b)));
        Graph::from_edges(self.n(), edges).expect("cover adjacency is simple")
    }

    fn add_vertex(&mut self, image: usize, height: usize) -> usize {
        let id = self.image.len();
        self.image.push(image);
        self.height.push(height);
        self.adj.push(BTreeSet::new());
        if self.layers.len() <= height {
            self.layers.push(Vec::new());
        }
        self.layers[height].push(id);
        id
    }

    fn link(&mut self, a: usize, b: usize) {
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    fn common_lower_neighbor(&self, a: usize, b: usize, max_height: usize) -> bool {
        self.adj[a].iter().any(|&u| self.height[u] <= max_height && self.adj[b].contains(&u))
    }

    /// `cover-vertex image-vertex height` per line.
    pub fn sidecar(&self) -> String {
        (0..self.n()).map(|v| format!("{v} {} {}\n", self.image[v], self.height[v])).collect()
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Builds `B̃₀ ⊂ … ⊂ B̃_R`. With `validate`, radius-3 balls must be convex and
/// every `≡`-class must be pairwise related.
pub fn build_universal_cover(g: &Graph, base: usize, radius: usize, validate: bool) -> Result<CoverState, CoverError> {
    if base >= g.n() {
        return Err(CoverError::BadBase(base));
    }
    if validate {
        let d = all_pairs_distances(g).map_err(|e| CoverError::LocalConditionsFail(e.to_string()))?;
        if let Some(v) = balls_convex_up_to(&d, 3).violation {
            return Err(CoverError::LocalConditionsFail(violation_text(&v)));
        }
    }
    let mut st = CoverState {
        base_image: base,
        radius,
        image: Vec::new(),
        height: Vec::new(),
        adj: Vec::new(),
        layers: Vec::new(),
    };
    st.add_vertex(base, 0);
    for i in 0..radius {
        // Z: pairs (w̃, z) with z seen from w but with no preimage next to w̃.
        let mut z_pairs: Vec<(usize, usize)> = Vec::new();
        for &w in &st.layers[i] {
            let seen: BTreeSet<usize> =
                st.adj[w].iter().map(|&x| st.image[x]).chain([st.image[w]]).collect();
            for &z in g.neighbors(st.image[w]) {
                if !seen.contains(&z) {
                    z_pairs.push((w, z));
                }
            }
        }
        if z_pairs.is_empty() {
            break;
        }
        let related = |st: &CoverState, a: (usize, usize), b: (usize, usize)| {
            a.1 == b.1 && (a.0 == b.0 || (st.adj[a.0].contains(&b.0) && (i == 0 || st.common_lower_neighbor(a.0, b.0, i - 1))))
        };
        let mut parent: Vec<usize> = (0..z_pairs.len()).collect();
        for a in 0..z_pairs.len() {
            for b in a + 1..z_pairs.len() {
                if related(&st, z_pairs[a], z_pairs[b]) {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        let mut class_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        let mut class = vec![0; z_pairs.len()];
        for p in 0..z_pairs.len() {
            let r = find(&mut parent, p);
            let c = *class_of_root.entry(r).or_insert_with(|| {
                members.push(Vec::new());
                members.len() - 1
            });
            class[p] = c;
            members[c].push(p);
        }
        if validate {
            for m in &members {
                for (j, &a) in m.iter().enumerate() {
                    if let Some(&b) = m[j + 1..].iter().find(|&&b| !related(&st, z_pairs[a], z_pairs[b])) {
                        return Err(CoverError::LocalConditionsFail(format!(
                            "equivalence not transitive at layer {}: ({}, {}) and ({}, {})",
                            i + 1,
                            z_pairs[a].0,
                            z_pairs[a].1,
                            z_pairs[b].0,
                            z_pairs[b].1
                        )));
                    }
                }
            }
        }
        let ids: Vec<usize> = members.iter().map(|m| st.add_vertex(z_pairs[m[0]].1, i + 1)).collect();
        for (p, &(w, _)) in z_pairs.iter().enumerate() {
            st.link(w, ids[class[p]]);
        }
        for a in 0..members.len() {
            for b in a + 1..members.len() {
                let (za, zb) = (st.image[ids[a]], st.image[ids[b]]);
                if !g.has_edge(za, zb) {
                    continue;
                }
                let wa: Vec<usize> = members[a].iter().map(|&p| z_pairs[p].0).collect();
                let wb: Vec<usize> = members[b].iter().map(|&p| z_pairs[p].0).collect();
                let rule1 = wa.iter().any(|w| wb.contains(w));
                let rule2 = i >= 1
                    && wa.iter().any(|&x| wb.iter().any(|&y| st.common_lower_neighbor(x, y, i - 1)));
                if rule1 || rule2 {
                    st.link(ids[a], ids[b]);
                }
            }
        }
    }
    Ok(st)
}

fn violation_text(v: &ConvexityViolation) -> String {
    format!(
        "ball B_{}({}) not convex: {} on a geodesic from {} to {}",
        v.radius.unwrap_or(0),
        v.center.unwrap_or(0),
        v.z,
        v.x,
        v.y
    )
}

/// First failing layer (or vertex height) per property; `None` means it holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverReport {
    pub p: Option<usize>,
    pub q: Option<usize>,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub t: Option<usize>,
}

impl CoverReport {
    pub fn holds(&self) -> bool {
        [self.p, self.q, self.r, self.s, self.t].iter().all(Option::is_none)
    }
}

impl fmt::Display for CoverReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |o: Option<usize>| o.map_or("ok".to_string(), |l| format!("fails at layer {l}"));
        write!(
            f,
            "P {}, Q {}, R {}, S {}, T {}",
            show(self.p),
            show(self.q),
            show(self.r),
            show(self.s),
            show(self.t)
        )
    }
}

/// `f` restricted to `B₁(ũ)` is injective and preserves adjacency both ways.
/// With `onto`, its image must also be all of `B₁(u)`.
fn local_iso(st: &CoverState, g: &Graph, u: usize, onto: bool) -> bool {
    let ball: Vec<usize> = st.adj[u].iter().copied().chain([u]).collect();
    let imgs: BTreeSet<usize> = ball.iter().map(|&x| st.image[x]).collect();
    if imgs.len() != ball.len() {
        return false;
    }
    if onto && imgs.len() != g.degree(st.image[u]) + 1 {
        return false;
    }
    ball.iter().all(|&a| {
        ball.iter().all(|&b| a == b || st.adj[a].contains(&b) == g.has_edge(st.image[a], st.image[b]))
    })
}

/// Checks the inductive properties of the construction on the truncated ball.
pub fn verify_cover_invariants(st: &CoverState, g: &Graph) -> CoverReport {
    let n = st.n();
    let top = st.radius;
    let mut rep = CoverReport::default();
    let note = |slot: &mut Option<usize>, layer: usize| {
        *slot = Some(slot.map_or(layer, |l: usize| l.min(layer)));
    };

    // (P): heights are distances from the base.
    let cg = st.graph();
    let dist = cg.bfs_distances(0);
    for v in 0..n {
        if dist[v] as usize != st.height[v] || st.adj[v].iter().any(|&w| st.height[v].abs_diff(st.height[w]) > 1) {
            note(&mut rep.p, st.height[v]);
        }
    }

    // (Q): INC and TPC with respect to the base, for heights below the top.
    for v in 0..n {
        let h = st.height[v];
        if h == 0 || h >= top {
            continue;
        }
        let down: Vec<usize> = st.adj[v].iter().copied().filter(|&w| st.height[w] + 1 == h).collect();
        let clique = down.iter().enumerate().all(|(j, &a)| down[j + 1..].iter().all(|&b| st.adj[a].contains(&b)));
        if !clique {
            note(&mut rep.q, h);
        }
        for &w in st.adj[v].iter().filter(|&&w| w > v && st.height[w] == h) {
            let tri = st.adj[v].iter().any(|&z| st.height[z] + 1 == h && st.adj[w].contains(&z));
            let pent = h >= 2
                && st.adj[v].iter().filter(|&&a| st.height[a] + 1 == h).any(|&a| {
                    st.adj[w].iter().filter(|&&b| st.height[b] + 1 == h).any(|&b| {
                        !st.adj[a].contains(&b)
                            && st.adj[a].iter().any(|&z| st.height[z] + 2 == h && st.adj[b].contains(&z))
                    })
                });
            if !tri && !pent {
                note(&mut rep.q, h);
            }
        }
    }

    // (R) below the top layer, (T) on the top layer.
    for v in 0..n {
        let h = st.height[v];
        if h < top {
            if !local_iso(st, g, v, true) {
                note(&mut rep.r, h);
            }
        } else if !local_iso(st, g, v, false) {
            note(&mut rep.t, h);
        }
    }

    // (S): a path whose image is a 5-cycle closes in the cover.
    for u in 0..n {
        for &x in &st.adj[u] {
            for &w in st.adj[x].iter().filter(|&&w| w != u) {
                for &y in st.adj[w].iter().filter(|&&y| y != x && y != u) {
                    for &v in st.adj[y].iter().filter(|&&v| v > u && v != w && v != x) {
                        let im = [u, x, w, y, v].map(|a| st.image[a]);
                        let distinct = im.iter().collect::<BTreeSet<_>>().len() == 5;
                        if distinct && g.has_edge(im[0], im[4]) && !st.adj[u].contains(&v) {
                            note(&mut rep.s, [u, x, w, y, v].iter().map(|&a| st.height[a]).max().unwrap());
                        }
                    }
                }
            }
        }
    }
    rep
}

/// Balls of radius at most `r` centered in `B̃_{R−2r}` are convex in the truncated cover.
pub fn cover_is_cb_up_to(st: &CoverState, r: usize) -> Result<ConvexityWitness, CoverError> {
    if r + 3 > st.radius {
        return Err(CoverError::MarginTooSmall { r, radius: st.radius });
    }
    let d = all_pairs_distances(&st.graph()).expect("cover is connected");
    let reach = st.radius.saturating_sub(2 * r);
    for c in (0..st.n()).filter(|&c| st.height[c] <= reach) {
        for rad in 1..=r {
            let w = is_convex(&d, &d.ball(c, rad));
            if let Some(v) = w.violation {
                return Ok(ConvexityWitness::fail(ConvexityViolation { center: Some(c), radius: Some(rad), ..v }));
            }
        }
    }
    Ok(ConvexityWitness::pass())
}

/// The cover projects bijectively onto `B_R(base)` and induces an isomorphism.
pub fn reproduces(st: &CoverState, d: &DistanceOracle) -> bool {
    let ball = d.ball(st.base_image, st.radius);
    let imgs: BTreeSet<usize> = st.image.iter().copied().collect();
    imgs.len() == st.n()
        && VertexSet::from_vertices(d.n(), imgs.iter().copied()) == ball
        && (0..st.n()).all(|a| {
            (0..st.n()).all(|b| a == b || st.adj[a].contains(&b) == d.adjacent(st.image[a], st.image[b]))
        })
        && (0..st.n()).all(|a| st.height[a] == d.d(st.base_image, st.image[a]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path, petersen, pt};

    #[test]
    fn complexes_and_homology() {
        let c5 = build_complex(&cycle(5));
        assert_eq!((c5.triangles.len(), c5.pentagons.len()), (0, 1));
        assert_eq!(h1_rank_gf2(&c5), 0);
        let p = build_complex(&petersen());
        assert_eq!((p.triangles.len(), p.pentagons.len()), (0, 12));
        assert_eq!(h1_rank_gf2(&p), 0);
        let k4 = build_complex(&complete(4));
        assert_eq!((k4.triangles.len(), k4.pentagons.len()), (4, 0));
        assert_eq!(h1_rank_gf2(&build_complex(&path(6))), 0);
        assert_eq!(h1_rank_gf2(&build_complex(&cycle(13))), 1);
    }

    #[test]
    fn contraction() {
        let k3 = all_pairs_distances(&complete(3)).unwrap();
        assert_eq!(contract_cycle(&k3, &[0, 1, 2], 0), Contraction::Constant);
        let d = all_pairs_distances(&petersen()).unwrap();
        for base in 0..10 {
            for c in simple_cycles(d.graph(), 9) {
                assert_eq!(contract_cycle(&d, &c, base), Contraction::Constant, "{c:?} from {base}");
            }
        }
        let c13 = all_pairs_distances(&cycle(13)).unwrap();
        let full: Vec<usize> = (0..13).collect();
        assert!(matches!(contract_cycle(&c13, &full, 0), Contraction::Stuck(_)));
    }

    #[test]
    fn fundamental_loops_count_the_cycle_rank() {
        let g = petersen();
        assert_eq!(fundamental_loops(&g, 3).len(), 6);
        let d = all_pairs_distances(&g).unwrap();
        assert!(loops_contract(&d, 3));
        let c13 = all_pairs_distances(&cycle(13)).unwrap();
        assert!(!loops_contract(&c13, 0));
    }

    #[test]
    fn simple_cycle_counts() {
        assert_eq!(simple_cycles(&complete(4), 4).len(), 7);
        assert_eq!(simple_cycles(&petersen(), 5).len(), 12);
    }

    #[test]
    fn petersen_cover_is_itself() {
        let g = petersen();
        let d = all_pairs_distances(&g).unwrap();
        let st = build_universal_cover(&g, 0, 3, true).unwrap();
        assert_eq!(st.layers[0], vec![0]);
        assert_eq!(st.layers[1].len(), 3);
        assert!(reproduces(&st, &d));
        assert!(verify_cover_invariants(&st, &g).holds());
        let st5 = build_universal_cover(&g, 0, 5, true).unwrap();
        assert!(cover_is_cb_up_to(&st5, 2).unwrap().holds);
        assert!(matches!(cover_is_cb_up_to(&st, 2), Err(CoverError::MarginTooSmall { .. })));
    }

    #[test]
    fn thirteen_cycle_unrolls() {
        let g = cycle(13);
        let st = build_universal_cover(&g, 0, 6, true).unwrap();
        assert_eq!(st.n(), 13);
        let cg = st.graph();
        assert_eq!(cg.m(), 12);
        assert!(cg.is_connected());
        assert!((0..13).all(|v| cg.degree(v) <= 2));
        assert!(verify_cover_invariants(&st, &g).holds());
        assert!(cover_is_cb_up_to(&st, 3).unwrap().holds);
    }

    #[test]
    fn pt_negative_control() {
        let g = pt().graph;
        assert!(build_universal_cover(&g, 0, 3, true).is_err());
        let bad = (0..g.n()).any(|b| {
            let st = build_universal_cover(&g, b, 4, false).unwrap();
            let rep = verify_cover_invariants(&st, &g);
            rep.r.is_some() || rep.s.is_some()
        });
        assert!(bad);
    }
}
