//! Helly independence, Helly numbers and the reduction of h-independent sets
//! to sets of diameter at most 2.

use rayon::prelude::*;
use thiserror::Error;

use crate::metric::DistanceOracle;
use crate::set::VertexSet;

pub const DEFAULT_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HellyError {
    #[error("set {0:?} is not h-independent")]
    NotHIndependent(Vec<usize>),
    /// No pull-in step applies, the diameter is still at least 3, and the
    /// clique extraction did not produce a clique of the right size.
    #[error("reduction stuck at {0:?}")]
    ReductionStuck(Vec<usize>),
}

/// `⋂_{a∈A} hull(A∖{a}) = ∅`, with `hull(∅) = ∅`.
pub fn is_h_independent(d: &DistanceOracle, a: &VertexSet) -> bool {
    if a.is_empty() {
        return false;
    }
    let mut inter = VertexSet::full(d.n());
    for x in a.iter() {
        let mut rest = a.clone();
        rest.remove(x);
        inter.intersect_with(&d.convex_hull(&rest));
        if inter.is_empty() {
            return true;
        }
    }
    inter.is_empty()
}

/// Every triple is an equilateral metric triangle and `I(u,w) ∩ I(v,x) = ∅`
/// for any four distinct members.
pub fn is_simplex(d: &DistanceOracle, s: &VertexSet) -> bool {
    let v = s.to_vec();
    let k = v.len();
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                let (a, b, c) = (v[i], v[j], v[l]);
                let side = d.d(a, b);
                if d.d(b, c) != side || d.d(a, c) != side || !crate::triangles::is_metric_triangle(d, a, b, c) {
                    return false;
                }
            }
        }
    }
    for (i, &u) in v.iter().enumerate() {
        for &w in &v[i + 1..] {
            let iuw = d.interval(u, w);
            for (j, &x) in v.iter().enumerate() {
                if x == u || x == w {
                    continue;
                }
                for &y in &v[j + 1..] {
                    if y != u && y != w && !iuw.is_disjoint(&d.interval(x, y)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HellyCertificate {
    pub h: usize,
    /// The search found an h-independent set of size `cap`; `h` is only a lower bound.
    pub capped: bool,
    pub witness: VertexSet,
    pub h2: usize,
    pub h2_capped: bool,
    pub witness2: VertexSet,
}

/// Depth-first growth of sets closed under taking subsets (`accept` must be
/// hereditary). Returns the largest accepted set found, stopping at `cap`.
fn largest_hereditary(
    d: &DistanceOracle,
    cap: usize,
    compatible: &(dyn Fn(usize, usize) -> bool + Sync),
    accept: &(dyn Fn(&VertexSet) -> bool + Sync),
) -> VertexSet {
    fn grow(
        d: &DistanceOracle,
        cap: usize,
        compatible: &(dyn Fn(usize, usize) -> bool + Sync),
        accept: &(dyn Fn(&VertexSet) -> bool + Sync),
        cur: &mut VertexSet,
        best: &mut VertexSet,
    ) {
        if cur.len() > best.len() {
            *best = cur.clone();
        }
        if best.len() >= cap {
            return;
        }
        let start = cur.iter().last().map_or(0, |m| m + 1);
        for x in start..d.n() {
            if !cur.iter().all(|y| compatible(x, y)) {
                continue;
            }
            cur.insert(x);
            if accept(cur) {
                grow(d, cap, compatible, accept, cur, best);
            }
            cur.remove(x);
            if best.len() >= cap {
                return;
            }
        }
    }
    let n = d.n();
    let per_lead: Vec<VertexSet> = (0..n)
        .into_par_iter()
        .map(|lead| {
            let mut cur = VertexSet::singleton(n, lead);
            let mut best = VertexSet::new(n);
            if accept(&cur) {
                grow(d, cap, compatible, accept, &mut cur, &mut best);
            }
            best
        })
        .collect();
    // Deterministic choice: largest, then least.
    per_lead
        .into_iter()
        .fold(VertexSet::new(n), |acc, s| if s.len() > acc.len() || (s.len() == acc.len() && s < acc) { s } else { acc })
}

/// Exact `h(G)` and `h₂(G)` when the search closes below `cap`.
pub fn helly_number(d: &DistanceOracle, cap: usize) -> HellyCertificate {
    let cap = cap.max(2);
    let accept = |s: &VertexSet| is_h_independent(d, s);
    let witness = largest_hereditary(d, cap, &|_, _| true, &accept);
    let witness2 = largest_hereditary(d, cap, &|x, y| d.d(x, y) <= 2, &accept);
    HellyCertificate {
        h: witness.len(),
        capped: witness.len() >= cap,
        witness,
        h2: witness2.len(),
        h2_capped: witness2.len() >= cap,
        witness2,
    }
}

/// Largest simplex of diameter at most 2, capped like [`helly_number`].
pub fn sigma2(d: &DistanceOracle, cap: usize) -> VertexSet {
    largest_hereditary(d, cap.max(2), &|x, y| d.d(x, y) <= 2, &|s| is_simplex(d, s))
}

/// All inclusion-maximal h-independent sets.
pub fn maximal_h_independent_sets(d: &DistanceOracle) -> Vec<VertexSet> {
    fn grow(d: &DistanceOracle, cur: &mut VertexSet, out: &mut Vec<VertexSet>) {
        let start = cur.iter().last().map_or(0, |m| m + 1);
        for x in start..d.n() {
            cur.insert(x);
            if is_h_independent(d, cur) {
                grow(d, cur, out);
            }
            cur.remove(x);
        }
        let maximal = (0..d.n()).all(|x| {
            cur.contains(x) || {
                let mut t = cur.clone();
                t.insert(x);
                !is_h_independent(d, &t)
            }
        });
        if maximal {
            out.push(cur.clone());
        }
    }
    let n = d.n();
    let mut out = Vec::new();
    for lead in 0..n {
        grow(d, &mut VertexSet::singleton(n, lead), &mut out);
    }
    out
}

/// The exchange `B = (A∖{v}) ∪ {x}`, valid when `x ∈ I(u,v) ∩ hull(A∖{u})`.
pub fn exchange(d: &DistanceOracle, a: &VertexSet, u: usize, v: usize, x: usize) -> Option<VertexSet> {
    if u == v || !a.contains(u) || !a.contains(v) || !d.in_interval(u, x, v) {
        return None;
    }
    let mut rest = a.clone();
    rest.remove(u);
    if !d.convex_hull(&rest).contains(x) {
        return None;
    }
    let mut b = a.clone();
    b.remove(v);
    b.insert(x);
    Some(b)
}

/// `Δ(z, A) = Σ_{v∈A} d(z, v)`.
pub fn delta(d: &DistanceOracle, z: usize, a: &VertexSet) -> usize {
    a.iter().map(|v| d.d(z, v)).sum()
}

/// `min_z Δ(z, A)` over members.
pub fn potential(d: &DistanceOracle, a: &VertexSet) -> usize {
    a.iter().map(|z| delta(d, z, a)).min().unwrap_or(0)
}

/// One pull-in step toward a minimal vertex: some `u` is replaced by the vertex
/// of `I(u,z) ∩ hull(A∖{z})` closest to `z`.
fn pull_in(d: &DistanceOracle, a: &VertexSet) -> Option<VertexSet> {
    let pot = potential(d, a);
    for z in a.iter().filter(|&z| delta(d, z, a) == pot) {
        let mut rest = a.clone();
        rest.remove(z);
        let hull = d.convex_hull(&rest);
        for u in a.iter().filter(|&u| u != z) {
            let cand = d
                .interval(u, z)
                .intersection(&hull)
                .iter()
                .filter(|&x| x != u)
                .min_by_key(|&x| (d.d(x, z), x));
            if let Some(x) = cand {
                return exchange(d, a, z, u, x);
            }
        }
    }
    None
}

/// Clique of size `|S|` inside `hull(S)` for a distance-minimal simplex `S`:
/// an edge `vx` toward `u` plus the imprints on it.
fn simplex_to_clique(d: &DistanceOracle, s: &VertexSet) -> Option<VertexSet> {
    let m = s.to_vec();
    let (u, v) = (m[0], m[1]);
    let x = d.toward(v, u).into_iter().min()?;
    let g = d.graph();
    let mut c = VertexSet::from_vertices(d.n(), [v, x]);
    for &z in g.neighbors(v) {
        if c.len() == m.len() {
            break;
        }
        if z != x && g.has_edge(z, x) && m[2..].iter().any(|&w| d.in_interval(v, z, w) && d.in_interval(x, z, w)) {
            c.insert(z);
        }
    }
    (c.len() == m.len() && g.is_clique(&c)).then_some(c)
}

/// Trace of a reduction: every intermediate set and its potential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub steps: Vec<(VertexSet, usize)>,
    pub via_clique: bool,
    pub result: VertexSet,
}

/// Transforms an h-independent set into an h-independent set of the same size
/// and diameter at most 2.
pub fn reduce_h_independent(d: &DistanceOracle, a: &VertexSet) -> Result<Reduction, HellyError> {
    if !is_h_independent(d, a) {
        return Err(HellyError::NotHIndependent(a.to_vec()));
    }
    let mut cur = a.clone();
    let mut steps = vec![(cur.clone(), potential(d, &cur))];
    loop {
        if d.set_diameter(&cur) <= 2 {
            return Ok(Reduction { steps, via_clique: false, result: cur });
        }
        match pull_in(d, &cur) {
            Some(next) => {
                let pot = potential(d, &next);
                assert!(pot < steps.last().unwrap().1, "potential must decrease");
                cur = next;
                steps.push((cur.clone(), pot));
            }
            None => {
                return match is_simplex(d, &cur).then(|| simplex_to_clique(d, &cur)).flatten() {
                    Some(c) if is_h_independent(d, &c) => {
                        Ok(Reduction { steps, via_clique: true, result: c })
                    }
                    _ => Err(HellyError::ReductionStuck(cur.to_vec())),
                };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::is_cb;
    use crate::generators::{complete, cycle, make, petersen, Family};
    use crate::metric::all_pairs_distances;

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, v.iter().copied())
    }

    #[test]
    fn independence_basics() {
        let k4 = all_pairs_distances(&complete(4)).unwrap();
        assert!(is_h_independent(&k4, &set(4, &[2])));
        assert!(is_h_independent(&k4, &set(4, &[0, 1, 2, 3])));
        let c = helly_number(&k4, DEFAULT_CAP);
        assert_eq!((c.h, c.h2, c.capped), (4, 4, false));
        let c4 = all_pairs_distances(&cycle(4)).unwrap();
        assert!(!is_simplex(&c4, &set(4, &[0, 1, 2, 3])));
        assert!(is_simplex(&k4, &set(4, &[0, 1, 2, 3])));
        assert!(is_simplex(&c4, &set(4, &[0, 2])));
    }

    #[test]
    fn petersen_values() {
        let d = all_pairs_distances(&petersen()).unwrap();
        assert!(is_h_independent(&d, &set(10, &[0, 1, 7, 9])));
        let c = helly_number(&d, DEFAULT_CAP);
        assert_eq!((c.h, c.h2, c.capped), (4, 4, false));
        assert!(is_h_independent(&d, &c.witness));
        // Brute-force counts: 15 h-independent 4-sets, and each of the 5
        // independent 4-sets is a simplex.
        let mut hind = 0;
        let mut simplices = 0;
        for mask in 0u32..1 << 10 {
            if mask.count_ones() != 4 {
                continue;
            }
            let s = VertexSet::from_vertices(10, (0..10).filter(|&i| mask >> i & 1 == 1));
            hind += usize::from(is_h_independent(&d, &s));
            simplices += usize::from(is_simplex(&d, &s));
        }
        assert_eq!((hind, simplices), (15, 5));
        let r = reduce_h_independent(&d, &set(10, &[0, 1, 7, 9])).unwrap();
        assert_eq!(r.result, set(10, &[0, 1, 7, 9]));
        assert!(reduce_h_independent(&d, &set(10, &[0, 1, 2])).is_err());
    }

    #[test]
    fn c5_value() {
        let d = all_pairs_distances(&cycle(5)).unwrap();
        let c = helly_number(&d, DEFAULT_CAP);
        assert_eq!((c.h, c.h2), (3, 3));
    }

    #[test]
    fn cb_families_reduce() {
        for fam in Family::named() {
            let g = make(&fam).unwrap().graph;
            let d = all_pairs_distances(&g).unwrap();
            if g.n() > 12 || !is_cb(&d) {
                continue;
            }
            let c = helly_number(&d, DEFAULT_CAP);
            assert_eq!(c.h, c.h2, "{fam}");
            for a in maximal_h_independent_sets(&d) {
                let r = reduce_h_independent(&d, &a).unwrap();
                assert_eq!(r.result.len(), a.len());
                assert!(d.set_diameter(&r.result) <= 2);
                assert!(is_h_independent(&d, &r.result));
                assert!(r.steps.windows(2).all(|w| w[1].1 < w[0].1));
            }
        }
    }
}
