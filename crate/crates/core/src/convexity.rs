//! Convexity and k-convexity of vertex sets and of all balls.

use crate::metric::DistanceOracle;
use crate::set::VertexSet;

/// A geodesic leaving a set: `x, y` inside, `z` outside on a shortest `(x, y)`-path.
/// For ball checks `center` and `radius` identify the ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConvexityViolation {
    pub center: Option<usize>,
    pub radius: Option<usize>,
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityWitness {
    pub holds: bool,
    pub violation: Option<ConvexityViolation>,
}

impl ConvexityWitness {
    pub fn pass() -> Self {
        Self {
            holds: true,
            violation: None,
        }
    }

    pub fn fail(v: ConvexityViolation) -> Self {
        Self {
            holds: false,
            violation: Some(v),
        }
    }

    fn from_option(v: Option<ConvexityViolation>) -> Self {
        v.map_or_else(Self::pass, Self::fail)
    }
}

fn first_set_violation(d: &DistanceOracle, s: &VertexSet, k: Option<usize>) -> Option<ConvexityViolation> {
    let members: Vec<usize> = s.iter().collect();
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            let dxy = d.d(x, y);
            if dxy < 2 || k.is_some_and(|k| dxy > k) {
                continue;
            }
            if let Some(z) = (0..d.n()).find(|&z| !s.contains(z) && d.in_interval(x, z, y)) {
                return Some(ConvexityViolation {
                    center: None,
                    radius: None,
                    x,
                    y,
                    z,
                });
            }
        }
    }
    None
}

/// `I(x, y) ⊆ S` for all `x, y ∈ S`; the witness is the lexicographically least `(x, y, z)`.
pub fn is_convex(d: &DistanceOracle, s: &VertexSet) -> ConvexityWitness {
    ConvexityWitness::from_option(first_set_violation(d, s, None))
}

/// Convexity restricted to pairs at distance at most `k`.
pub fn is_k_convex(d: &DistanceOracle, s: &VertexSet, k: usize) -> ConvexityWitness {
    ConvexityWitness::from_option(first_set_violation(d, s, Some(k)))
}

/// Pairs `x < y` (optionally with `d(x, y) <= k`) with the inner vertices of their interval.
fn interval_table(d: &DistanceOracle, k: Option<usize>) -> Vec<(usize, usize, Vec<usize>)> {
    let n = d.n();
    let mut table = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let dxy = d.d(x, y);
            if dxy < 2 || k.is_some_and(|k| dxy > k) {
                continue;
            }
            let inner: Vec<usize> = (0..n)
                .filter(|&z| z != x && z != y && d.in_interval(x, z, y))
                .collect();
            table.push((x, y, inner));
        }
    }
    table
}

/// First ball `B_r(v)` with `1 <= r <= max_radius` that fails `k`-convexity.
///
/// For a fixed center, a triple `(x, y, z)` with `z ∈ I(x, y)` breaks exactly the
/// balls of radius `max(d(v,x), d(v,y)) <= r < d(v, z)`, so one pass over
/// intervals serves every radius. Scan order: `v` ascending, then least `(r, x, y, z)`.
fn first_ball_violation(
    d: &DistanceOracle,
    k: Option<usize>,
    max_radius: usize,
) -> Option<ConvexityViolation> {
    let table = interval_table(d, k);
    for v in 0..d.n() {
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (x, y, inner) in &table {
            let r = d.d(v, *x).max(d.d(v, *y));
            if r == 0 || r > max_radius {
                continue;
            }
            if let Some(&z) = inner.iter().find(|&&z| d.d(v, z) > r) {
                let cand = (r, *x, *y, z);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
        if let Some((r, x, y, z)) = best {
            return Some(ConvexityViolation {
                center: Some(v),
                radius: Some(r),
                x,
                y,
                z,
            });
        }
    }
    None
}

/// Every ball is `k`-convex. `k = 2` and `k = 3` are the cases of interest; larger
/// `k` only adds pairs.
pub fn has_k_convex_balls(d: &DistanceOracle, k: usize) -> ConvexityWitness {
    ConvexityWitness::from_option(first_ball_violation(d, Some(k), d.diameter()))
}

/// CB recognition. Uses the 3-convexity criterion, which is equivalent.
pub fn has_convex_balls(d: &DistanceOracle) -> ConvexityWitness {
    has_k_convex_balls(d, 3)
}

/// CB recognition straight from the definition: every pair in every ball.
pub fn has_convex_balls_exhaustive(d: &DistanceOracle) -> ConvexityWitness {
    ConvexityWitness::from_option(first_ball_violation(d, None, d.diameter()))
}

/// All balls of radius at most `max_radius` are convex.
pub fn balls_convex_up_to(d: &DistanceOracle, max_radius: usize) -> ConvexityWitness {
    ConvexityWitness::from_option(first_ball_violation(d, None, max_radius))
}

/// Outcome of [`hull_preserves_diameter`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullDiameterReport {
    pub preserved: bool,
    pub sets_checked: usize,
    /// `(S, diam(S), diam(conv(S)))` for the first offending set.
    pub witness: Option<(VertexSet, usize, usize)>,
}

/// Checks `diam(conv(S)) = diam(S)` over every `S` with `1 <= |S| <= max_set_size`,
/// enumerated in lexicographic order.
pub fn hull_preserves_diameter(d: &DistanceOracle, max_set_size: usize) -> HullDiameterReport {
    let n = d.n();
    let mut checked = 0;
    let mut stack: Vec<usize> = Vec::new();
    // Iterative lexicographic enumeration of combinations.
    fn next(stack: &mut Vec<usize>, n: usize, cap: usize) -> bool {
        if stack.len() < cap {
            let start = stack.last().map_or(0, |&l| l + 1);
            if start < n {
                stack.push(start);
                return true;
            }
        }
        while let Some(top) = stack.pop() {
            if top + 1 < n {
                stack.push(top + 1);
                return true;
            }
        }
        false
    }
    while next(&mut stack, n, max_set_size) {
        let s = VertexSet::from_vertices(n, stack.iter().copied());
        checked += 1;
        let before = d.set_diameter(&s);
        let after = d.set_diameter(&d.convex_hull(&s));
        if before != after {
            return HullDiameterReport {
                preserved: false,
                sets_checked: checked,
                witness: Some((s, before, after)),
            };
        }
    }
    HullDiameterReport {
        preserved: true,
        sets_checked: checked,
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::metric::all_pairs_distances;

    fn cycle(n: usize) -> DistanceOracle {
        all_pairs_distances(&Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()).unwrap()
    }

    #[test]
    fn c4_antipodes_not_convex() {
        let d = cycle(4);
        let w = is_convex(&d, &VertexSet::from_vertices(4, [0, 2]));
        assert!(!w.holds);
        let v = w.violation.unwrap();
        assert_eq!((v.x, v.y, v.z), (0, 2, 1));
    }

    #[test]
    fn c6_balls_and_2_convexity() {
        let d = cycle(6);
        // B_1 of a hexagon vertex is convex; B_2 misses the antipode between its ends.
        assert!(is_k_convex(&d, &d.ball(0, 1), 2).holds);
        let w = is_k_convex(&d, &d.ball(0, 2), 2);
        assert_eq!(w.violation.map(|v| (v.x, v.y, v.z)), Some((2, 4, 3)));
    }

    #[test]
    fn ball_witness_is_lexicographically_least() {
        let d = cycle(6);
        let v = has_convex_balls(&d).violation.unwrap();
        assert_eq!(v.center, Some(0));
        assert_eq!(v.radius, Some(2));
        assert_eq!((v.x, v.y, v.z), (1, 4, 3));
        assert!(d.in_interval(v.x, v.z, v.y));
    }

    #[test]
    fn c5_balls_are_convex() {
        let d = cycle(5);
        assert!(has_convex_balls(&d).holds);
        assert!(has_k_convex_balls(&d, 2).holds);
        assert!(has_convex_balls_exhaustive(&d).holds);
    }

    #[test]
    fn c6_triple_inflates_diameter() {
        let d = cycle(6);
        let s = VertexSet::from_vertices(6, [0, 2, 4]);
        assert_eq!(d.set_diameter(&s), 2);
        assert_eq!(d.set_diameter(&d.convex_hull(&s)), 3);
        let r = hull_preserves_diameter(&d, 3);
        assert!(!r.preserved);
    }
}
