//! Metric triangles, quasi-medians and their classification.

use std::fmt;

use rayon::prelude::*;

use crate::metric::DistanceOracle;
use crate::substructures::{is_pentagon, Pentagon};

/// Three vertices whose pairwise intervals meet only at the shared endpoint.
/// Vertex order is meaningful for quasi-medians (`u` near `x`, `v` near `y`, `w` near `z`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MetricTriangle {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    /// Side lengths in non-increasing order.
    pub sides: [usize; 3],
}

impl MetricTriangle {
    pub fn new(d: &DistanceOracle, u: usize, v: usize, w: usize) -> Self {
        let mut sides = [d.d(u, v), d.d(v, w), d.d(u, w)];
        sides.sort_unstable_by(|a, b| b.cmp(a));
        Self { u, v, w, sides }
    }

    pub fn vertices(&self) -> [usize; 3] {
        [self.u, self.v, self.w]
    }
}

impl fmt::Display for MetricTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.sides;
        write!(f, "({},{},{}) type ({a},{b},{c})", self.u, self.v, self.w)
    }
}

/// `I(a, b) ∩ I(a, c) = {a}`.
fn corner_is_tight(d: &DistanceOracle, a: usize, b: usize, c: usize) -> bool {
    (0..d.n()).all(|x| x == a || !(d.in_interval(a, x, b) && d.in_interval(a, x, c)))
}

pub fn is_metric_triangle(d: &DistanceOracle, u: usize, v: usize, w: usize) -> bool {
    corner_is_tight(d, u, v, w) && corner_is_tight(d, v, u, w) && corner_is_tight(d, w, u, v)
}

/// Farthest vertex from `from` in `I(from, a) ∩ I(from, b)`, smallest id on ties.
fn farthest_common(d: &DistanceOracle, from: usize, a: usize, b: usize) -> usize {
    let mut best = from;
    for x in 0..d.n() {
        if d.in_interval(from, x, a) && d.in_interval(from, x, b) && d.d(from, x) > d.d(from, best) {
            best = x;
        }
    }
    best
}

/// Greedy quasi-median of `x, y, z`: `u` as far from `x` as possible in
/// `I(x,y) ∩ I(x,z)`, then `v` in `I(y,u) ∩ I(y,z)`, then `w` in `I(z,u) ∩ I(z,v)`.
pub fn quasi_median(d: &DistanceOracle, x: usize, y: usize, z: usize) -> MetricTriangle {
    let u = farthest_common(d, x, y, z);
    let v = farthest_common(d, y, u, z);
    let w = farthest_common(d, z, u, v);
    MetricTriangle::new(d, u, v, w)
}

/// The three concatenation equalities tying `t` to `x, y, z`, plus the triangle property.
pub fn is_quasi_median_of(d: &DistanceOracle, t: &MetricTriangle, x: usize, y: usize, z: usize) -> bool {
    let (u, v, w) = (t.u, t.v, t.w);
    d.d(x, y) == d.d(x, u) + d.d(u, v) + d.d(v, y)
        && d.d(x, z) == d.d(x, u) + d.d(u, w) + d.d(w, z)
        && d.d(y, z) == d.d(y, v) + d.d(v, w) + d.d(w, z)
        && is_metric_triangle(d, u, v, w)
}

/// All metric triangles on three distinct vertices `u < v < w`.
pub fn enumerate_metric_triangles(d: &DistanceOracle) -> Vec<MetricTriangle> {
    let n = d.n();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|u| {
            (u + 1..n).flat_map(move |v| {
                (v + 1..n)
                    .filter(move |&w| is_metric_triangle(d, u, v, w))
                    .map(move |w| MetricTriangle::new(d, u, v, w))
            })
        })
        .collect()
}

/// Why a metric triangle is neither strongly equilateral nor pentagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangleDefect {
    /// Side lengths differ and the shape is not `(2,2,1)`.
    Unequal { sides: [usize; 3] },
    /// `x ∈ I(a, b)` sits at distance `dist != k` from the opposite corner `opposite`.
    NotStrong { opposite: usize, a: usize, b: usize, x: usize, dist: usize },
    /// Type `(2,2,1)` but no pentagon passes through the three corners.
    NoPentagon,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangleClass {
    StronglyEquilateral(usize),
    /// Pentagon `u v x w y` where `uv` is the short side and `w` the far corner.
    Pentagon221(Pentagon),
    Other(TriangleDefect),
}

impl TriangleClass {
    pub fn name(&self) -> &'static str {
        match self {
            TriangleClass::StronglyEquilateral(_) => "STRONGLY_EQUILATERAL",
            TriangleClass::Pentagon221(_) => "PENTAGON_221",
            TriangleClass::Other(_) => "OTHER",
        }
    }
}

fn pentagon_through(d: &DistanceOracle, u: usize, v: usize, w: usize) -> Option<Pentagon> {
    let g = d.graph();
    for &x in g.neighbors(v) {
        if !g.has_edge(x, w) {
            continue;
        }
        for &y in g.neighbors(u) {
            let p = [u, v, x, w, y];
            if g.has_edge(y, w) && is_pentagon(g, &p) {
                return Some(p);
            }
        }
    }
    None
}

pub fn classify(d: &DistanceOracle, t: &MetricTriangle) -> TriangleClass {
    let [a, b, c] = t.vertices();
    let (k1, k2, k3) = (d.d(a, b), d.d(b, c), d.d(a, c));
    if k1 == k2 && k2 == k3 {
        for (opposite, x0, y0) in [(c, a, b), (a, b, c), (b, a, c)] {
            for x in 0..d.n() {
                if d.in_interval(x0, x, y0) && d.d(opposite, x) != k1 {
                    return TriangleClass::Other(TriangleDefect::NotStrong {
                        opposite,
                        a: x0,
                        b: y0,
                        x,
                        dist: d.d(opposite, x),
                    });
                }
            }
        }
        return TriangleClass::StronglyEquilateral(k1);
    }
    if t.sides == [2, 2, 1] {
        // Orient so that `u v` is the unit side.
        let (u, v, w) = if k1 == 1 {
            (a, b, c)
        } else if k2 == 1 {
            (b, c, a)
        } else {
            (a, c, b)
        };
        return match pentagon_through(d, u, v, w) {
            Some(p) => TriangleClass::Pentagon221(p),
            None => TriangleClass::Other(TriangleDefect::NoPentagon),
        };
    }
    TriangleClass::Other(TriangleDefect::Unequal { sides: t.sides })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path, petersen};
    use crate::metric::all_pairs_distances;

    #[test]
    fn small_cases() {
        let k3 = all_pairs_distances(&complete(3)).unwrap();
        let ts = enumerate_metric_triangles(&k3);
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].sides, [1, 1, 1]);
        assert_eq!(classify(&k3, &ts[0]), TriangleClass::StronglyEquilateral(1));
        assert_eq!(quasi_median(&k3, 0, 1, 2).vertices(), [0, 1, 2]);

        let c5 = all_pairs_distances(&cycle(5)).unwrap();
        let ts = enumerate_metric_triangles(&c5);
        assert_eq!(ts.len(), 5);
        for t in &ts {
            assert_eq!(t.sides, [2, 2, 1]);
            let TriangleClass::Pentagon221(p) = classify(&c5, t) else {
                panic!("{t}")
            };
            assert!(is_pentagon(c5.graph(), &p));
        }

        let c4 = all_pairs_distances(&cycle(4)).unwrap();
        assert!(!is_metric_triangle(&c4, 0, 1, 2));
        let c6 = all_pairs_distances(&cycle(6)).unwrap();
        assert!(is_metric_triangle(&c6, 0, 2, 4));
    }

    #[test]
    fn median_of_a_path_is_the_middle_vertex() {
        let d = all_pairs_distances(&path(5)).unwrap();
        let t = quasi_median(&d, 0, 4, 2);
        assert_eq!(t.vertices(), [2, 2, 2]);
        assert_eq!(t.sides, [0, 0, 0]);
        assert!(is_quasi_median_of(&d, &t, 0, 4, 2));
    }

    #[test]
    fn petersen_triangles() {
        let d = all_pairs_distances(&petersen()).unwrap();
        let ts = enumerate_metric_triangles(&d);
        // Frozen from an independent brute-force count.
        assert_eq!(ts.iter().filter(|t| t.sides == [2, 2, 1]).count(), 60);
        assert_eq!(ts.iter().filter(|t| t.sides == [2, 2, 2]).count(), 20);
        assert_eq!(ts.len(), 80);
        assert!(ts.iter().all(|t| classify(&d, t).name() != "OTHER"));
        for x in 0..10 {
            for y in 0..10 {
                for z in 0..10 {
                    assert!(is_quasi_median_of(&d, &quasi_median(&d, x, y, z), x, y, z));
                }
            }
        }
    }
}
