//! Named graphs, parameterized families and random or exhaustive corpora.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::conditions::check_tc;
use crate::graph::Graph;
use crate::metric::all_pairs_distances;
use crate::substructures::{moore_degree, universal_vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("bad parameters for `{family}`: {msg}")]
    BadParameters { family: String, msg: String },
    #[error("construction of `{family}` failed its self-test: {msg}")]
    SelfTest { family: String, msg: String },
}

/// A graph together with the names of its distinguished vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
    pub labels: BTreeMap<String, usize>,
}

impl NamedGraph {
    fn unlabeled(name: impl Into<String>, graph: Graph) -> Self {
        Self {
            name: name.into(),
            graph,
            labels: BTreeMap::new(),
        }
    }

    /// Panics if the label is missing; labels are fixed by the constructors.
    pub fn label(&self, name: &str) -> usize {
        self.labels[name]
    }

    /// One `name id` line per label.
    pub fn label_sidecar(&self) -> String {
        self.labels.iter().map(|(k, v)| format!("{k} {v}\n")).collect()
    }
}

/// Builds a graph whose vertices are named by strings, in order of first use.
struct Builder {
    names: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn new() -> Self {
        Self {
            names: Vec::new(),
            edges: Vec::new(),
        }
    }

    fn id(&mut self, name: &str) -> usize {
        match self.names.iter().position(|n| n == name) {
            Some(i) => i,
            None => {
                self.names.push(name.to_string());
                self.names.len() - 1
            }
        }
    }

    fn path(&mut self, names: &[&str]) {
        for w in names.windows(2) {
            let (a, b) = (self.id(w[0]), self.id(w[1]));
            self.edges.push((a, b));
        }
    }

    fn cycle(&mut self, names: &[&str]) {
        self.path(names);
        self.path(&[names[names.len() - 1], names[0]]);
    }

    fn finish(self, name: &str, keep: &[&str]) -> NamedGraph {
        let graph = Graph::from_edges(self.names.len(), self.edges).expect("hand-built graphs are simple");
        let labels = keep
            .iter()
            .map(|k| {
                let id = self.names.iter().position(|n| n == k).expect("label exists");
                (k.to_string(), id)
            })
            .collect();
        NamedGraph {
            name: name.to_string(),
            graph,
            labels,
        }
    }
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).unwrap()
}

/// `C_n` plus a hub (vertex `n`) adjacent to every cycle vertex.
pub fn wheel(n: usize) -> Graph {
    let edges = (0..n).map(|i| (i, (i + 1) % n)).chain((0..n).map(|i| (i, n)));
    Graph::from_edges(n + 1, edges).unwrap()
}

pub fn hypercube(dim: usize) -> Graph {
    let n = 1usize << dim;
    let edges = (0..n).flat_map(|v| (0..dim).map(move |b| (v, v ^ (1 << b))).filter(|&(a, b)| a < b));
    Graph::from_edges(n, edges).unwrap()
}

/// `Cay(Z_n, ±S)`.
pub fn circulant(n: usize, connections: &[usize]) -> Graph {
    let edges = (0..n).flat_map(|v| connections.iter().map(move |&s| (v, (v + s) % n)));
    Graph::from_edges(n, edges.filter(|&(a, b)| a != b)).unwrap()
}

/// Union of `a` and `b` with vertex 0 of `b` identified with vertex 0 of `a`.
pub fn wedge(a: &Graph, b: &Graph) -> Graph {
    let shift = a.n() - 1;
    let map = |v: usize| if v == 0 { 0 } else { v + shift };
    let edges = a.edges().chain(b.edges().map(|(x, y)| (map(x), map(y))));
    Graph::from_edges(a.n() + b.n() - 1, edges.collect::<Vec<_>>()).unwrap()
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
}

/// Five pentagons `P_h`, five pentagrams `Q_i`; vertex `j` of `P_h` is joined to
/// vertex `h*i + j (mod 5)` of `Q_i`.
pub fn hoffman_singleton() -> Graph {
    let p = |h: usize, j: usize| 5 * h + j;
    let q = |i: usize, j: usize| 25 + 5 * i + j;
    let mut edges = Vec::new();
    for h in 0..5 {
        for j in 0..5 {
            edges.push((p(h, j), p(h, (j + 1) % 5)));
            edges.push((q(h, j), q(h, (j + 2) % 5)));
            for i in 0..5 {
                edges.push((p(h, j), q(i, (h * i + j) % 5)));
            }
        }
    }
    Graph::from_edges(50, edges).unwrap()
}

/// Pentagon and triangle sharing an edge: 6-cycle `1..6` with chord `3-5`.
pub fn pt() -> NamedGraph {
    let mut b = Builder::new();
    b.cycle(&["1", "2", "3", "4", "5", "6"]);
    b.path(&["3", "5"]);
    b.finish("pt", &["1", "2", "3", "4", "5", "6"])
}

/// Two pentagons sharing the edge `d-e`.
pub fn pp1() -> NamedGraph {
    let mut b = Builder::new();
    b.cycle(&["a", "b", "c", "d", "e"]);
    b.path(&["e", "f", "g", "h", "d"]);
    b.finish("pp1", &["a", "b", "c", "d", "e", "f", "g", "h"])
}

/// Two pentagons sharing the path `2-7-5`.
pub fn pp2() -> NamedGraph {
    let mut b = Builder::new();
    b.cycle(&["1", "2", "3", "4", "5", "6"]);
    b.path(&["2", "7", "5"]);
    b.finish("pp2", &["1", "2", "3", "4", "5", "6", "7"])
}

/// CB-graph with `d(v,x) = d(v,y) = 3` where the pentagon condition cannot pick
/// its middle vertex for arbitrary `w, w'`.
pub fn ctreex() -> NamedGraph {
    let mut b = Builder::new();
    b.path(&[
        "x", "w", "12", "13", "w", "21", "22", "12", "21", "13", "14", "21", "v", "22", "14", "y", "w'", "22", "13",
    ]);
    b.path(&["y", "x", "12"]);
    b.path(&["14", "w'"]);
    b.path(&["w", "13"]);
    b.path(&["13", "w'"]);
    b.finish("ctreex", &["x", "y", "w", "w'", "v"])
}

/// CB-graph of diameter 3: pentagons `deabc` and `defgh` plus `s`, `t`.
pub fn diameter3notwm() -> NamedGraph {
    let mut b = Builder::new();
    b.cycle(&["e", "a", "b", "c", "d"]);
    b.path(&["e", "f", "g", "h", "d"]);
    for other in ["g", "f", "e", "d", "h", "t", "c"] {
        b.path(&["s", other]);
    }
    for other in ["c", "f", "b"] {
        b.path(&["t", other]);
    }
    b.finish("diameter3notwm", &["a", "b", "c", "d", "e", "f", "g", "h", "s", "t"])
}

/// A path-like chain of `sections >= 2` pentagons, consecutive ones joined by a
/// layer of triangles, in which no pentagon has a universal vertex.
pub fn pentagon_chain(sections: usize) -> Graph {
    assert!(sections >= 2);
    let mut next = 0;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let (a, b0, c, d1, e1, s) = (fresh(), fresh(), fresh(), fresh(), fresh(), fresh());
    let mut edges = vec![(a, b0), (b0, c), (c, d1), (d1, e1), (e1, a), (s, a), (s, b0), (s, e1)];
    // State: a pentagon (a, b, c, d1, e1) and the vertex `s` adjacent to a, b, e1.
    let mut state = (a, b0, c, d1, e1, s);
    for _ in 1..sections {
        let (_, _, _, d1, e1, s) = state;
        let (e2, d2, f, g, h, v) = (fresh(), fresh(), fresh(), fresh(), fresh(), fresh());
        edges.extend([(e1, e2), (e2, d2), (d2, d1), (e1, d2)]);
        edges.extend([(e2, f), (f, g), (g, h), (h, d2)]);
        edges.push((s, d2));
        edges.extend([(v, e1), (v, d2), (v, h), (v, g)]);
        state = (h, d2, e2, f, g, v);
    }
    Graph::from_edges(next, edges).unwrap()
}

/// Triangular-grid graph `G_k`, `k >= 2`, labeled `u, x, y, v`.
///
/// A triangle of side `k - 1` with apex `u`, glued along its bottom row to an
/// inverted triangle of side `k + 1` whose top corners are `x` and `y`, and a
/// path of `k - 1` edges from the far corner to `v`.
pub fn gk(k: usize) -> NamedGraph {
    assert!(k >= 2);
    let mut b = Builder::new();
    let top = |x: usize, y: usize| format!("t{x},{y}");
    // Inverted triangle: row 0 has x = 0..=k+1, rows shrink upward to the apex (0, k+1).
    let inv = |x: usize, y: usize| {
        if y == 0 && (1..=k).contains(&x) {
            top(x, k)
        } else {
            format!("i{x},{y}")
        }
    };
    for y in 1..=k {
        for x in 1..=y {
            if x > 1 {
                b.path(&[&top(x, y), &top(x - 1, y)]);
                b.path(&[&top(x, y), &top(x - 1, y - 1)]);
            }
            if x < y {
                b.path(&[&top(x, y), &top(x, y - 1)]);
            }
        }
    }
    for y in 0..=k + 1 {
        for x in 0..=(k + 1 - y) {
            if x > 0 {
                b.path(&[&inv(x, y), &inv(x - 1, y)]);
            }
            if y > 0 {
                b.path(&[&inv(x, y), &inv(x, y - 1)]);
                b.path(&[&inv(x, y), &inv(x + 1, y - 1)]);
            }
        }
    }
    let mut prev = inv(0, k + 1);
    for i in 1..k {
        let cur = if i == k - 1 { "v".to_string() } else { format!("p{i}") };
        b.path(&[&prev, &cur]);
        prev = cur;
    }
    let (u, x, y) = (top(1, 1), inv(0, 0), inv(k + 1, 0));
    for (from, to) in [(u.as_str(), "u"), (x.as_str(), "x"), (y.as_str(), "y")] {
        let id = b.id(from);
        b.names[id] = to.to_string();
    }
    b.finish(&format!("gk:{k}"), &["u", "x", "y", "v"])
}

/// Two levels of cliques between `u` and `v`, used to illustrate clique-paths.
pub fn clique_path_figure() -> NamedGraph {
    let mut b = Builder::new();
    b.path(&["u", "11", "12", "13", "u", "12", "22", "21", "11", "13", "23", "22", "31", "v", "32", "23"]);
    b.path(&["11", "22", "13"]);
    b.path(&["21", "31", "32", "22"]);
    b.finish("cliquepath", &["u", "v", "11", "12", "13", "21", "22", "23", "31", "32"])
}

/// A family name with its parameters, written `name[:p1[:p2...]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Petersen,
    HoffmanSingleton,
    Cycle(usize),
    Path(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Wheel(usize),
    Hypercube(usize),
    Circulant(usize, Vec<usize>),
    /// Two cycles of the given lengths sharing one vertex.
    Wedge(usize, usize),
    Pt,
    Pp1,
    Pp2,
    Ctreex,
    Diameter3NotWm,
    PentagonChain(usize),
    Gk(usize),
    CliquePathFigure,
}

pub const FAMILY_NAMES: &[&str] = &[
    "petersen",
    "hoffman-singleton",
    "cycle:N",
    "path:N",
    "complete:N",
    "kab:A:B",
    "wheel:N",
    "hypercube:D",
    "circulant:N:S1,S2,...",
    "wedge:A:B",
    "pt",
    "pp1",
    "pp2",
    "ctreex",
    "diameter3notwm",
    "pentagon-chain:SECTIONS",
    "gk:K",
    "cliquepath",
];

impl FromStr for Family {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default().to_ascii_lowercase();
        let params: Vec<&str> = parts.collect();
        let bad = |msg: &str| GeneratorError::BadParameters {
            family: name.clone(),
            msg: msg.to_string(),
        };
        let num = |i: usize| -> Result<usize, GeneratorError> {
            params
                .get(i)
                .ok_or_else(|| bad(&format!("missing parameter {}", i + 1)))?
                .parse::<usize>()
                .map_err(|e| bad(&e.to_string()))
        };
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(bad(&format!("expected {k} parameter(s), got {}", params.len())))
            }
        };
        let family = match name.as_str() {
            "petersen" => arity(0).map(|_| Family::Petersen)?,
            "hoffman-singleton" | "hs" => arity(0).map(|_| Family::HoffmanSingleton)?,
            "cycle" | "c" => {
                arity(1)?;
                Family::Cycle(num(0)?)
            }
            "path" => {
                arity(1)?;
                Family::Path(num(0)?)
            }
            "complete" | "k" => {
                arity(1)?;
                Family::Complete(num(0)?)
            }
            "kab" => {
                arity(2)?;
                Family::CompleteBipartite(num(0)?, num(1)?)
            }
            "wheel" => {
                arity(1)?;
                Family::Wheel(num(0)?)
            }
            "hypercube" => {
                arity(1)?;
                Family::Hypercube(num(0)?)
            }
            "circulant" => {
                arity(2)?;
                let conn = params[1]
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|e| bad(&e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?;
                Family::Circulant(num(0)?, conn)
            }
            "wedge" => {
                arity(2)?;
                Family::Wedge(num(0)?, num(1)?)
            }
            "pt" => arity(0).map(|_| Family::Pt)?,
            "pp1" => arity(0).map(|_| Family::Pp1)?,
            "pp2" => arity(0).map(|_| Family::Pp2)?,
            "ctreex" => arity(0).map(|_| Family::Ctreex)?,
            "diameter3notwm" => arity(0).map(|_| Family::Diameter3NotWm)?,
            "pentagon-chain" | "chain" => {
                arity(1)?;
                Family::PentagonChain(num(0)?)
            }
            "gk" => {
                arity(1)?;
                Family::Gk(num(0)?)
            }
            "cliquepath" => arity(0).map(|_| Family::CliquePathFigure)?,
            _ => return Err(GeneratorError::UnknownFamily(s.to_string())),
        };
        family.validate()?;
        Ok(family)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Petersen => write!(f, "petersen"),
            Family::HoffmanSingleton => write!(f, "hoffman-singleton"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::CompleteBipartite(a, b) => write!(f, "kab:{a}:{b}"),
            Family::Wheel(n) => write!(f, "wheel:{n}"),
            Family::Hypercube(d) => write!(f, "hypercube:{d}"),
            Family::Circulant(n, s) => {
                let s: Vec<String> = s.iter().map(ToString::to_string).collect();
                write!(f, "circulant:{n}:{}", s.join(","))
            }
            Family::Wedge(a, b) => write!(f, "wedge:{a}:{b}"),
            Family::Pt => write!(f, "pt"),
            Family::Pp1 => write!(f, "pp1"),
            Family::Pp2 => write!(f, "pp2"),
            Family::Ctreex => write!(f, "ctreex"),
            Family::Diameter3NotWm => write!(f, "diameter3notwm"),
            Family::PentagonChain(s) => write!(f, "pentagon-chain:{s}"),
            Family::Gk(k) => write!(f, "gk:{k}"),
            Family::CliquePathFigure => write!(f, "cliquepath"),
        }
    }
}

impl Family {
    fn validate(&self) -> Result<(), GeneratorError> {
        let fail = |msg: &str| {
            Err(GeneratorError::BadParameters {
                family: self.to_string(),
                msg: msg.to_string(),
            })
        };
        match self {
            Family::Cycle(n) if *n < 3 => fail("cycle needs n >= 3"),
            Family::Path(n) | Family::Complete(n) if *n < 1 => fail("needs n >= 1"),
            Family::CompleteBipartite(a, b) if *a < 1 || *b < 1 => fail("needs a, b >= 1"),
            Family::Wheel(n) if *n < 3 => fail("wheel needs n >= 3"),
            Family::Hypercube(d) if *d > 12 => fail("dimension at most 12"),
            Family::Circulant(n, s) if *n < 2 || s.is_empty() || s.iter().all(|&x| x % n == 0) => {
                fail("needs n >= 2 and a nonzero connection")
            }
            Family::Wedge(a, b) if *a < 3 || *b < 3 => fail("cycle lengths must be >= 3"),
            Family::PentagonChain(s) if *s < 2 => fail("needs at least 2 sections"),
            Family::Gk(k) if *k < 2 => fail("needs k >= 2"),
            _ => Ok(()),
        }
    }

    /// Every named graph with default parameters, for corpus sweeps.
    pub fn named() -> Vec<Family> {
        let mut out = vec![
            Family::Petersen,
            Family::HoffmanSingleton,
            Family::Pt,
            Family::Pp1,
            Family::Pp2,
            Family::Ctreex,
            Family::Diameter3NotWm,
            Family::CliquePathFigure,
            Family::Circulant(9, vec![1, 2]),
            Family::Wedge(5, 5),
            Family::Wheel(5),
            Family::Hypercube(3),
            Family::CompleteBipartite(2, 3),
        ];
        out.extend((3..=8).map(Family::Cycle));
        out.extend((2..=5).map(Family::PentagonChain));
        out.extend((2..=4).map(Family::Gk));
        out
    }
}

/// Constructs the family member and runs its self-test.
pub fn make(family: &Family) -> Result<NamedGraph, GeneratorError> {
    family.validate()?;
    let name = family.to_string();
    let ng = match family {
        Family::Petersen => NamedGraph::unlabeled(name, petersen()),
        Family::HoffmanSingleton => NamedGraph::unlabeled(name, hoffman_singleton()),
        Family::Cycle(n) => NamedGraph::unlabeled(name, cycle(*n)),
        Family::Path(n) => NamedGraph::unlabeled(name, path(*n)),
        Family::Complete(n) => NamedGraph::unlabeled(name, complete(*n)),
        Family::CompleteBipartite(a, b) => NamedGraph::unlabeled(name, complete_bipartite(*a, *b)),
        Family::Wheel(n) => NamedGraph::unlabeled(name, wheel(*n)),
        Family::Hypercube(d) => NamedGraph::unlabeled(name, hypercube(*d)),
        Family::Circulant(n, s) => NamedGraph::unlabeled(name, circulant(*n, s)),
        Family::Wedge(a, b) => NamedGraph::unlabeled(name, wedge(&cycle(*a), &cycle(*b))),
        Family::Pt => pt(),
        Family::Pp1 => pp1(),
        Family::Pp2 => pp2(),
        Family::Ctreex => ctreex(),
        Family::Diameter3NotWm => diameter3notwm(),
        Family::PentagonChain(s) => NamedGraph::unlabeled(name, pentagon_chain(*s)),
        Family::Gk(k) => gk(*k),
        Family::CliquePathFigure => clique_path_figure(),
    };
    self_test(family, &ng).map_err(|msg| GeneratorError::SelfTest { family: family.to_string(), msg })?;
    Ok(ng)
}

/// Structural facts each construction is known to satisfy.
fn self_test(family: &Family, ng: &NamedGraph) -> Result<(), String> {
    let g = &ng.graph;
    let check = |ok: bool, what: &str| if ok { Ok(()) } else { Err(what.to_string()) };
    match family {
        Family::Petersen => {
            check(g.n() == 10 && g.m() == 15, "10 vertices and 15 edges")?;
            check(moore_degree(g) == Some(3), "Moore graph of degree 3")
        }
        Family::HoffmanSingleton => {
            check(g.n() == 50 && g.m() == 175, "50 vertices and 175 edges")?;
            check(moore_degree(g) == Some(7), "Moore graph of degree 7")
        }
        Family::Ctreex => {
            let d = all_pairs_distances(g).map_err(|e| e.to_string())?;
            let (v, x, y, w, w2) = (ng.label("v"), ng.label("x"), ng.label("y"), ng.label("w"), ng.label("w'"));
            check(d.d(v, x) == 3 && d.d(v, y) == 3, "d(v,x) = d(v,y) = 3")?;
            check(check_tc(&d, v, x, y) == Ok(false), "TC(v, xy) fails")?;
            check(d.d(v, w) == 2 && d.d(v, w2) == 2, "w, w' at distance 2 from v")?;
            let common = (0..g.n()).any(|z| d.d(v, z) <= 1 && g.has_edge(z, w) && g.has_edge(z, w2));
            check(!common, "no z in B_1(v) adjacent to w and w'")
        }
        Family::Diameter3NotWm => {
            let d = all_pairs_distances(g).map_err(|e| e.to_string())?;
            check(d.diameter() == 3, "diameter 3")?;
            let l = |s: &str| ng.label(s);
            let lower = [l("d"), l("e"), l("a"), l("b"), l("c")];
            let upper = [l("d"), l("e"), l("f"), l("g"), l("h")];
            check(universal_vertex(g, &lower).is_none(), "lower pentagon has no universal vertex")?;
            check(universal_vertex(g, &upper) == Some(l("s")), "s is universal for the upper pentagon")
        }
        Family::PentagonChain(s) => check(g.n() == 6 * s, "six vertices per section"),
        Family::Gk(k) => {
            let d = all_pairs_distances(g).map_err(|e| e.to_string())?;
            let (u, x, y, v) = (ng.label("u"), ng.label("x"), ng.label("y"), ng.label("v"));
            check(d.d(u, x) == *k && d.d(u, y) == *k, "d(u,x) = d(u,y) = k")?;
            check(d.d(x, y) == k + 1, "d(x,y) = k + 1")?;
            check(d.d(v, x) == 2 * k && d.d(v, y) == 2 * k, "d(v,x) = d(v,y) = 2k")?;
            check(d.d(u, v) == 3 * k - 1, "d(u,v) = 3k - 1")
        }
        _ => Ok(()),
    }
}

/// Connected samples: a uniformly random recursive tree plus each remaining pair
/// with a probability cycling through several densities. `n` ranges over `3..=n_max`.
pub fn random_corpus(n_max: usize, count: usize, seed: u64) -> Vec<Graph> {
    assert!((3..=14).contains(&n_max), "n_max must lie in 3..=14");
    const DENSITIES: [f64; 5] = [0.1, 0.2, 0.3, 0.45, 0.6];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let n = rng.random_range(3..=n_max);
            let p = DENSITIES[i % DENSITIES.len()];
            random_connected(n, p, &mut rng)
        })
        .collect()
}

pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Canonical code: the largest upper-triangle adjacency bitstring over all
/// relabelings that order vertices by non-increasing degree.
fn canonical_code(rows: &[u32]) -> u64 {
    let n = rows.len();
    let deg: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    // Degree classes are permuted independently.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if deg[c[0]] == deg[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best = 0u64;
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    fn permute(classes: &mut [Vec<usize>], ci: usize, start: usize, perm: &mut Vec<usize>, rows: &[u32], best: &mut u64) {
        if ci == classes.len() {
            let n = perm.len();
            let mut code = 0u64;
            for i in 0..n {
                for j in i + 1..n {
                    code = (code << 1) | u64::from(rows[perm[i]] >> perm[j] & 1);
                }
            }
            *best = (*best).max(code);
            return;
        }
        let len = classes[ci].len();
        if start == len {
            perm.extend_from_slice(&classes[ci]);
            permute(classes, ci + 1, 0, perm, rows, best);
            perm.truncate(perm.len() - len);
            return;
        }
        for i in start..len {
            classes[ci].swap(start, i);
            permute(classes, ci, start + 1, perm, rows, best);
            classes[ci].swap(start, i);
        }
    }
    permute(&mut classes, 0, 0, &mut perm, rows, &mut best);
    best
}

fn rows_to_graph(rows: &[u32]) -> Graph {
    let n = rows.len();
    let edges = (0..n).flat_map(|a| (a + 1..n).filter(move |&b| rows[a] >> b & 1 == 1).map(move |b| (a, b)));
    Graph::from_edges(n, edges).unwrap()
}

/// Every graph on `n <= 8` vertices up to isomorphism, by adding one vertex with
/// every neighborhood to each graph on `n - 1` vertices and deduplicating
/// canonical forms.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "exhaustive enumeration is limited to 8 vertices");
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    let mut level: Vec<Vec<u32>> = vec![vec![0]];
    for size in 2..=n {
        let mut seen: HashSet<u64> = HashSet::new();
        let mut next = Vec::new();
        for rows in &level {
            for mask in 0u32..(1 << (size - 1)) {
                let mut r = rows.clone();
                for (v, row) in r.iter_mut().enumerate() {
                    if mask >> v & 1 == 1 {
                        *row |= 1 << (size - 1);
                    }
                }
                r.push(mask);
                if seen.insert(canonical_code(&r)) {
                    next.push(r);
                }
            }
        }
        level = next;
    }
    level.iter().map(|r| rows_to_graph(r)).collect()
}

/// Connected graphs on `n` vertices up to isomorphism.
pub fn all_connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(Graph::is_connected).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_named_family_builds() {
        for f in Family::named() {
            let ng = make(&f).unwrap_or_else(|e| panic!("{f}: {e}"));
            assert!(ng.graph.is_connected(), "{f}");
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn graph_counts_up_to_six() {
        let all: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
        let conn: Vec<usize> = (1..=6).map(|n| all_connected_graphs(n).len()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn family_parse_errors() {
        assert!(matches!("nope".parse::<Family>(), Err(GeneratorError::UnknownFamily(_))));
        assert!(matches!("cycle:2".parse::<Family>(), Err(GeneratorError::BadParameters { .. })));
        assert!(matches!("cycle".parse::<Family>(), Err(GeneratorError::BadParameters { .. })));
        assert_eq!("circulant:9:1,2".parse::<Family>().unwrap(), Family::Circulant(9, vec![1, 2]));
    }

    #[test]
    fn random_corpus_is_deterministic_and_connected() {
        let a = random_corpus(10, 40, 7);
        assert_eq!(a, random_corpus(10, 40, 7));
        assert!(a.iter().all(Graph::is_connected));
        assert_ne!(a, random_corpus(10, 40, 8));
    }

    #[test]
    fn chain_and_figure_sizes() {
        assert_eq!(pentagon_chain(2).n(), 12);
        assert_eq!(clique_path_figure().graph.n(), 10);
        assert_eq!(gk(2).graph.n(), 12);
    }
}
