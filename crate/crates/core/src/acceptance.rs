//! The acceptance criteria as library code, shared by the test harness and `cbgraph corpus`.
//! Every tolerance is exact.

use std::time::Instant;

use crate::combing::{
    async_fellow_k, clique_path, enumerate_normal_paths, exhaustive_fellow_scan, fftp_shorten, for_each_walk,
    is_normal, CliquePathTable,
};
use crate::conditions::{check_qc, global_check, recognize_all, recognize_cb, CbMethod, CbWitness, ConditionId};
use crate::convexity::has_k_convex_balls;
use crate::cover::{
    build_complex, build_universal_cover, cover_is_cb_up_to, h1_rank_gf2, loops_contract, reproduces,
    verify_cover_invariants,
};
use crate::dismantle::{
    bfs_order, find_stabilized_clique, find_stabilized_five_cycle, stabilized_convex_set, verify_dismantling,
    Automorphism,
};
use crate::generators::{all_connected_graphs, circulant, cycle, gk, make, petersen, random_corpus, Family};
use crate::helly::{helly_number, is_h_independent, maximal_h_independent_sets, reduce_h_independent, DEFAULT_CAP};
use crate::metric::power_graph;
use crate::triangles::{classify, enumerate_metric_triangles, TriangleClass};
use crate::graph::Graph;
use crate::metric::{all_pairs_distances, DistanceOracle};

const RANDOM_SEED: u64 = 1;
const RANDOM_COUNT: usize = 500;
const RANDOM_N_MAX: usize = 12;
const SMALL_N_MAX: usize = 7;
const SEEDS: [u64; 3] = [0, 1, 2];

struct Entry {
    name: String,
    d: DistanceOracle,
}

struct Corpora {
    named: Vec<Entry>,
    small: Vec<Entry>,
    random: Vec<Entry>,
}

impl Corpora {
    fn build() -> Self {
        let entry = |name: String, g: Graph| Entry { name, d: all_pairs_distances(&g).expect("connected") };
        let named = Family::named()
            .iter()
            .map(|f| {
                let ng = make(f).expect("named family builds");
                entry(f.to_string(), ng.graph)
            })
            .collect();
        let small = (1..=SMALL_N_MAX)
            .flat_map(|n| all_connected_graphs(n).into_iter().enumerate().map(move |(i, g)| (n, i, g)))
            .map(|(n, i, g)| entry(format!("connected n={n} #{i}"), g))
            .collect();
        let random = random_corpus(RANDOM_N_MAX, RANDOM_COUNT, RANDOM_SEED)
            .into_iter()
            .enumerate()
            .map(|(i, g)| entry(format!("random seed={RANDOM_SEED} #{i}"), g))
            .collect();
        Self { named, small, random }
    }

    fn all(&self) -> impl Iterator<Item = &Entry> {
        self.named.iter().chain(&self.small).chain(&self.random)
    }

    /// CB members of every corpus, verdict by the direct definition.
    fn cb(&self) -> Vec<&Entry> {
        self.all().filter(|e| recognize_cb(&e.d, CbMethod::Direct).is_cb).collect()
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_recognizers(c: &Corpora) -> Outcome {
    let mut graphs = 0;
    let mut cb = 0;
    for e in c.all() {
        let verdicts = recognize_all(&e.d);
        let first = verdicts[0].is_cb;
        if let Some(v) = verdicts.iter().find(|v| v.is_cb != first) {
            return Err(format!("{}: {} says {} but DIRECT says {first}", e.name, v.method.name(), v.is_cb));
        }
        let two = has_k_convex_balls(&e.d, 2).holds;
        let inc = global_check(&e.d, ConditionId::INC, None).holds;
        let inc_plus = global_check(&e.d, ConditionId::INCPlus, None).holds;
        ensure(two == inc && inc == inc_plus, || {
            format!("{}: 2-convex={two} INC={inc} INC+={inc_plus}", e.name)
        })?;
        graphs += 1;
        cb += usize::from(first);
    }
    Ok(format!("{graphs} graphs, 6/6 methods agree, {cb} CB"))
}

/// Re-derives a negative witness from scratch.
fn witness_reproduces(d: &DistanceOracle, w: &CbWitness) -> bool {
    match w {
        CbWitness::Convexity(v) => {
            let (c, r) = (v.center.unwrap_or(v.x), v.radius.unwrap_or(0));
            d.d(c, v.x) <= r && d.d(c, v.y) <= r && d.d(c, v.z) > r && d.in_interval(v.x, v.z, v.y)
        }
        _ => false,
    }
}

fn c2_named(_: &Corpora) -> Outcome {
    let positive = [
        "petersen",
        "hoffman-singleton",
        "cycle:5",
        "circulant:9:1,2",
        "ctreex",
        "diameter3notwm",
        "pentagon-chain:2",
        "pentagon-chain:3",
        "pentagon-chain:4",
        "pentagon-chain:5",
    ];
    let negative = ["pt", "pp1", "cycle:4", "cycle:6", "cycle:7", "cycle:8"];
    let mut witnesses = Vec::new();
    for (name, expect) in positive.iter().map(|n| (n, true)).chain(negative.iter().map(|n| (n, false))) {
        let fam: Family = name.parse().map_err(|e| format!("{name}: {e}"))?;
        let g = make(&fam).map_err(|e| format!("{name}: {e}"))?.graph;
        let d = all_pairs_distances(&g).map_err(|e| e.to_string())?;
        let v = recognize_cb(&d, CbMethod::Direct);
        ensure(v.is_cb == expect, || format!("{name}: expected CB={expect}"))?;
        if !expect {
            let w = v.witness.ok_or_else(|| format!("{name}: no witness"))?;
            ensure(witness_reproduces(&d, &w), || format!("{name}: witness {w} does not reproduce"))?;
            witnesses.push(format!("{name}[{w}]"));
        }
    }
    Ok(format!("{} positive, {} negative; {}", positive.len(), negative.len(), witnesses.join("; ")))
}

fn c3_dismantling(c: &Corpora) -> Outcome {
    let mut orders = 0;
    for e in c.cb() {
        let g = e.d.graph();
        let n = g.n();
        let bases: Vec<usize> = if n > 30 { (0..10).map(|i| i * n / 10).collect() } else { (0..n).collect() };
        let powers: Vec<Graph> = (2..=4).map(|p| power_graph(g, p)).collect();
        for &b in &bases {
            for seed in SEEDS {
                let o = bfs_order(g, b, seed);
                ensure(o.is_valid(&e.d), || format!("{}: invalid BFS order from {b}", e.name))?;
                for (p, h) in (2..=4).zip(&powers) {
                    if let Some(v) = verify_dismantling(h, &o.order, 1) {
                        return Err(format!("{}: base {b} seed {seed} fails in G^{p} at {v}", e.name));
                    }
                    orders += 1;
                }
            }
        }
    }
    Ok(format!("{orders} (order, power) pairs dismantle"))
}

fn c4_bicombing(c: &Corpora) -> Outcome {
    let mut pairs = 0;
    let mut scans = 0;
    let mut worst = (0usize, 1usize);
    let mut maxima = [0usize; 3];
    let petersen_d = all_pairs_distances(&petersen()).unwrap();
    let cb = c.cb();
    for e in &cb {
        let d = &e.d;
        if d.n() <= 10 {
            for u in 0..d.n() {
                for v in 0..d.n() {
                    let p = clique_path(d, u, v).map_err(|err| format!("{}: {err}", e.name))?;
                    ensure(is_normal(d, &p).holds(), || format!("{}: ({u},{v}) not normal", e.name))?;
                    let all = enumerate_normal_paths(d, u, v, None);
                    ensure(all.len() == 1 && all[0] == p, || {
                        format!("{}: ({u},{v}) has {} normal paths", e.name, all.len())
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    for d in cb.iter().map(|e| &e.d).chain(std::iter::once(&petersen_d)) {
        let table = CliquePathTable::new(d).map_err(|err| err.to_string())?;
        let r = exhaustive_fellow_scan(d, &table);
        let g = r.general;
        ensure(g.ratio_num <= 7 * g.ratio_den.max(1), || format!("ratio {g}"))?;
        ensure(r.adjacent_sinks.max_distance <= 3, || format!("adjacent sinks {}", r.adjacent_sinks))?;
        ensure(r.adjacent_sources_closer.max_distance <= 1, || format!("closer sources {}", r.adjacent_sources_closer))?;
        ensure(r.adjacent_sources_equal.max_distance <= 4, || format!("equal sources {}", r.adjacent_sources_equal))?;
        if g.ratio_num * worst.1 > worst.0 * g.ratio_den.max(1) {
            worst = (g.ratio_num, g.ratio_den.max(1));
        }
        maxima[0] = maxima[0].max(r.adjacent_sinks.max_distance);
        maxima[1] = maxima[1].max(r.adjacent_sources_closer.max_distance);
        maxima[2] = maxima[2].max(r.adjacent_sources_equal.max_distance);
        scans += 1;
    }
    Ok(format!(
        "{pairs} ordered pairs normal and unique; {scans} scans: worst ratio {}/{} (<= 7), sinks {} (<= 3), closer {} (<= 1), equal {} (<= 4)",
        worst.0, worst.1, maxima[0], maxima[1], maxima[2]
    ))
}

fn c5_fftp(c: &Corpora) -> Outcome {
    let mut walks = 0usize;
    let mut worst_k = 0;
    for e in c.cb().into_iter().filter(|e| e.d.n() <= 10) {
        let d = &e.d;
        let mut err = None;
        for_each_walk(d, 6, |w| {
            if err.is_some() || d.d(w[0], w[w.len() - 1]) == w.len() - 1 {
                return;
            }
            match fftp_shorten(d, w) {
                Ok(s) => {
                    let valid = s.len() < w.len()
                        && s[0] == w[0]
                        && s[s.len() - 1] == w[w.len() - 1]
                        && s.windows(2).all(|p| d.adjacent(p[0], p[1]));
                    let k = async_fellow_k(d, w, &s);
                    worst_k = worst_k.max(k);
                    if !valid || k > 2 {
                        err = Some(format!("{}: {w:?} -> {s:?} (K={k})", e.name));
                    }
                    walks += 1;
                }
                Err(x) => err = Some(format!("{}: {w:?}: {x}", e.name)),
            }
        });
        if let Some(m) = err {
            return Err(m);
        }
    }
    Ok(format!("{walks} non-geodesic walks shortened, max async K {worst_k} (<= 2)"))
}

fn c6_triangles(c: &Corpora) -> Outcome {
    let (mut eq, mut pent) = (0usize, 0usize);
    for e in c.cb() {
        for t in enumerate_metric_triangles(&e.d) {
            let [a, b, cc] = t.sides;
            ensure(!(a >= 2 && b + 1 == a && cc + 1 == a), || format!("{}: {t} is (k,k-1,k-1)", e.name))?;
            ensure(!(a >= 3 && b == a && cc + 1 == a), || format!("{}: {t} is (k,k,k-1)", e.name))?;
            match classify(&e.d, &t) {
                TriangleClass::StronglyEquilateral(_) => eq += 1,
                TriangleClass::Pentagon221(_) => pent += 1,
                TriangleClass::Other(x) => return Err(format!("{}: {t} is OTHER ({x:?})", e.name)),
            }
        }
    }
    Ok(format!("{eq} strongly equilateral, {pent} pentagonal, 0 other"))
}

fn c7_helly(c: &Corpora) -> Outcome {
    let pd = all_pairs_distances(&petersen()).unwrap();
    let pc = helly_number(&pd, DEFAULT_CAP);
    ensure(pc.h == 4 && pc.h2 == 4 && !pc.capped, || format!("Petersen h={} h2={}", pc.h, pc.h2))?;
    let (mut graphs, mut reduced) = (0, 0);
    for e in c.cb().into_iter().filter(|e| e.d.n() <= 10) {
        let d = &e.d;
        let cert = helly_number(d, DEFAULT_CAP);
        ensure(!cert.capped && cert.h == cert.h2, || format!("{}: h={} h2={}", e.name, cert.h, cert.h2))?;
        for a in maximal_h_independent_sets(d) {
            let r = reduce_h_independent(d, &a).map_err(|x| format!("{}: {x}", e.name))?;
            let s = &r.result;
            ensure(s.len() == a.len() && d.set_diameter(s) <= 2 && is_h_independent(d, s), || {
                format!("{}: {:?} reduced to {:?}", e.name, a.to_vec(), s.to_vec())
            })?;
            reduced += 1;
        }
        graphs += 1;
    }
    Ok(format!("Petersen h=h2=4; {graphs} graphs with h=h2; {reduced} maximal sets reduced"))
}

fn c8_cover(c: &Corpora) -> Outcome {
    let g = petersen();
    let d = all_pairs_distances(&g).unwrap();
    let st = build_universal_cover(&g, 0, 3, true).map_err(|e| e.to_string())?;
    ensure(reproduces(&st, &d), || "Petersen cover differs from Petersen".into())?;
    let g13 = cycle(13);
    let st = build_universal_cover(&g13, 0, 6, true).map_err(|e| e.to_string())?;
    let cg = st.graph();
    let is_path = cg.n() == 13 && cg.m() == 12 && cg.is_connected() && (0..13).all(|v| cg.degree(v) <= 2);
    ensure(is_path, || "C13 cover is not a 13-vertex path".into())?;
    let rep = verify_cover_invariants(&st, &g13);
    ensure(rep.holds(), || format!("C13 invariants: {rep}"))?;
    ensure(cover_is_cb_up_to(&st, 3).map_err(|e| e.to_string())?.holds, || "C13 cover balls".into())?;
    let mut checked = 0;
    for e in c.cb() {
        let g = e.d.graph();
        if h1_rank_gf2(&build_complex(g)) != 0 {
            continue;
        }
        if !loops_contract(&e.d, 0) {
            continue;
        }
        let st = build_universal_cover(g, 0, e.d.diameter(), true).map_err(|x| format!("{}: {x}", e.name))?;
        ensure(reproduces(&st, &e.d), || format!("{}: cover does not reproduce", e.name))?;
        checked += 1;
    }
    Ok(format!("Petersen reproduced; C13 -> P13 with P-T passing; {checked} simply connected CB graphs reproduced"))
}

fn c9_power_qc(_: &Corpora) -> Outcome {
    for k in 2..=4 {
        let ng = gk(k);
        let d = all_pairs_distances(&power_graph(&ng.graph, k)).unwrap();
        let [u, v, x, y] = ["u", "v", "x", "y"].map(|l| ng.label(l));
        let holds = check_qc(&d, v, x, y, u).map_err(|e| format!("G_{k}: {e}"))?;
        ensure(!holds, || format!("G_{k}: QC holds at the labeled quadruple"))?;
    }
    Ok("QC fails in G_k^k at (v; x, y; u) for k = 2, 3, 4".into())
}

fn c10_stabilized(_: &Corpora) -> Outcome {
    let g = circulant(9, &[1, 2]);
    let d = all_pairs_distances(&g).unwrap();
    let mut found = Vec::new();
    for step in [1, 3] {
        let f = Automorphism::new(&g, (0..9).map(|v| (v + step) % 9).collect()).map_err(|e| e.to_string())?;
        ensure(find_stabilized_clique(&d, &f).is_none(), || format!("rotation by {step} stabilizes a clique"))?;
        ensure(find_stabilized_five_cycle(&g, &f).is_none(), || format!("rotation by {step} stabilizes a 5-cycle"))?;
        let s = stabilized_convex_set(&d, &f).map_err(|e| format!("rotation by {step}: {e}"))?;
        let ok = d.set_diameter(&s) <= 2 && f.image_of(&s) == s && d.convex_hull(&s) == s;
        ensure(ok, || format!("rotation by {step}: invalid set {:?}", s.to_vec()))?;
        found.push(format!("rotation {step}: {:?}", s.to_vec()));
    }
    Ok(format!("no stabilized clique or 5-cycle; {}", found.join(", ")))
}

/// Result of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

pub const CRITERIA: [&str; 10] = [
    "recognizer equivalence",
    "named verdicts",
    "dismantling of powers",
    "bicombing and fellow travelers",
    "falsification by fellow traveler",
    "metric triangles",
    "Helly numbers",
    "universal cover",
    "power non-modularity",
    "stabilized sets",
];

/// Builds the corpora once and runs every criterion in order, handing each
/// outcome to `report` as soon as it is known.
pub fn run_all(mut report: impl FnMut(&CriterionOutcome)) -> Vec<CriterionOutcome> {
    let corpora = Corpora::build();
    let checks: [fn(&Corpora) -> Outcome; 10] = [
        c1_recognizers,
        c2_named,
        c3_dismantling,
        c4_bicombing,
        c5_fftp,
        c6_triangles,
        c7_helly,
        c8_cover,
        c9_power_qc,
        c10_stabilized,
    ];
    let mut out = Vec::with_capacity(10);
    for (i, check) in checks.iter().enumerate() {
        let t = Instant::now();
        let (passed, detail) = match check(&corpora) {
            Ok(msg) => (true, msg),
            Err(msg) => (false, msg),
        };
        let o = CriterionOutcome { index: i + 1, name: CRITERIA[i], passed, detail, seconds: t.elapsed().as_secs_f64() };
        report(&o);
        out.push(o);
    }
    out
}
