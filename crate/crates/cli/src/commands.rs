use std::collections::BTreeMap;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cbgraph::acceptance::run_all;
use cbgraph::combing::{
    almost_convexity_constant, async_fellow_k, clique_path, enumerate_normal_paths, exhaustive_fellow_scan,
    fellow_traveler_scan, fftp_shorten, for_each_walk, is_normal, normal_vertex_path, CliquePathTable,
    FellowTravelerStats,
};
use cbgraph::conditions::{global_report, recognize_all, recognize_cb, CbMethod};
use cbgraph::cover::{build_universal_cover, cover_is_cb_up_to, reproduces, verify_cover_invariants, CoverError};
use cbgraph::dismantle::{
    bfs_order, compute_core, find_stabilized_clique, find_stabilized_five_cycle, stabilized_convex_set,
    verify_dismantling, Automorphism, DismantleError,
};
use cbgraph::graph::write_edge_list;
use cbgraph::helly::{helly_number, sigma2};
use cbgraph::metric::power_graph;
use cbgraph::substructures::{
    classify_triangle_free, enumerate_pentagons, enumerate_triangles, recognize_structural, TriangleFreeClass,
};
use cbgraph::triangles::{classify, enumerate_metric_triangles, TriangleClass};
use cbgraph::all_pairs_distances;

use crate::report::{list, Out};
use crate::{vertex, write_output, Input};

pub fn check(out: &mut Out, inp: &Input, method: Option<CbMethod>) -> Result<bool> {
    let d = &inp.d;
    let verdicts = match method {
        Some(m) => vec![recognize_cb(d, m)],
        None => recognize_all(d),
    };
    let cb = verdicts[0].is_cb;
    let agree = verdicts.iter().filter(|v| v.is_cb == cb).count();
    out.row(None, &[("cb", cb.to_string()), ("method_agreement", format!("{agree}/{}", verdicts.len()))]);
    for v in &verdicts {
        let mut pairs = vec![("cb", v.is_cb.to_string())];
        if let Some(w) = &v.witness {
            pairs.push(("witness", w.to_string()));
        }
        out.row(Some(&v.method.name().to_ascii_lowercase()), &pairs);
    }
    let holds = cb && agree == verdicts.len();
    if !holds {
        out.rerun();
    }
    Ok(holds)
}

pub fn conditions(out: &mut Out, inp: &Input, max_dist: Option<usize>) -> Result<bool> {
    let report = global_report(&inp.d, max_dist);
    for w in &report {
        let mut pairs = vec![("holds", w.holds.to_string())];
        if let Some(l) = &w.locus {
            pairs.push(("locus", l.to_string()));
        }
        out.row(Some(w.condition.name()), &pairs);
    }
    let holds = report.iter().all(|w| w.holds);
    if !holds {
        out.rerun();
    }
    Ok(holds)
}

pub fn substructures(out: &mut Out, inp: &Input) -> Result<bool> {
    let d = &inp.d;
    let g = d.graph();
    let report = recognize_structural(d);
    let lengths: Vec<String> = report.isometric_cycle_lengths.iter().map(|(l, c)| format!("{l}:{c}")).collect();
    out.row(
        None,
        &[
            ("triangles", enumerate_triangles(g).len().to_string()),
            ("pentagons", enumerate_pentagons(g).len().to_string()),
            ("isometric_cycles", format!("[{}]", lengths.join(","))),
            ("forbidden", report.forbidden.len().to_string()),
        ],
    );
    for (i, f) in report.forbidden.iter().enumerate() {
        out.row(Some(&format!("forbidden.{i}")), &[("kind", f.kind.name().to_string()), ("vertices", list(f.vertices.iter().copied()))]);
    }
    if let Ok(class) = classify_triangle_free(d) {
        let text = match class {
            TriangleFreeClass::MooreDiam2 { degree } => format!("moore degree={degree}"),
            TriangleFreeClass::WedgeDecomposable { blocks } => format!("blocks={}", blocks.len()),
            TriangleFreeClass::NotCb => "not-cb".to_string(),
        };
        out.row(None, &[("triangle_free", text)]);
    }
    let holds = report.forbidden.is_empty();
    if !holds {
        out.rerun();
    }
    Ok(holds)
}

pub fn triangles(out: &mut Out, inp: &Input) -> Result<bool> {
    let d = &inp.d;
    let mut hist: BTreeMap<String, usize> = BTreeMap::new();
    let mut first_other = None;
    for t in enumerate_metric_triangles(d) {
        let key = match classify(d, &t) {
            TriangleClass::StronglyEquilateral(k) => format!("strongly_equilateral_{k}"),
            TriangleClass::Pentagon221(_) => "pentagon_221".to_string(),
            TriangleClass::Other(defect) => {
                first_other.get_or_insert(format!("{t} {defect:?}"));
                "other".to_string()
            }
        };
        *hist.entry(key).or_default() += 1;
    }
    let pairs: Vec<(&str, String)> = hist.iter().map(|(k, v)| (k.as_str(), v.to_string())).collect();
    out.row(Some("histogram"), &pairs);
    if let Some(w) = &first_other {
        out.row(None, &[("witness", w.clone())]);
        out.rerun();
    }
    Ok(first_other.is_none())
}

pub fn comb(out: &mut Out, inp: &Input, u: usize, v: usize, seed: u64, unique: bool) -> Result<bool> {
    let d = &inp.d;
    let (u, v) = (vertex(d, u)?, vertex(d, v)?);
    let path = match clique_path(d, u, v) {
        Ok(p) => p,
        Err(e) => {
            out.row(None, &[("clique_path", "none".into()), ("error", e.to_string())]);
            out.rerun();
            return Ok(false);
        }
    };
    let axioms = is_normal(d, &path);
    out.row(None, &[("clique_path", path.to_string()), ("sizes", list(path.sizes()))]);
    let show = |o: Option<usize>| o.map_or("ok".to_string(), |i| format!("fails@{i}"));
    out.row(
        Some("axioms"),
        &[
            ("nonempty", show(axioms.nonempty)),
            ("i", show(axioms.i)),
            ("ii", show(axioms.ii)),
            ("iii", show(axioms.iii)),
            ("iv", show(axioms.iv)),
        ],
    );
    let mut holds = axioms.holds();
    if let Ok(p) = normal_vertex_path(d, u, v, seed) {
        out.row(None, &[("normal_vertex_path", list(p))]);
    }
    if unique {
        let all = enumerate_normal_paths(d, u, v, None);
        let same = all.len() == 1 && all[0] == path;
        out.row(None, &[("normal_paths", all.len().to_string()), ("unique", same.to_string())]);
        holds &= same;
    }
    if !holds {
        out.rerun();
    }
    Ok(holds)
}

fn stats_row(out: &mut Out, group: &str, s: &FellowTravelerStats, bound: String, ok: bool) {
    let mut pairs = vec![
        ("quadruples", s.quadruples.to_string()),
        ("max_distance", s.max_distance.to_string()),
        ("max_ratio", format!("{}/{}", s.ratio_num, s.ratio_den)),
        ("bound", bound),
        ("holds", ok.to_string()),
    ];
    if let Some((a, b, c, e)) = s.worst {
        pairs.push(("worst", list([a, b, c, e])));
    }
    out.row(Some(group), &pairs);
}

pub fn fellow(out: &mut Out, inp: &Input, samples: Option<usize>, seed: u64) -> Result<bool> {
    let d = &inp.d;
    let table = match CliquePathTable::new(d) {
        Ok(t) => t,
        Err(e) => {
            out.row(None, &[("error", e.to_string())]);
            out.rerun();
            return Ok(false);
        }
    };
    let ratio_ok = |s: &FellowTravelerStats| s.ratio_num <= 7 * s.ratio_den.max(1);
    let holds = match samples {
        Some(count) => {
            let n = d.n();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let quads: Vec<_> = (0..count)
                .map(|_| (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n)))
                .collect();
            let s = fellow_traveler_scan(d, &table, quads);
            let ok = ratio_ok(&s);
            stats_row(out, "general", &s, "7".into(), ok);
            ok
        }
        None => {
            let r = exhaustive_fellow_scan(d, &table);
            let checks = [
                ("general", &r.general, 7, ratio_ok(&r.general)),
                ("adjacent_sinks", &r.adjacent_sinks, 3, r.adjacent_sinks.max_distance <= 3),
                ("adjacent_sources_closer", &r.adjacent_sources_closer, 1, r.adjacent_sources_closer.max_distance <= 1),
                ("adjacent_sources_equal", &r.adjacent_sources_equal, 4, r.adjacent_sources_equal.max_distance <= 4),
            ];
            for (name, s, bound, ok) in checks {
                stats_row(out, name, s, bound.to_string(), ok);
            }
            checks.iter().all(|c| c.3)
        }
    };
    if !holds {
        out.rerun();
    }
    Ok(holds)
}

pub fn fftp(out: &mut Out, inp: &Input, max_len: usize) -> Result<bool> {
    let d = &inp.d;
    let mut walks = 0usize;
    let mut max_k = 0usize;
    let mut failure: Option<String> = None;
    for_each_walk(d, max_len, |w| {
        if failure.is_some() || d.d(w[0], w[w.len() - 1]) == w.len() - 1 {
            return;
        }
        walks += 1;
        match fftp_shorten(d, w) {
            Ok(s) if s.len() < w.len() && s[0] == w[0] && s[s.len() - 1] == w[w.len() - 1] => {
                let k = async_fellow_k(d, w, &s);
                max_k = max_k.max(k);
                if k > 2 {
                    failure = Some(format!("{} -> {} K={k}", list(w.iter().copied()), list(s)));
                }
            }
            Ok(s) => failure = Some(format!("{} -> {} not shorter", list(w.iter().copied()), list(s))),
            Err(e) => failure = Some(format!("{}: {e}", list(w.iter().copied()))),
        }
    });
    let ac3 = almost_convexity_constant(d, 3).map_or("none".to_string(), |k| k.to_string());
    out.row(None, &[("walks", walks.to_string()), ("max_async_k", max_k.to_string()), ("bound", "2".into()), ("ac3", ac3)]);
    if let Some(f) = &failure {
        out.row(None, &[("witness", f.clone())]);
        out.rerun();
    }
    Ok(failure.is_none())
}

pub fn dismantle(out: &mut Out, inp: &Input, base: Option<usize>, power: usize, seeds: u64) -> Result<bool> {
    let d = &inp.d;
    let g = d.graph();
    if power == 0 {
        bail!("--power must be at least 1");
    }
    let bases: Vec<usize> = match base {
        Some(b) => vec![vertex(d, b)?],
        None => (0..g.n()).collect(),
    };
    let h = power_graph(g, power);
    let mut checked = 0usize;
    let mut failure = None;
    'outer: for &b in &bases {
        for seed in 0..seeds.max(1) {
            let o = bfs_order(g, b, seed);
            checked += 1;
            if let Some(v) = verify_dismantling(&h, &o.order, 1) {
                failure = Some((b, seed, v, o.order));
                break 'outer;
            }
        }
    }
    out.row(None, &[("power", power.to_string()), ("orders", checked.to_string()), ("dismantles", failure.is_none().to_string())]);
    if let Some((b, seed, v, order)) = failure {
        out.row(Some("witness"), &[("base", b.to_string()), ("seed", seed.to_string()), ("undominated", v.to_string()), ("order", list(order))]);
        out.rerun();
        return Ok(false);
    }
    Ok(true)
}

pub fn core(out: &mut Out, inp: &Input) -> Result<bool> {
    let c = compute_core(inp.d.graph());
    let (h, _) = inp.d.graph().induced(&c);
    let cb = all_pairs_distances(&h).is_ok_and(|hd| recognize_cb(&hd, CbMethod::Direct).is_cb);
    out.row(None, &[("core_size", c.len().to_string()), ("core", list(c.iter())), ("core_cb", cb.to_string())]);
    Ok(true)
}

pub fn stabilize(out: &mut Out, inp: &Input, perm: &[usize]) -> Result<bool> {
    let d = &inp.d;
    if perm.len() != d.n() {
        bail!("--perm lists {} images for {} vertices", perm.len(), d.n());
    }
    let f = Automorphism::new(d.graph(), perm.to_vec()).context("--perm")?;
    let clique = find_stabilized_clique(d, &f);
    let five = find_stabilized_five_cycle(d.graph(), &f);
    out.row(
        None,
        &[
            ("orbits", f.orbits().len().to_string()),
            ("stabilized_clique", clique.map_or("none".into(), |c| list(c.iter()))),
            ("stabilized_five_cycle", five.map_or("none".into(), list)),
        ],
    );
    match stabilized_convex_set(d, &f) {
        Ok(s) => {
            out.row(None, &[("convex_set", list(s.iter())), ("diameter", d.set_diameter(&s).to_string())]);
            Ok(true)
        }
        Err(DismantleError::NotFound) => {
            out.row(None, &[("convex_set", "none".into())]);
            out.rerun();
            Ok(false)
        }
        Err(e) => Err(e.into()),
    }
}

pub fn helly(out: &mut Out, inp: &Input, cap: usize) -> Result<bool> {
    let d = &inp.d;
    let c = helly_number(d, cap);
    let bound = |v: usize, capped: bool| if capped { format!(">={v}") } else { v.to_string() };
    out.row(None, &[("h", bound(c.h, c.capped)), ("witness", list(c.witness.iter()))]);
    out.row(None, &[("h2", bound(c.h2, c.h2_capped)), ("witness2", list(c.witness2.iter()))]);
    out.row(None, &[("sigma2", sigma2(d, cap).len().to_string()), ("cap", cap.to_string())]);
    let holds = c.h == c.h2;
    if !holds {
        out.rerun();
    }
    Ok(holds)
}

pub fn cover(out: &mut Out, inp: &Input, base: usize, radius: usize, emit: Option<&str>) -> Result<bool> {
    let d = &inp.d;
    let g = d.graph();
    let base = vertex(d, base)?;
    let st = match build_universal_cover(g, base, radius, true) {
        Ok(st) => st,
        Err(e @ CoverError::LocalConditionsFail(_)) => {
            out.row(None, &[("cover", "none".into()), ("error", e.to_string())]);
            out.rerun();
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    let report = verify_cover_invariants(&st, g);
    let layers: Vec<usize> = st.layers.iter().map(Vec::len).collect();
    out.row(None, &[("cover_n", st.n().to_string()), ("layers", list(layers)), ("reproduces_ball", reproduces(&st, d).to_string())]);
    out.row(None, &[("invariants", report.to_string())]);
    if radius >= 3 {
        let cb = cover_is_cb_up_to(&st, radius - 3)?;
        out.row(None, &[("balls_convex_up_to", (radius - 3).to_string()), ("holds", cb.holds.to_string())]);
    }
    if let Some(path) = emit {
        write_output(path, &write_edge_list(&st.graph()), &st.sidecar(), "map")?;
    }
    let holds = report.holds();
    if !holds {
        out.rerun();
    }
    Ok(holds)
}

pub fn corpus(out: &mut Out) -> Result<bool> {
    let t0 = Instant::now();
    let results = run_all(|_| ());
    for o in &results {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        if out.is_kv() {
            out.row(Some(&format!("criterion.{}", o.index)), &[("status", tag.to_ascii_lowercase()), ("detail", o.detail.clone())]);
        } else {
            out.note(&format!("[{tag}] {:>2} {}: {} ({:.2}s)", o.index, o.name, o.detail, o.seconds));
        }
    }
    let passed = results.iter().filter(|o| o.passed).count();
    out.row(None, &[("passed", format!("{passed}/{}", results.len()))]);
    out.note(&format!("elapsed {:.2}s", t0.elapsed().as_secs_f64()));
    Ok(passed == results.len())
}
