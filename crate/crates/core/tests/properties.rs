use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cbgraph::combing::{async_fellow_k, fftp_shorten, normal_vertex_path};
use cbgraph::conditions::{
    check_inc, check_pc, check_tc, is_cb, recognize_all, ConditionId, IncVariant, PcVariant,
};
use cbgraph::conditions::global_check;
use cbgraph::convexity::{has_convex_balls, has_convex_balls_exhaustive, has_k_convex_balls, is_convex, is_k_convex};
use cbgraph::cover::{
    build_complex, build_universal_cover, contract_cycle, h1_rank_gf2, reproduces, simple_cycles, Contraction,
};
use cbgraph::dismantle::{bfs_order, compute_core, verify_dismantling};
use cbgraph::generators::{cycle, random_connected};
use cbgraph::helly::{exchange, helly_number, is_h_independent, maximal_h_independent_sets, potential, reduce_h_independent};
use cbgraph::metric::power_graph;
use cbgraph::substructures::{analyze_pentagon_pair, enumerate_pentagons, recognize_structural, PentagonPairClass};
use cbgraph::triangles::{enumerate_metric_triangles, is_quasi_median_of, quasi_median};
use cbgraph::{all_pairs_distances, DistanceOracle, Graph, VertexSet};

fn graph(n_max: usize) -> impl Strategy<Value = Graph> {
    (3..=n_max, 0.05f64..0.7, any::<u64>())
        .prop_map(|(n, p, seed)| random_connected(n, p, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn oracle(n_max: usize) -> impl Strategy<Value = DistanceOracle> {
    graph(n_max).prop_map(|g| all_pairs_distances(&g).unwrap())
}

/// CB graphs: random graphs that fail are discarded.
fn cb_oracle(n_max: usize) -> impl Strategy<Value = DistanceOracle> {
    oracle(n_max).prop_filter("not CB", is_cb)
}

fn subset(n: usize, mask: u64) -> VertexSet {
    VertexSet::from_vertices(n, (0..n).filter(|&i| mask >> i & 1 == 1))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn intervals_are_symmetric(d in oracle(12)) {
        for u in 0..d.n() {
            for v in 0..d.n() {
                let i = d.interval(u, v);
                prop_assert_eq!(&i, &d.interval(v, u));
                prop_assert!(u == v || i.len() >= 2);
            }
        }
    }

    #[test]
    fn hull_is_idempotent_and_convex(d in oracle(12), mask in any::<u64>()) {
        let h = d.convex_hull(&subset(d.n(), mask));
        prop_assert_eq!(d.convex_hull(&h), h.clone());
        prop_assert!(is_convex(&d, &h).holds);
        for k in 1..=d.diameter() {
            prop_assert!(is_k_convex(&d, &h, k).holds);
        }
    }

    #[test]
    fn joint_ball_monotonicity(d in oracle(12), a in any::<u64>(), b in any::<u64>(), k in 0usize..4) {
        let s = subset(d.n(), a | 1);
        let t = s.union(&subset(d.n(), b));
        prop_assert!(d.joint_ball(&t, k).is_subset(&d.joint_ball(&s, k)));
        prop_assert!(d.joint_ball(&s, k).is_subset(&d.joint_ball(&s, k + 1)));
    }

    #[test]
    fn recognizers_agree(d in oracle(12)) {
        let verdicts = recognize_all(&d);
        prop_assert!(verdicts.iter().all(|v| v.is_cb == verdicts[0].is_cb));
        prop_assert_eq!(has_convex_balls(&d).holds, has_k_convex_balls(&d, 3).holds);
        prop_assert_eq!(has_convex_balls(&d).holds, has_convex_balls_exhaustive(&d).holds);
        prop_assert_eq!(recognize_structural(&d).forbidden.is_empty(), has_convex_balls(&d).holds);
        let two = has_k_convex_balls(&d, 2).holds;
        prop_assert_eq!(two, global_check(&d, ConditionId::INC, None).holds);
        prop_assert_eq!(two, global_check(&d, ConditionId::INCPlus, None).holds);
    }

    #[test]
    fn full_balls_are_convex(d in oracle(12)) {
        let r = d.diameter();
        for v in 0..d.n() {
            prop_assert!(is_convex(&d, &d.ball(v, r)).holds);
        }
    }

    #[test]
    fn condition_variants_are_nested(d in oracle(10)) {
        for v in 0..d.n() {
            for u in (0..d.n()).filter(|&u| u != v) {
                let inc = |var| check_inc(&d, var, u, v).unwrap();
                prop_assert!(!inc(IncVariant::INCPlus) || inc(IncVariant::INC));
                prop_assert!(!inc(IncVariant::INC) || inc(IncVariant::INC0));
            }
            for (x, y) in d.graph().edges() {
                if d.d(v, x) != d.d(v, y) || d.d(v, x) < 2 {
                    continue;
                }
                let pc = |var| check_pc(&d, var, v, x, y).unwrap();
                prop_assert!(!pc(PcVariant::PCPlus) || pc(PcVariant::PC1));
                prop_assert!(!pc(PcVariant::PC1) || pc(PcVariant::PC0));
            }
        }
    }

    #[test]
    fn pc2_matches_pc1_where_tc_fails(d in cb_oracle(11)) {
        for v in 0..d.n() {
            for (x, y) in d.graph().edges() {
                if d.d(v, x) != d.d(v, y) || d.d(v, x) < 2 || check_tc(&d, v, x, y).unwrap() {
                    continue;
                }
                for (a, b) in [(x, y), (y, x)] {
                    prop_assert_eq!(
                        check_pc(&d, PcVariant::PC2, v, a, b).unwrap(),
                        check_pc(&d, PcVariant::PC1, v, a, b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn intersecting_pentagons_in_cb_graphs(d in cb_oracle(11)) {
        let ps = enumerate_pentagons(d.graph());
        for (i, p) in ps.iter().enumerate() {
            for q in &ps[i + 1..] {
                if p.iter().filter(|x| q.contains(x)).count() >= 2 {
                    prop_assert_ne!(analyze_pentagon_pair(&d, p, q).unwrap(), PentagonPairClass::Neither);
                }
            }
        }
    }

    #[test]
    fn metric_triangle_shapes(d in cb_oracle(12)) {
        for t in enumerate_metric_triangles(&d) {
            let [a, b, c] = t.vertices();
            for (u, v, w) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                if d.d(u, v) < d.d(u, w) {
                    continue;
                }
                prop_assert!(d.d(u, v) <= d.d(u, w) + 1);
                for x in d.interval(v, w).iter() {
                    prop_assert!(d.d(u, w) <= d.d(u, x) && d.d(u, x) <= d.d(u, v));
                }
            }
        }
    }

    #[test]
    fn quasi_medians_concatenate(d in oracle(12), x in 0usize..12, y in 0usize..12, z in 0usize..12) {
        let (x, y, z) = (x % d.n(), y % d.n(), z % d.n());
        prop_assert!(is_quasi_median_of(&d, &quasi_median(&d, x, y, z), x, y, z));
    }

    #[test]
    fn normal_vertex_paths_are_geodesics(d in cb_oracle(12), seed in any::<u64>()) {
        for u in 0..d.n() {
            for v in 0..d.n() {
                let p = normal_vertex_path(&d, u, v, seed).unwrap();
                prop_assert_eq!(p.len(), d.d(u, v) + 1);
                for (i, &x) in p.iter().enumerate() {
                    prop_assert!(d.d(u, x) == i && d.in_interval(u, x, v));
                }
            }
        }
    }

    #[test]
    fn fftp_on_random_walks(d in cb_oracle(12), steps in prop::collection::vec(any::<usize>(), 2..10), start in any::<usize>()) {
        let mut w = vec![start % d.n()];
        for s in steps {
            let nb = d.graph().neighbors(*w.last().unwrap());
            w.push(nb[s % nb.len()]);
        }
        if d.d(w[0], w[w.len() - 1]) < w.len() - 1 {
            let s = fftp_shorten(&d, &w).unwrap();
            prop_assert!(s.len() < w.len());
            prop_assert_eq!((s[0], s[s.len() - 1]), (w[0], w[w.len() - 1]));
            prop_assert!(async_fellow_k(&d, &w, &s) <= 2);
        }
    }

    #[test]
    fn squares_and_higher_powers_dismantle(d in cb_oracle(12), seed in 0u64..1000) {
        let g = d.graph();
        let powers: Vec<Graph> = (2..=4).map(|p| power_graph(g, p)).collect();
        for base in 0..g.n() {
            let o = bfs_order(g, base, seed);
            prop_assert!(o.is_valid(&d));
            for h in &powers {
                prop_assert_eq!(verify_dismantling(h, &o.order, 1), None);
            }
        }
    }

    #[test]
    fn cores_of_cb_graphs_are_cb(d in cb_oracle(12)) {
        let core = compute_core(d.graph());
        let (h, _) = d.graph().induced(&core);
        prop_assert!(is_cb(&all_pairs_distances(&h).unwrap()));
    }

    #[test]
    fn exchange_step_preserves_independence(d in cb_oracle(9), pick in any::<u64>()) {
        let sets: Vec<VertexSet> = maximal_h_independent_sets(&d).into_iter().filter(|a| a.len() >= 2).collect();
        prop_assume!(!sets.is_empty());
        let a = &sets[pick as usize % sets.len()];
        let m = a.to_vec();
        for &u in &m {
            for &v in m.iter().filter(|&&v| v != u) {
                for x in d.interval(u, v).iter() {
                    if let Some(b) = exchange(&d, a, u, v, x) {
                        prop_assert!(x == v || b.len() == a.len());
                        prop_assert!(is_h_independent(&d, &b));
                    }
                }
            }
        }
    }

    #[test]
    fn reductions_decrease_potential(d in cb_oracle(10)) {
        for a in maximal_h_independent_sets(&d) {
            let r = reduce_h_independent(&d, &a).unwrap();
            prop_assert!(r.steps.windows(2).all(|w| w[1].1 < w[0].1));
            prop_assert_eq!(r.steps[0].1, potential(&d, &a));
            prop_assert!(d.set_diameter(&r.result) <= 2);
        }
        let c = helly_number(&d, 8);
        prop_assert_eq!(c.h, c.h2);
    }

    #[test]
    fn cb_complexes_are_simply_connected(d in cb_oracle(9)) {
        prop_assert_eq!(h1_rank_gf2(&build_complex(d.graph())), 0);
        prop_assert!(has_k_convex_balls(&d, 3).holds);
        for c in simple_cycles(d.graph(), 2 * d.diameter() + 2) {
            for base in 0..d.n() {
                prop_assert_eq!(contract_cycle(&d, &c, base), Contraction::Constant);
            }
        }
    }

    #[test]
    fn covers_of_cb_graphs_reproduce(d in cb_oracle(12), base in any::<usize>(), radius in 0usize..5) {
        let base = base % d.n();
        let st = build_universal_cover(d.graph(), base, radius, true).unwrap();
        prop_assert!(reproduces(&st, &d));
    }
}

#[test]
fn powers_of_powers_on_cycles() {
    for n in 3..=14 {
        let c = cycle(n);
        let diam = n / 2;
        for p in 1..=4 {
            for q in 1..=4 {
                let lhs = power_graph(&power_graph(&c, p), q);
                let rhs = power_graph(&c, (p * q).min(diam));
                assert_eq!(lhs.edges().collect::<Vec<_>>(), rhs.edges().collect::<Vec<_>>(), "C{n} p={p} q={q}");
            }
        }
    }
}
