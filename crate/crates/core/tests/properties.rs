//! Property tests for the invariants of allocation, matroids, graphs,
//! exact LP duality, serialization and determinism.

mod common;

use common::*;
use dualcore::games::{
    allocate_top_down, equivalence_audit, satisfaction, solve_dual_core, GameInstance, SatisfactionImputation,
};
use dualcore::graphs::{enumerate_maximal_cliques, max_weight_clique, max_weight_stable_set, Graph, WeightedGraph};
use dualcore::io::{emit_instance, parse_instance};
use dualcore::lp::{check_certificates, solve_lp, LinearProgram, LpStatus, RowSense};
use dualcore::matroids::{
    brute_force_max_weight_independent, greedy_max_weight_independent, verify_rank_axioms, AxiomPolicy, WeightedMatroid,
};
use dualcore::{Rational, Scalar, Subset};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn subset(n: usize) -> impl Strategy<Value = Subset> {
    (0..1u64 << n).prop_map(Subset::from_bits)
}

fn satisfaction_imputation(n: usize) -> impl Strategy<Value = SatisfactionImputation<Rational>> {
    prop::collection::btree_map(subset(n).prop_filter("nonempty", |s| !s.is_empty()), (0i64..20, 1i64..5), 0..8)
        .prop_map(|m| SatisfactionImputation::new(m.into_iter().map(|(q, (p, d))| (q, Rational::from_ratio(p, d))).collect()))
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n).unwrap();
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            for ((u, v), on) in pairs.zip(bits) {
                if on {
                    g.add_edge(u, v).unwrap();
                }
            }
            g
        })
    })
}

fn weighted_graph(max_n: usize) -> impl Strategy<Value = WeightedGraph<Rational>> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        prop::collection::vec(0i64..10, n).prop_map(move |w| WeightedGraph::new(g.clone(), w.into_iter().map(r).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn allocation_total_is_satisfaction(y in satisfaction_imputation(6), t in subset(6)) {
        let z = allocate_top_down(&y, t);
        prop_assert_eq!(z.total(), satisfaction(&y, t));
        prop_assert!(z.sub_support.keys().all(|q| !q.is_empty() && q.is_subset(t)));
    }

    #[test]
    fn singleton_satisfaction_sums_objects_containing_it(y in satisfaction_imputation(6), i in 0usize..6) {
        let expected = y.support.iter().filter(|(q, _)| q.contains(i)).fold(r(0), |acc, (_, v)| acc + v);
        prop_assert_eq!(satisfaction(&y, Subset::singleton(i)), expected);
    }

    #[test]
    fn satisfaction_is_monotone(y in satisfaction_imputation(6), s in subset(6), extra in subset(6)) {
        prop_assert!(satisfaction(&y, s) <= satisfaction(&y, s.union(extra)));
    }

    #[test]
    fn greedy_matches_brute_force(seed in any::<u64>(), kind in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matroid(&mut rng, MATROID_KINDS[kind], 7);
        let w = int_weights(&mut rng, m.ground_size(), 6);
        let wm = WeightedMatroid::new(m, w).unwrap();
        let (set, greedy) = greedy_max_weight_independent(&wm, AxiomPolicy::Verify { bound: 10 }).unwrap();
        let (_, brute) = brute_force_max_weight_independent(&wm, 10).unwrap();
        prop_assert!(wm.matroid.is_independent(set));
        prop_assert_eq!(wm.weight_of(set), greedy.clone());
        prop_assert_eq!(greedy, brute);
    }

    #[test]
    fn generated_rank_functions_are_submodular(seed in any::<u64>(), kind in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matroid(&mut rng, MATROID_KINDS[kind], 6);
        prop_assert!(verify_rank_axioms(&m, 10).unwrap().ok);
        let ground = m.ground();
        for s in ground.subsets() {
            for t in ground.subsets() {
                let lhs = m.rank(s).unwrap() + m.rank(t).unwrap();
                let rhs = m.rank(s.union(t)).unwrap() + m.rank(s.intersection(t)).unwrap();
                prop_assert!(lhs >= rhs, "r({}) + r({}) < r(union) + r(intersection)", s, t);
            }
        }
    }

    #[test]
    fn complement_is_an_involution(g in graph(9)) {
        let c = g.complement();
        prop_assert_eq!(c.edge_count() + g.edge_count(), g.vertex_count() * g.vertex_count().saturating_sub(1) / 2);
        prop_assert!(c.complement() == g);
    }

    #[test]
    fn maximal_cliques_match_brute_force(g in graph(8)) {
        let all = g.vertices();
        let mut brute: Vec<Subset> = all
            .subsets()
            .filter(|s| !s.is_empty() && g.is_clique(*s))
            .filter(|s| all.difference(*s).iter().all(|v| !g.is_clique(s.with(v))))
            .collect();
        let mut found = enumerate_maximal_cliques(&g);
        brute.sort();
        found.sort();
        prop_assert_eq!(found, brute);
    }

    #[test]
    fn weighted_searches_match_brute_force(wg in weighted_graph(8), t in subset(8)) {
        let t = t.intersection(wg.graph.vertices());
        let (s, v) = max_weight_stable_set(&wg, t);
        prop_assert!(s.is_subset(t) && wg.graph.is_stable(s));
        prop_assert_eq!(v, brute_stable(&wg, t));
        let (c, v) = max_weight_clique(&wg, t);
        prop_assert!(c.is_subset(t) && wg.graph.is_clique(c));
        prop_assert_eq!(v, brute_clique(&wg, t));
    }

    #[test]
    fn packing_programs_close_the_duality_gap(
        rows in prop::collection::vec(prop::collection::vec(0i64..4, 4), 1..5),
        rhs in prop::collection::vec(1i64..9, 5),
        c in prop::collection::vec(-2i64..7, 4),
    ) {
        let mut lp = LinearProgram::maximize(c.iter().map(|&v| r(v)).collect());
        for (row, b) in rows.iter().zip(&rhs) {
            let mut row: Vec<Rational> = row.iter().map(|&v| r(v)).collect();
            row[0] = row[0].clone() + r(1);
            lp.add_dense_row(&row, RowSense::Le, r(*b));
        }
        let sol = solve_lp(&lp).unwrap();
        // only column 0 is guaranteed to be capped by a row
        if sol.status == LpStatus::Optimal {
            prop_assert!(check_certificates(&lp, &sol).unwrap().all_pass());
            prop_assert_eq!(sol.dual_value(&lp), sol.value.clone());
            let float = solve_lp(&LinearProgram {
                direction: lp.direction,
                objective: lp.objective.iter().map(|v| v.to_f64().unwrap()).collect(),
                rows: lp.rows.iter().map(|row| dualcore::lp::Constraint {
                    coeffs: row.coeffs.iter().map(|(j, a)| (*j, a.to_f64().unwrap())).collect(),
                    sense: row.sense,
                    rhs: row.rhs.to_f64().unwrap(),
                }).collect(),
                lower_bounds: vec![0.0; 4],
            }).unwrap();
            prop_assert_eq!(float.status, LpStatus::Optimal);
            prop_assert!((float.value - sol.value.to_f64().unwrap()).abs() < 1e-7);
        } else {
            prop_assert_eq!(sol.status, LpStatus::Unbounded);
        }
    }

    #[test]
    fn solving_is_deterministic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let game = random_assignment(&mut rng, 3, 8);
        prop_assert_eq!(solve_dual_core(&game, 10).unwrap(), solve_dual_core(&game, 10).unwrap());
        prop_assert_eq!(equivalence_audit(&game, 10, seed, 10).unwrap(), equivalence_audit(&game, 10, seed, 10).unwrap());
    }

    #[test]
    fn instances_round_trip(seed in any::<u64>(), which in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let game: GameInstance<Rational> = match which {
            0 => random_assignment(&mut rng, 4, 9),
            1 => {
                let g = random_graph(&mut rng, 6, 0.5);
                stable_game(g, rational_weights(&mut rng, 6))
            }
            2 => GameInstance::Clique(WeightedGraph::new(random_graph(&mut rng, 5, 0.5), rational_weights(&mut rng, 5)).unwrap()),
            _ => {
                let m = random_matroid(&mut rng, MATROID_KINDS[(seed % 4) as usize], 6);
                let w = rational_weights(&mut rng, m.ground_size());
                matroid_game(m, w)
            }
        };
        let text = emit_instance(&game);
        let back: GameInstance<Rational> = parse_instance(text.as_bytes(), 10).unwrap();
        prop_assert_eq!(&back, &game);
        prop_assert_eq!(emit_instance(&back), text);
    }

    #[test]
    fn subsets_print_and_parse(bits in any::<u64>()) {
        let s = Subset::from_bits(bits);
        prop_assert_eq!(s.to_string().parse::<Subset>().unwrap(), s);
    }
}
