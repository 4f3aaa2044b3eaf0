//! Property tests over small random graphs.

mod common;

use proptest::prelude::*;

use common::{budget, check_walks_one};
use stabilize_core::cycles::reduce_cycles;
use stabilize_core::fractional::{check_optimal_pair, decompose, BasicFractionalMatching};
use stabilize_core::gen;
use stabilize_core::io::{emit_instance, instance_hash, parse_instance, Instance};
use stabilize_core::lp::solve_fractional;
use stabilize_core::oracle;
use stabilize_core::stabilizers::min_vertex_stabilizer;
use stabilize_core::walk_dp::{decompose_walk, optimal_walks, Table};
use stabilize_core::{Matching, Rational, WeightedGraph};

/// Graphs on `1..=max_n` vertices; each pair is absent or carries weight
/// `num/den` with `num` in `1..=6`.
fn graphs(max_n: usize, den: i128) -> impl Strategy<Value = WeightedGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::option::weighted(0.55, 1..=6i128), n * (n - 1) / 2).prop_map(
            move |ws| {
                let mut g = WeightedGraph::new(n);
                let mut it = ws.into_iter();
                for u in 0..n {
                    for v in u + 1..n {
                        if let Some(w) = it.next().unwrap() {
                            g.add_edge(u, v, Rational::new(w, den)).unwrap();
                        }
                    }
                }
                g
            },
        )
    })
}

fn with_matching(max_n: usize) -> impl Strategy<Value = (WeightedGraph, Matching)> {
    (graphs(max_n, 1), any::<u64>(), 0.0..1.0f64).prop_map(|(g, seed, keep)| {
        let m = gen::random_matching(&mut gen::rng(seed), &g, keep);
        (g, m)
    })
}

/// Edge sets of the connected components of the support of `x + z`.
fn components(g: &WeightedGraph, x: &BasicFractionalMatching, z: &BasicFractionalMatching) -> Vec<Vec<usize>> {
    let support: Vec<usize> = (0..g.num_edges())
        .filter(|&e| !(x.value(e) + z.value(e)).is_zero())
        .collect();
    let mut label: Vec<usize> = (0..g.num_vertices()).collect();
    loop {
        let mut changed = false;
        for &e in &support {
            let (u, v) = (g.edge(e).u, g.edge(e).v);
            let m = label[u].min(label[v]);
            if label[u] != m || label[v] != m {
                label[u] = m;
                label[v] = m;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut roots: Vec<usize> = support.iter().map(|&e| label[g.edge(e).u]).collect();
    roots.sort_unstable();
    roots.dedup();
    roots
        .into_iter()
        .map(|r| support.iter().copied().filter(|&e| label[g.edge(e).u] == r).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lp_pair_is_optimal_and_basic(g in graphs(7, 2)) {
        let (x, y) = solve_fractional(&g);
        prop_assert_eq!(check_optimal_pair(&g, &x, &y), Ok(()));
        prop_assert_eq!(decompose(x.values(), &g).unwrap(), x.clone());
        prop_assert!(x.values().iter().all(|v| [Rational::ZERO, Rational::HALF, Rational::ONE].contains(v)));
        prop_assert_eq!(x.weight(&g), oracle::exact_nu_f(&g, &budget()).unwrap());
    }

    #[test]
    fn integral_and_fractional_values_sandwich(g in graphs(7, 1)) {
        let (nu, m) = oracle::exact_nu(&g, &budget()).unwrap();
        let nu_f = solve_fractional(&g).1.total();
        prop_assert_eq!(m.weight(&g), nu);
        prop_assert!(nu <= nu_f);
        prop_assert!(nu_f * Rational::from(2) <= nu * Rational::from(3));
    }

    #[test]
    fn switching_components_stays_basic(g in graphs(7, 1)) {
        let (x, _) = solve_fractional(&g);
        let z = BasicFractionalMatching::from_matching(&g, &oracle::exact_nu(&g, &budget()).unwrap().1);
        let mut all = x.clone();
        for comp in components(&g, &x, &z) {
            let s = x.switch(&g, &z, &comp).unwrap();
            prop_assert_eq!(decompose(s.values(), &g).unwrap(), s.clone());
            for e in 0..g.num_edges() {
                let want = if comp.contains(&e) { z.value(e) } else { x.value(e) };
                prop_assert_eq!(s.value(e), want);
            }
            all = all.switch(&g, &z, &comp).unwrap();
        }
        prop_assert_eq!(all.values(), z.values());
    }

    #[test]
    fn cycle_reduction_reaches_gamma(g in graphs(7, 1)) {
        let red = reduce_cycles(&g);
        prop_assert_eq!(check_optimal_pair(&g, &red.x, &red.y), Ok(()));
        prop_assert_eq!(red.gamma, red.x.num_cycles());
        prop_assert_eq!(red.gamma, oracle::brute_gamma(&g, &budget()).unwrap());
    }

    #[test]
    fn vertex_stabilizer_residual_is_stable(g in graphs(7, 1)) {
        let r = min_vertex_stabilizer(&g);
        prop_assert_eq!(r.removed.len(), r.gamma());
        prop_assert!(oracle::is_stable(&r.residual.graph, &budget()).unwrap());
        prop_assert_eq!(r.nu_after, r.cover.total());
        prop_assert_eq!(r.matching.weight(&r.residual.graph), r.nu_after);
    }

    #[test]
    fn walk_tables_match_enumeration((g, m) in with_matching(6), k in 0usize..7) {
        for s in 0..g.num_vertices() {
            if let Err(e) = check_walks_one(&g, &m, s, k, true) {
                return Err(TestCaseError::fail(e));
            }
        }
    }

    #[test]
    fn walk_tables_are_monotone((g, m) in with_matching(7), s in 0usize..7) {
        let s = s % g.num_vertices();
        let t = optimal_walks(&g, &m, s, 8);
        for i in 1..=8 {
            for v in 0..g.num_vertices() {
                for table in [Table::One, Table::Two] {
                    prop_assert!(t.at(table, i, v) >= t.at(table, i - 1, v));
                }
            }
        }
    }

    #[test]
    fn walk_pieces_are_paths_or_cycles(seq in proptest::collection::vec(0usize..5, 1..14)) {
        let pieces = decompose_walk(&seq);
        for p in &pieces {
            let closed = p.len() > 1 && p.first() == p.last();
            let body = if closed { &p[..p.len() - 1] } else { &p[..] };
            let mut seen = body.to_vec();
            seen.sort_unstable();
            seen.dedup();
            prop_assert_eq!(seen.len(), body.len(), "piece {:?} of {:?} repeats a vertex", p, seq);
        }
        let mut joined = vec![seq[0]];
        for p in &pieces {
            prop_assert_eq!(p[0], *joined.last().unwrap());
            joined.extend_from_slice(&p[1..]);
        }
        prop_assert_eq!(joined, seq);
    }

    #[test]
    fn instance_round_trip((g, m) in with_matching(7), den in 1i128..5) {
        let mut h = WeightedGraph::with_labels((0..g.num_vertices()).map(|v| format!("v{v}")).collect()).unwrap();
        for e in g.edges() {
            h.add_edge(e.u, e.v, e.weight * Rational::new(1, den)).unwrap();
        }
        let m = Matching::new(&h, m.edges()).unwrap();
        let inst = Instance { graph: h, matching: Some(m) };
        let text = emit_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(instance_hash(&back), instance_hash(&inst));
    }
}
