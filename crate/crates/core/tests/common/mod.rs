//! Cross-checks of the polynomial algorithms against the brute-force oracle,
//! shared by the property suites and the acceptance run. Each check returns
//! the number of cases it examined, or a description of the first mismatch.

#![allow(dead_code)]

use stabilize_core::cycles::{reduce_cycles, reduce_cycles_from};
use stabilize_core::fractional::{check_optimal_pair, decompose};
use stabilize_core::gen::{self, GraphSpec};
use stabilize_core::graph::{Matching, WeightedGraph};
use stabilize_core::lp::solve_fractional;
use stabilize_core::m_stabilizer::{m_vertex_stabilizer, m_vertex_stabilizer_ordered, MStatus, Order};
use stabilize_core::oracle::{self, OracleBudget};
use stabilize_core::par::Execution;
use stabilize_core::stabilizers::{edge_stabilizer_approx, min_vertex_stabilizer};
use stabilize_core::walk::walk_value;
use stabilize_core::walk_dp::{extract_structure, optimal_walks, reconstruct_walk, AugmentingStructure, Extended, Table};
use stabilize_core::{BasicFractionalMatching, Rational};

pub type Check = Result<usize, String>;

pub const SEED: u64 = 0x5eed_2024;

pub fn budget() -> OracleBudget {
    OracleBudget::default()
}

/// 200 graphs with weights 1..5 followed by 60 unit-weight graphs, all with
/// at most 8 vertices.
pub fn random_suite(seed: u64) -> Vec<WeightedGraph> {
    let mut gs = gen::random_graphs(seed, 200, &GraphSpec::integer_weights(2, 8, 1, 5));
    gs.extend(gen::random_graphs(seed ^ 0xba1a5, 60, &GraphSpec::unit_weights(2, 8)));
    gs
}

fn describe(g: &WeightedGraph) -> String {
    let edges: Vec<String> = g
        .edges()
        .iter()
        .map(|e| format!("{}-{}:{}", e.u, e.v, e.weight))
        .collect();
    format!("n={} [{}]", g.num_vertices(), edges.join(", "))
}

fn all_ok(results: Vec<Check>) -> Check {
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(total)
}

/// Cycle count equals brute-force γ, weight equals ν_f, and every
/// intermediate solution is basic and complementary-slack with the fixed y.
/// Besides the solver's own starting point, the reduction is restarted from
/// up to `starts` basic optima enumerated by the oracle, so that surplus
/// cycles actually occur.
pub fn check_cycle_reduction(graphs: &[WeightedGraph], starts: usize) -> Check {
    all_ok(Execution::Parallel.map(graphs, |g| {
        let b = budget();
        let gamma = oracle::brute_gamma(g, &b).map_err(|e| e.to_string())?;
        let nu_f = oracle::exact_nu_f(g, &b).map_err(|e| e.to_string())?;
        let mut runs = vec![reduce_cycles(g)];
        let y = runs[0].y.clone();
        for x0 in oracle::basic_optima(g, &b, starts).map_err(|e| e.to_string())? {
            runs.push(reduce_cycles_from(g, x0, y.clone()).map_err(|e| format!("{e} on {}", describe(g)))?);
        }
        for red in &runs {
            if red.gamma != gamma {
                return Err(format!("gamma {} != brute {} on {}", red.gamma, gamma, describe(g)));
            }
            if red.x.weight(g) != nu_f || red.y.total() != nu_f {
                return Err(format!("weight {} != nu_f {} on {}", red.x.weight(g), nu_f, describe(g)));
            }
            let mut cycles = red.initial_cycles;
            for ev in &red.events {
                let basic =
                    decompose(ev.result.values(), g).map_err(|e| format!("not basic: {e} on {}", describe(g)))?;
                check_optimal_pair(g, &basic, &red.y).map_err(|e| format!("{e} on {}", describe(g)))?;
                let drop = cycles - ev.result.num_cycles().min(cycles);
                if !(drop == 1 || drop == 2) || ev.result.weight(g) != nu_f {
                    return Err(format!("bad step ({cycles} -> {}) on {}", ev.result.num_cycles(), describe(g)));
                }
                cycles = ev.result.num_cycles();
            }
            check_optimal_pair(g, &red.x, &red.y).map_err(|e| e.to_string())?;
        }
        Ok(runs.len())
    }))
}

/// `|S|` equals the brute-force minimum, `G \ S` is stable, and
/// `ν(G \ S) ≥ 2/3 ν(G)`.
pub fn check_vertex_stabilizers(graphs: &[WeightedGraph]) -> Check {
    all_ok(Execution::Parallel.map(graphs, |g| {
        let r = min_vertex_stabilizer(g);
        let b = budget();
        let best = oracle::brute_min_vertex_stabilizer(g, &b, Execution::Sequential).map_err(|e| e.to_string())?;
        if r.removed.len() != best.len() {
            return Err(format!("|S| = {} but optimum {} on {}", r.removed.len(), best.len(), describe(g)));
        }
        let rest = &r.residual.graph;
        if !oracle::is_stable(rest, &b).map_err(|e| e.to_string())? {
            return Err(format!("G\\S unstable on {}", describe(g)));
        }
        let (nu_after, _) = oracle::exact_nu(rest, &b).map_err(|e| e.to_string())?;
        let (nu, _) = oracle::exact_nu(g, &b).map_err(|e| e.to_string())?;
        if nu_after != r.nu_after || r.nu_before != Some(nu) {
            return Err(format!("reported values disagree with oracle on {}", describe(g)));
        }
        if Rational::from(3) * nu_after < Rational::from(2) * nu {
            return Err(format!("nu_after {nu_after} < 2/3 nu {nu} on {}", describe(g)));
        }
        check_optimal_pair(rest, &BasicFractionalMatching::from_matching(rest, &r.matching), &r.cover)
            .map_err(|e| e.to_string())?;
        Ok(1)
    }))
}

/// `⌈γ/2⌉ ≤` brute minimum edge-stabilizer `≤ |F| ≤ γΔ`, and `G \ F` stable.
pub fn check_edge_stabilizers(graphs: &[WeightedGraph]) -> Check {
    all_ok(Execution::Parallel.map(graphs, |g| {
        let r = edge_stabilizer_approx(g);
        let b = budget();
        let best = oracle::brute_min_edge_stabilizer(g, &b, Execution::Sequential).map_err(|e| e.to_string())?;
        if !(r.lower_bound <= best.len() && best.len() <= r.removed.len() && r.removed.len() <= r.upper_bound) {
            return Err(format!(
                "sandwich {} <= {} <= {} <= {} fails on {}",
                r.lower_bound,
                best.len(),
                r.removed.len(),
                r.upper_bound,
                describe(g)
            ));
        }
        if !oracle::is_stable(&r.residual, &b).map_err(|e| e.to_string())? {
            return Err(format!("G\\F unstable on {}", describe(g)));
        }
        Ok(1)
    }))
}

/// `γ(G \ v) ≥ γ(G) - 1` and `γ(G \ e) ≥ γ(G) - 2`, all by brute force.
pub fn check_gamma_monotonicity(graphs: &[WeightedGraph]) -> Check {
    all_ok(Execution::Parallel.map(graphs, |g| {
        let b = budget();
        let gamma = oracle::brute_gamma(g, &b).map_err(|e| e.to_string())? as i64;
        let mut cases = 0;
        for v in 0..g.num_vertices() {
            let gv = oracle::brute_gamma(&g.without_vertices(&[v]).graph, &b).map_err(|e| e.to_string())? as i64;
            if gv < gamma - 1 {
                return Err(format!("gamma(G\\{v}) = {gv} < {gamma} - 1 on {}", describe(g)));
            }
            cases += 1;
        }
        for e in 0..g.num_edges() {
            let ge = oracle::brute_gamma(&g.without_edges(&[e]).0, &b).map_err(|e| e.to_string())? as i64;
            if ge < gamma - 2 {
                return Err(format!("gamma(G\\e{e}) = {ge} < {gamma} - 2 on {}", describe(g)));
            }
            cases += 1;
        }
        Ok(cases)
    }))
}

/// Every matching of `g` (including the empty one), in a fixed order.
pub fn all_matchings(g: &WeightedGraph) -> Vec<Matching> {
    fn go(g: &WeightedGraph, e: usize, used: u32, cur: &mut Vec<usize>, out: &mut Vec<Matching>) {
        if e == g.num_edges() {
            out.push(Matching::new(g, cur.iter().copied()).unwrap());
            return;
        }
        go(g, e + 1, used, cur, out);
        let edge = g.edge(e);
        let mask = (1u32 << edge.u) | (1u32 << edge.v);
        if used & mask == 0 {
            cur.push(e);
            go(g, e + 1, used | mask, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(g, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// Walk tables against enumeration for one (graph, matching, source): every
/// round `i ≤ k` must match the best valid walk of length at most `i`, and
/// every finite final entry must reconstruct to a walk of that value.
pub fn check_walks_one(g: &WeightedGraph, m: &Matching, s: usize, k: usize, reconstruct: bool) -> Check {
    let t = optimal_walks(g, m, s, k);
    let by_len = oracle::best_walk_values_by_length(g, m, s, k, &budget()).map_err(|e| e.to_string())?;
    let upto = oracle::prefix_max(&by_len);
    for (i, row) in upto.iter().enumerate() {
        for v in 0..g.num_vertices() {
            let table = if m.is_exposed(v) { Table::One } else { Table::Two };
            let got = t.at(table, i, v);
            let want = Extended::from(row[v]);
            if got != want {
                return Err(format!(
                    "source {s}, k={i}, vertex {v}: table {got} vs enumeration {want}; matching {:?} on {}",
                    m.edges().collect::<Vec<_>>(),
                    describe(g)
                ));
            }
        }
    }
    if reconstruct {
        for v in 0..g.num_vertices() {
            let table = if m.is_exposed(v) { Table::One } else { Table::Two };
            let Some(val) = t.get(table, v).finite() else { continue };
            let w = reconstruct_walk(&t, g, m, v, table).map_err(|e| e.to_string())?;
            let wv = walk_value(&w, g, m).map_err(|e| e.to_string())?;
            if wv != val || !w.is_valid(m) || w.len() > k || w.start() != s || w.end() != v {
                return Err(format!("reconstruction of ({s},{v}) wrong on {}", describe(g)));
            }
            if val.is_positive() {
                check_extraction(g, m, &w)?;
            }
        }
    }
    Ok(1)
}

/// An augmenting walk must yield a well-formed augmenting structure at its
/// ends (or a cycle/bi-cycle anywhere).
pub fn check_extraction(g: &WeightedGraph, m: &Matching, w: &stabilize_core::walk::AlternatingWalk) -> Check {
    let st = extract_structure(g, m, w).ok_or_else(|| format!("no structure in walk {:?} on {}", w.vertices(), describe(g)))?;
    if !st.is_well_formed(g, m) || !st.value(g, m).is_positive() {
        return Err(format!("bad structure {st:?} from walk {:?} on {}", w.vertices(), describe(g)));
    }
    let ends = [w.start(), w.end()];
    let ok = match &st {
        AugmentingStructure::Path(p) => {
            let mut pe = [p[0], *p.last().unwrap()];
            let mut we = ends;
            pe.sort_unstable();
            we.sort_unstable();
            pe == we
        }
        AugmentingStructure::Flower { stem, .. } => ends.contains(stem.last().unwrap()),
        _ => true,
    };
    if !ok {
        return Err(format!("structure {st:?} not anchored at walk ends on {}", describe(g)));
    }
    Ok(1)
}

/// Exhaustive: every graph on at most `max_n` labelled vertices, every
/// weighting from `weights`, every matching, every source, all `k ≤ max_k`.
pub fn check_walks_exhaustive(max_n: usize, weights: &[i64], max_k: usize) -> Check {
    let mut total = 0;
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let subsets: Vec<u32> = (0..1u32 << pairs.len()).collect();
        total += all_ok(Execution::Parallel.map(&subsets, |&mask| {
            let chosen: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &p)| p)
                .collect();
            let combos = weights.len().pow(chosen.len() as u32);
            let mut cases = 0;
            for c in 0..combos {
                let mut rest = c;
                let mut edges = Vec::with_capacity(chosen.len());
                for &(u, v) in &chosen {
                    edges.push((u, v, Rational::from(weights[rest % weights.len()])));
                    rest /= weights.len();
                }
                let g = WeightedGraph::from_edges(n, &edges).unwrap();
                for m in all_matchings(&g) {
                    for s in 0..n {
                        // reconstruction is independent of the weighting's details;
                        // do it on the first weighting of each shape
                        cases += check_walks_one(&g, &m, s, max_k, c == 0 || c + 1 == combos)?;
                    }
                }
            }
            Ok(cases)
        }))?;
    }
    Ok(total)
}

/// Random graphs with up to `max_n` vertices, random matchings, all sources.
pub fn check_walks_random(seed: u64, count: usize, max_n: usize, max_k: usize) -> Check {
    let graphs = gen::random_graphs(seed, count, &GraphSpec::integer_weights(2, max_n, 1, 5));
    let mut r = gen::rng(seed ^ 0x3a1c);
    let matchings: Vec<Matching> = graphs.iter().map(|g| gen::random_matching(&mut r, g, 0.6)).collect();
    let items: Vec<(WeightedGraph, Matching)> = graphs.into_iter().zip(matchings).collect();
    all_ok(Execution::Parallel.map(&items, |(g, m)| {
        let mut cases = 0;
        for s in 0..g.num_vertices() {
            cases += check_walks_one(g, m, s, max_k, true)?;
        }
        Ok(cases)
    }))
}

/// Random (graph, matching) pairs on at most 7 vertices. Some matchings are
/// maximum-weight matchings so that the exact case is exercised.
pub fn m_stabilizer_instances(seed: u64, count: usize) -> Vec<(WeightedGraph, Matching)> {
    let graphs = gen::random_graphs(seed, count, &GraphSpec::integer_weights(2, 7, 1, 5));
    let mut r = gen::rng(seed ^ 0x77);
    graphs
        .into_iter()
        .enumerate()
        .map(|(i, g)| {
            let m = if i % 3 == 0 {
                oracle::exact_nu(&g, &budget()).unwrap().1
            } else {
                gen::random_matching(&mut r, &g, 0.5 + 0.1 * (i % 5) as f64)
            };
            (g, m)
        })
        .collect()
}

#[derive(Debug, Default, Clone, Copy)]
pub struct MStats {
    pub feasible: usize,
    pub infeasible: usize,
    pub exact: usize,
}

/// Infeasible iff the oracle finds nothing; on success `|S| ≤ 2·OPT`, equal
/// when nothing was removed in pairs, and the oracle certifies the result.
pub fn check_m_stabilizers(items: &[(WeightedGraph, Matching)]) -> Result<MStats, String> {
    let results = Execution::Parallel.map(items, |(g, m)| -> Result<MStats, String> {
        let b = budget();
        let r = m_vertex_stabilizer(g, m).map_err(|e| e.to_string())?;
        let best = oracle::brute_min_m_stabilizer(g, m, &b, Execution::Sequential).map_err(|e| e.to_string())?;
        let mut st = MStats::default();
        match (&r.status, best) {
            (MStatus::Infeasible, None) => st.infeasible += 1,
            (MStatus::Infeasible, Some(opt)) => {
                return Err(format!("reported infeasible but {opt:?} works on {}", describe(g)))
            }
            (MStatus::Feasible { .. }, None) => {
                return Err(format!("reported feasible but oracle finds none on {}", describe(g)))
            }
            (MStatus::Feasible { removed, s1, s2 }, Some(opt)) => {
                st.feasible += 1;
                if !oracle::is_m_stabilizer(g, m, removed, &b).map_err(|e| e.to_string())? {
                    return Err(format!("{removed:?} is not an M-stabilizer on {}", describe(g)));
                }
                if removed.len() > 2 * opt.len() {
                    return Err(format!("|S| = {} > 2 * {} on {}", removed.len(), opt.len(), describe(g)));
                }
                if s2.is_empty() {
                    st.exact += 1;
                    if removed.len() != opt.len() {
                        return Err(format!("S2 empty but |S| = {} != {} on {}", removed.len(), opt.len(), describe(g)));
                    }
                }
                let other = m_vertex_stabilizer_ordered(g, m, Order::Descending).map_err(|e| e.to_string())?;
                if let MStatus::Feasible { s1: s1_desc, .. } = &other.status {
                    let (mut a, mut b) = (s1.clone(), s1_desc.clone());
                    a.sort_unstable();
                    b.sort_unstable();
                    if a != b {
                        return Err(format!("S1 depends on order: {a:?} vs {b:?} on {}", describe(g)));
                    }
                } else {
                    return Err(format!("descending order infeasible on {}", describe(g)));
                }
                for d in &r.diagnostics {
                    let w = match d {
                        stabilize_core::m_stabilizer::Removal::Flower { walk, .. }
                        | stabilize_core::m_stabilizer::Removal::PathToCovered { walk, .. }
                        | stabilize_core::m_stabilizer::Removal::PathToExposed { walk, .. } => walk,
                    };
                    if !walk_value(w, g, m).map_err(|e| e.to_string())?.is_positive() {
                        return Err(format!("diagnostic walk not augmenting on {}", describe(g)));
                    }
                }
            }
        }
        Ok(st)
    });
    let mut total = MStats::default();
    for r in results {
        let r = r?;
        total.feasible += r.feasible;
        total.infeasible += r.infeasible;
        total.exact += r.exact;
    }
    Ok(total)
}

/// Every optimal pair produced by the solvers is complementary-slack with
/// equal objective values.
pub fn check_duality(graphs: &[WeightedGraph]) -> Check {
    all_ok(Execution::Parallel.map(graphs, |g| {
        let (x, y) = solve_fractional(g);
        check_optimal_pair(g, &x, &y).map_err(|e| format!("{e} on {}", describe(g)))?;
        if x.weight(g) != y.total() {
            return Err(format!("w.x != sum y on {}", describe(g)));
        }
        let red = reduce_cycles(g);
        check_optimal_pair(g, &red.x, &red.y).map_err(|e| format!("{e} on {}", describe(g)))?;
        for ev in &red.events {
            check_optimal_pair(g, &ev.result, &red.y).map_err(|e| format!("{e} on {}", describe(g)))?;
        }
        let vs = min_vertex_stabilizer(g);
        let rest = &vs.residual.graph;
        let xm = BasicFractionalMatching::from_matching(rest, &vs.matching);
        check_optimal_pair(rest, &xm, &vs.cover).map_err(|e| format!("{e} on {}", describe(g)))?;
        let es = edge_stabilizer_approx(g);
        let xe = BasicFractionalMatching::from_matching(&es.residual, &es.matching);
        check_optimal_pair(&es.residual, &xe, &es.cover).map_err(|e| format!("{e} on {}", describe(g)))?;
        Ok(5 + red.events.len())
    }))
}
