//! Seeded randomized self-check of the solvers against the brute-force oracle.

use serde_json::{json, Value};
use stabilize_core::fractional::check_optimal_pair;
use stabilize_core::gen::{self, GraphSpec};
use stabilize_core::io::{emit_instance, Instance};
use stabilize_core::lp::solve_fractional;
use stabilize_core::m_stabilizer::m_vertex_stabilizer;
use stabilize_core::oracle::{self, OracleBudget};
use stabilize_core::par::Execution;
use stabilize_core::stabilizers::min_vertex_stabilizer;
use stabilize_core::{Matching, WeightedGraph};

fn one(g: &WeightedGraph, m: &Matching) -> stabilize_core::Result<Vec<&'static str>> {
    let b = OracleBudget::default();
    let mut bad = Vec::new();
    let (x, y) = solve_fractional(g);
    if check_optimal_pair(g, &x, &y).is_err() || y.total() != oracle::exact_nu_f(g, &b)? {
        bad.push("fractional optimum");
    }
    let vs = min_vertex_stabilizer(g);
    if vs.gamma() != oracle::brute_gamma(g, &b)? {
        bad.push("gamma");
    }
    let best = oracle::brute_min_vertex_stabilizer(g, &b, Execution::Sequential)?;
    if vs.removed.len() != best.len() || !oracle::is_stable(&vs.residual.graph, &b)? {
        bad.push("vertex stabilizer");
    }
    let r = m_vertex_stabilizer(g, m)?;
    let opt = oracle::brute_min_m_stabilizer(g, m, &b, Execution::Sequential)?;
    let ok = match (r.removed(), opt) {
        (None, None) => true,
        (Some(s), Some(o)) => s.len() <= 2 * o.len() && oracle::is_m_stabilizer(g, m, s, &b)?,
        _ => false,
    };
    if !ok {
        bad.push("M-vertex-stabilizer");
    }
    Ok(bad)
}

pub fn run(seed: u64, count: usize, exec: Execution) -> (Value, bool) {
    let graphs = gen::random_graphs(seed, count, &GraphSpec::integer_weights(2, 7, 1, 5));
    let mut r = gen::rng(seed ^ 0x5e1f);
    let items: Vec<(WeightedGraph, Matching)> = graphs
        .into_iter()
        .map(|g| {
            let m = gen::random_matching(&mut r, &g, 0.6);
            (g, m)
        })
        .collect();
    let results = exec.map(&items, |(g, m)| one(g, m));
    let mut failures = Vec::new();
    for ((g, m), res) in items.iter().zip(results) {
        let checks: Vec<String> = match res {
            Ok(bad) => bad.into_iter().map(String::from).collect(),
            Err(e) => vec![e.to_string()],
        };
        if !checks.is_empty() {
            let inst = Instance { graph: g.clone(), matching: Some(m.clone()) };
            let instance: Value = serde_json::from_str(&emit_instance(&inst)).expect("emitted JSON parses");
            failures.push(json!({"failed": checks, "instance": instance}));
        }
    }
    let ok = failures.is_empty();
    (json!({"command": "selftest", "seed": seed, "cases": count, "failures": failures}), ok)
}
