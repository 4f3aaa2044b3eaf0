//! Result documents for each command. Values are fraction strings, vertex
//! sets are label lists, edges are label pairs.

use serde_json::{json, Map, Value};
use stabilize_core::cycles::{reduce_cycles, AugmentationCase, AuxNode};
use stabilize_core::io::Instance;
use stabilize_core::lp::solve_fractional;
use stabilize_core::m_stabilizer::{m_vertex_stabilizer, MStatus, Removal};
use stabilize_core::oracle::{self, OracleBudget};
use stabilize_core::par::Execution;
use stabilize_core::stabilizers::{edge_stabilizer_approx, gamma_lower_bounds, min_vertex_stabilizer};
use stabilize_core::walk::AlternatingWalk;
use stabilize_core::{
    BasicFractionalMatching, EdgeId, FractionalVertexCover, Matching, Rational, VertexId, WeightedGraph,
};

pub fn frac(r: Rational) -> Value {
    Value::String(r.to_string())
}

pub fn labels(g: &WeightedGraph, vs: &[VertexId]) -> Value {
    vs.iter().map(|&v| Value::from(g.label(v))).collect()
}

pub fn edge_pairs(g: &WeightedGraph, es: impl IntoIterator<Item = EdgeId>) -> Value {
    es.into_iter()
        .map(|e| {
            let edge = g.edge(e);
            json!([g.label(edge.u), g.label(edge.v)])
        })
        .collect()
}

pub fn cover(g: &WeightedGraph, y: &FractionalVertexCover) -> Value {
    let mut m = Map::new();
    for v in 0..g.num_vertices() {
        m.insert(g.label(v).to_string(), frac(y.get(v)));
    }
    Value::Object(m)
}

/// Support of `x` as `[u, v, value]` triples.
pub fn support(g: &WeightedGraph, x: &BasicFractionalMatching) -> Value {
    x.support()
        .map(|e| {
            let edge = g.edge(e);
            json!([g.label(edge.u), g.label(edge.v), x.value(e).to_string()])
        })
        .collect()
}

fn cycles(g: &WeightedGraph, x: &BasicFractionalMatching) -> Value {
    x.odd_cycles().iter().map(|c| labels(g, c.vertices())).collect()
}

fn walk(g: &WeightedGraph, w: &AlternatingWalk) -> Value {
    labels(g, w.vertices())
}

fn optimum(g: &WeightedGraph, x: &BasicFractionalMatching, y: &FractionalVertexCover) -> Value {
    json!({"x": support(g, x), "cover": cover(g, y)})
}

/// What a command produced: the document body and the exit status it implies.
pub struct Output {
    pub body: Map<String, Value>,
    pub infeasible: bool,
}

impl From<Value> for Output {
    fn from(v: Value) -> Self {
        match v {
            Value::Object(body) => Output { body, infeasible: false },
            _ => unreachable!("documents are objects"),
        }
    }
}

pub fn solve_fractional_doc(g: &WeightedGraph) -> Output {
    let (x, y) = solve_fractional(g);
    json!({
        "nu_f": frac(y.total()),
        "odd_cycles": cycles(g, &x),
        "certificate": optimum(g, &x, &y),
    })
    .into()
}

pub fn min_cycles_doc(g: &WeightedGraph) -> Output {
    let red = reduce_cycles(g);
    let events: Vec<Value> = red
        .events
        .iter()
        .map(|ev| {
            let case = match ev.case {
                AugmentationCase::ZeroCoverOnCycle => "zero-cover-on-cycle",
                AugmentationCase::CycleToCycle => "cycle-to-cycle",
                AugmentationCase::CycleToZeroCover => "cycle-to-zero-cover",
            };
            json!({
                "case": case,
                "rounded": ev.rounded.iter().map(|(c, v)| json!({
                    "cycle": labels(g, c.vertices()),
                    "exposed": g.label(*v),
                })).collect::<Vec<_>>(),
                "path": labels(g, &ev.path),
                "x": support(g, &ev.result),
            })
        })
        .collect();
    let frustrated: Vec<Value> = red
        .frustrated
        .iter()
        .map(|tree| {
            tree.iter()
                .map(|n| match n {
                    AuxNode::Vertex(v) => Value::from(g.label(*v)),
                    AuxNode::Pseudo(i) => json!({"cycle": i}),
                    AuxNode::Z => Value::from("z"),
                    AuxNode::Shadow(v) => json!({"shadow": g.label(*v)}),
                })
                .collect()
        })
        .collect();
    json!({
        "gamma": red.gamma,
        "initial_cycles": red.initial_cycles,
        "nu_f": frac(red.y.total()),
        "odd_cycles": cycles(g, &red.x),
        "events": events,
        "frustrated_trees": frustrated,
        "certificate": optimum(g, &red.x, &red.y),
    })
    .into()
}

pub fn gamma_doc(g: &WeightedGraph) -> Output {
    let b = gamma_lower_bounds(g);
    let red = reduce_cycles(g);
    json!({
        "gamma": b.gamma,
        "vertex_lower_bound": b.vertex_lower_bound,
        "edge_lower_bound": b.edge_lower_bound,
        "certificate": optimum(g, &red.x, &red.y),
    })
    .into()
}

fn residual_certificate(g: &WeightedGraph, m: &Matching, y: &FractionalVertexCover) -> Value {
    json!({"matching": edge_pairs(g, m.edges()), "cover": cover(g, y)})
}

pub fn stabilize_vertices_doc(g: &WeightedGraph) -> Output {
    let r = min_vertex_stabilizer(g);
    let rest = &r.residual.graph;
    json!({
        "S": labels(g, &r.removed),
        "gamma": r.gamma(),
        "nu_before": r.nu_before.map(frac),
        "nu_f_before": frac(r.nu_f_before),
        "nu_after": frac(r.nu_after),
        "certificate": residual_certificate(rest, &r.matching, &r.cover),
    })
    .into()
}

pub fn stabilize_edges_doc(g: &WeightedGraph) -> Output {
    let r = edge_stabilizer_approx(g);
    json!({
        "F": edge_pairs(g, r.removed.iter().copied()),
        "gamma": r.gamma,
        "lower_bound": r.lower_bound,
        "upper_bound": r.upper_bound,
        "ratio_bound": r.ratio_bound().map(frac),
        "nu_after": frac(r.cover.total()),
        "certificate": residual_certificate(&r.residual, &r.matching, &r.cover),
    })
    .into()
}

pub fn m_stabilize_doc(g: &WeightedGraph, m: &Matching) -> anyhow::Result<Output> {
    let r = m_vertex_stabilizer(g, m)?;
    let diagnostics: Vec<Value> = r
        .diagnostics
        .iter()
        .map(|d| match d {
            Removal::Flower { root, walk: w } => json!({"kind": "flower", "removed": [g.label(*root)], "walk": walk(g, w)}),
            Removal::PathToCovered { exposed, covered, walk: w } => json!({
                "kind": "path-to-covered",
                "removed": [g.label(*exposed)],
                "covered": g.label(*covered),
                "walk": walk(g, w),
            }),
            Removal::PathToExposed { u, v, walk: w } => json!({
                "kind": "path-to-exposed",
                "removed": [g.label(*u), g.label(*v)],
                "walk": walk(g, w),
            }),
        })
        .collect();
    let mut body = json!({
        "matching_weight": frac(r.matching_weight),
        "residual_nu_f": frac(r.residual_nu_f),
        "diagnostics": diagnostics,
    });
    let infeasible = match &r.status {
        MStatus::Feasible { removed, s1, s2 } => {
            body["status"] = "feasible".into();
            body["S"] = labels(g, removed);
            body["S1"] = labels(g, s1);
            body["S2"] = labels(g, s2);
            body["certificate"] = json!({
                "matching": edge_pairs(g, m.edges()),
                "cover": cover(&r.residual.graph, &r.cover),
            });
            false
        }
        MStatus::Infeasible => {
            body["status"] = "infeasible".into();
            true
        }
    };
    let mut out = Output::from(body);
    out.infeasible = infeasible;
    Ok(out)
}

/// Stability is `γ = 0`; when stable, an integral optimum and the cover
/// certify `ν = ν_f`.
pub fn check_stability_doc(g: &WeightedGraph) -> Output {
    let red = reduce_cycles(g);
    let stable = red.gamma == 0;
    let mut body = json!({
        "stable": stable,
        "gamma": red.gamma,
        "nu_f": frac(red.y.total()),
    });
    if stable {
        body["nu"] = frac(red.x.weight(g));
        body["certificate"] = residual_certificate(g, red.x.matched_part(), &red.y);
    }
    body.into()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OracleQuery {
    Nu,
    NuF,
    Gamma,
    IsStable,
    MinVertexStabilizer,
    MinEdgeStabilizer,
    MinMStabilizer,
}

pub fn oracle_doc(inst: &Instance, q: OracleQuery, budget: &OracleBudget, exec: Execution) -> anyhow::Result<Output> {
    let g = &inst.graph;
    let v = match q {
        OracleQuery::Nu => {
            let (nu, m) = oracle::exact_nu(g, budget)?;
            json!({"nu": frac(nu), "matching": edge_pairs(g, m.edges())})
        }
        OracleQuery::NuF => json!({"nu_f": frac(oracle::exact_nu_f(g, budget)?)}),
        OracleQuery::Gamma => json!({"gamma": oracle::brute_gamma(g, budget)?}),
        OracleQuery::IsStable => json!({"stable": oracle::is_stable(g, budget)?}),
        OracleQuery::MinVertexStabilizer => {
            json!({"S": labels(g, &oracle::brute_min_vertex_stabilizer(g, budget, exec)?)})
        }
        OracleQuery::MinEdgeStabilizer => {
            json!({"F": edge_pairs(g, oracle::brute_min_edge_stabilizer(g, budget, exec)?)})
        }
        OracleQuery::MinMStabilizer => {
            let m = inst.require_matching()?;
            match oracle::brute_min_m_stabilizer(g, m, budget, exec)? {
                Some(s) => json!({"status": "feasible", "S": labels(g, &s)}),
                None => {
                    return Ok(Output {
                        body: json!({"status": "infeasible"}).as_object().unwrap().clone(),
                        infeasible: true,
                    })
                }
            }
        }
    };
    Ok(v.into())
}
