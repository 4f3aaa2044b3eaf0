//! Independent re-checking of result documents. Nothing here runs a solver:
//! certificates are validated with graph and LP-feasibility checks alone.

use anyhow::{anyhow, bail, ensure, Context, Result};
use serde_json::{json, Value};
use stabilize_core::fractional::{check_optimal_pair, decompose, FractionalVertexCover};
use stabilize_core::io::{instance_hash, Instance};
use stabilize_core::{EdgeId, Matching, Rational, VertexId, WeightedGraph};

fn field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key).ok_or_else(|| anyhow!("missing field {key:?}"))
}

fn text(v: &Value) -> Result<&str> {
    v.as_str().ok_or_else(|| anyhow!("expected a string, got {v}"))
}

fn list(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| anyhow!("expected a list, got {v}"))
}

fn fraction(v: &Value) -> Result<Rational> {
    text(v)?.parse().map_err(|e| anyhow!("{e}"))
}

fn vertex(g: &WeightedGraph, v: &Value) -> Result<VertexId> {
    let l = text(v)?;
    g.vertex_by_label(l).ok_or_else(|| anyhow!("unknown vertex {l:?}"))
}

fn vertex_set(g: &WeightedGraph, v: &Value) -> Result<Vec<VertexId>> {
    list(v)?.iter().map(|l| vertex(g, l)).collect()
}

fn edge_of(g: &WeightedGraph, pair: &Value) -> Result<EdgeId> {
    let p = list(pair)?;
    ensure!(p.len() >= 2, "edge needs two endpoints: {pair}");
    let (u, v) = (vertex(g, &p[0])?, vertex(g, &p[1])?);
    g.edge_between(u, v).ok_or_else(|| anyhow!("no edge {pair}"))
}

fn edge_set(g: &WeightedGraph, v: &Value) -> Result<Vec<EdgeId>> {
    list(v)?.iter().map(|p| edge_of(g, p)).collect()
}

fn cover(g: &WeightedGraph, v: &Value) -> Result<FractionalVertexCover> {
    let obj = v.as_object().ok_or_else(|| anyhow!("cover must be an object"))?;
    ensure!(obj.len() == g.num_vertices(), "cover has {} entries for {} vertices", obj.len(), g.num_vertices());
    let mut y = vec![Rational::ZERO; g.num_vertices()];
    for (label, val) in obj {
        let v = g.vertex_by_label(label).ok_or_else(|| anyhow!("unknown vertex {label:?}"))?;
        y[v] = fraction(val)?;
    }
    Ok(FractionalVertexCover::new(y))
}

/// `(x, y)` optimal and `x` basic; returns the number of odd cycles of `x`.
fn optimum(g: &WeightedGraph, cert: &Value) -> Result<(usize, Rational)> {
    let mut x = vec![Rational::ZERO; g.num_edges()];
    for t in list(field(cert, "x")?)? {
        let e = edge_of(g, t)?;
        x[e] = fraction(&list(t)?[2])?;
    }
    let x = decompose(&x, g)?;
    let y = cover(g, field(cert, "cover")?)?;
    check_optimal_pair(g, &x, &y)?;
    Ok((x.num_cycles(), y.total()))
}

/// A matching and a feasible cover of equal value: both optimal, graph stable.
fn stable_pair(g: &WeightedGraph, cert: &Value) -> Result<Rational> {
    let m = Matching::new(g, edge_set(g, field(cert, "matching")?)?)?;
    let y = cover(g, field(cert, "cover")?)?;
    y.check_feasible(g)?;
    let (w, t) = (m.weight(g), y.total());
    ensure!(w == t, "matching weight {w} differs from cover value {t}");
    Ok(w)
}

fn same(reported: &Value, value: Rational, what: &str) -> Result<()> {
    let r = fraction(reported)?;
    ensure!(r == value, "reported {what} {r} but certificate gives {value}");
    Ok(())
}

fn check(inst: &Instance, doc: &Value) -> Result<String> {
    let g = &inst.graph;
    if let Some(h) = doc.get("instance") {
        ensure!(text(h)? == instance_hash(inst), "document was produced for a different instance");
    }
    let command = text(field(doc, "command")?)?;
    let cert = || field(doc, "certificate");
    Ok(match command {
        "solve-fractional" | "min-cycles" | "gamma" => {
            let (cycles, value) = optimum(g, cert()?)?;
            if let Some(v) = doc.get("nu_f") {
                same(v, value, "nu_f")?;
            }
            if let Some(gm) = doc.get("gamma") {
                ensure!(gm.as_u64() == Some(cycles as u64), "gamma {gm} but certificate has {cycles} cycles");
            }
            format!("optimal basic pair of value {value} with {cycles} odd cycles")
        }
        "stabilize-vertices" => {
            let s = vertex_set(g, field(doc, "S")?)?;
            let rest = g.without_vertices(&s).graph;
            let value = stable_pair(&rest, cert()?)?;
            same(field(doc, "nu_after")?, value, "nu_after")?;
            format!("removing {} vertices leaves a stable graph with nu = {value}", s.len())
        }
        "stabilize-edges" => {
            let f = edge_set(g, field(doc, "F")?)?;
            let rest = g.without_edges(&f).0;
            let value = stable_pair(&rest, cert()?)?;
            same(field(doc, "nu_after")?, value, "nu_after")?;
            format!("removing {} edges leaves a stable graph with nu = {value}", f.len())
        }
        "m-stabilize" => {
            if text(field(doc, "status")?)? != "feasible" {
                bail!("infeasibility carries no certificate");
            }
            let m = inst.require_matching()?;
            let s = vertex_set(g, field(doc, "S")?)?;
            ensure!(s.iter().all(|&v| m.is_exposed(v)), "S contains a matched vertex");
            let sub = g.without_vertices(&s);
            let claimed = Matching::new(g, edge_set(g, field(cert()?, "matching")?)?)?;
            ensure!(&claimed == m, "certificate matching is not the input matching");
            let value = stable_pair(&sub.graph, cert()?)?;
            format!("removing {} exposed vertices keeps the matching maximum, value {value}", s.len())
        }
        "check-stability" => {
            ensure!(field(doc, "stable")?.as_bool() == Some(true), "instability carries no certificate");
            format!("stable with nu = nu_f = {}", stable_pair(g, cert()?)?)
        }
        other => bail!("{other:?} results carry no certificate"),
    })
}

pub fn verify(inst: &Instance, doc: &Value) -> (Value, bool) {
    let command = doc.get("command").cloned().unwrap_or(Value::Null);
    match check(inst, doc).context("verification failed") {
        Ok(detail) => (json!({"command": command, "verified": true, "detail": detail}), true),
        Err(e) => (json!({"command": command, "verified": false, "detail": format!("{e:#}")}), false),
    }
}
