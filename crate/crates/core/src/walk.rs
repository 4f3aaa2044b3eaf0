//! Alternating walks with respect to a matching.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Matching, VertexId, WeightedGraph};
use crate::rational::Rational;

/// A walk `v0, v1, ..., vk` whose consecutive edges alternate between the
/// matching and its complement. Vertices and edges may repeat.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlternatingWalk {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
    matched: Vec<bool>,
}

impl AlternatingWalk {
    pub fn empty(start: VertexId) -> Self {
        AlternatingWalk {
            vertices: vec![start],
            edges: Vec::new(),
            matched: Vec::new(),
        }
    }

    /// Walk through the given vertex sequence. Fails with `NotAlternating` if
    /// a step is not an edge or two consecutive edges have the same status.
    pub fn from_vertices(g: &WeightedGraph, m: &Matching, seq: &[VertexId]) -> Result<Self> {
        if seq.is_empty() {
            return Err(Error::NotAlternating);
        }
        let mut edges = Vec::with_capacity(seq.len().saturating_sub(1));
        for pair in seq.windows(2) {
            edges.push(g.edge_between(pair[0], pair[1]).ok_or(Error::NotAlternating)?);
        }
        let matched: Vec<bool> = edges.iter().map(|&e| m.contains(e)).collect();
        if matched.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::NotAlternating);
        }
        Ok(AlternatingWalk {
            vertices: seq.to_vec(),
            edges,
            matched,
        })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn matched_flags(&self) -> &[bool] {
        &self.matched
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Starts with an exposed vertex or a matched edge, and ends likewise.
    pub fn is_valid(&self, m: &Matching) -> bool {
        let start_ok = m.is_exposed(self.start()) || self.matched.first() == Some(&true);
        let end_ok = m.is_exposed(self.end()) || self.matched.last() == Some(&true);
        start_ok && end_ok
    }

    pub fn is_simple_path(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.vertices.iter().all(|v| seen.insert(*v))
    }
}

/// `w(W \ M) - w(W ∩ M)`, counting repeated edges with multiplicity.
pub fn walk_value(walk: &AlternatingWalk, g: &WeightedGraph, m: &Matching) -> Result<Rational> {
    let mut total = Rational::ZERO;
    let mut prev: Option<bool> = None;
    for (i, &e) in walk.edges.iter().enumerate() {
        let edge = g.edge(e);
        let (a, b) = (walk.vertices[i], walk.vertices[i + 1]);
        if !(edge.touches(a) && edge.touches(b)) {
            return Err(Error::NotAlternating);
        }
        let in_m = m.contains(e);
        if prev == Some(in_m) {
            return Err(Error::NotAlternating);
        }
        prev = Some(in_m);
        if in_m {
            total -= edge.weight;
        } else {
            total += edge.weight;
        }
    }
    Ok(total)
}
