//! Simple undirected graphs with exact nonnegative edge weights, and
//! matchings on them.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// Always the smaller endpoint.
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Rational,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            debug_assert_eq!(x, self.v);
            self.u
        }
    }

    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }
}

/// Edge ids are dense and follow insertion order; incidence lists are kept in
/// ascending neighbor order so every scan is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    index: HashMap<(VertexId, VertexId), EdgeId>,
}

impl WeightedGraph {
    /// Graph on `n` vertices labelled `"0"`, `"1"`, ...
    pub fn new(n: usize) -> Self {
        Self::with_labels((0..n).map(|i| i.to_string()).collect())
            .expect("numeric labels are unique")
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate vertex label {l:?}")));
            }
        }
        let n = labels.len();
        Ok(WeightedGraph {
            labels,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
            index: HashMap::new(),
        })
    }

    /// Convenience constructor over integer-indexed edges.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId, Rational)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, weight: Rational) -> Result<EdgeId> {
        let n = self.num_vertices();
        if u >= n || v >= n {
            return Err(Error::InvalidGraph(format!("edge ({u}, {v}) names a missing vertex")));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
        }
        if weight.is_negative() {
            return Err(Error::InvalidGraph(format!("edge ({u}, {v}) has negative weight {weight}")));
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if self.index.contains_key(&(a, b)) {
            return Err(Error::InvalidGraph(format!("parallel edge ({a}, {b})")));
        }
        let id = self.edges.len();
        self.edges.push(Edge { u: a, v: b, weight });
        self.index.insert((a, b), id);
        for (x, y) in [(a, b), (b, a)] {
            let list = &mut self.adjacency[x];
            let pos = list.partition_point(|&(nb, _)| nb < y);
            list.insert(pos, (y, id));
        }
        Ok(id)
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn weight(&self, e: EdgeId) -> Rational {
        self.edges[e].weight
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    /// `(neighbor, edge)` pairs in ascending neighbor order.
    pub fn incident(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.index.get(&key).copied()
    }

    pub fn total_weight<'a>(&self, edges: impl IntoIterator<Item = &'a EdgeId>) -> Rational {
        edges.into_iter().map(|&e| self.weight(e)).sum()
    }

    /// `Σ w_e x_e`.
    pub fn dot(&self, x: &[Rational]) -> Rational {
        debug_assert_eq!(x.len(), self.num_edges());
        self.edges
            .iter()
            .zip(x)
            .filter(|(_, xe)| !xe.is_zero())
            .map(|(e, xe)| e.weight * *xe)
            .sum()
    }

    /// Copy of the graph without the given edges. Vertices keep their ids;
    /// the returned vector maps each new edge id to the old one.
    pub fn without_edges(&self, removed: &[EdgeId]) -> (WeightedGraph, Vec<EdgeId>) {
        let removed: BTreeSet<EdgeId> = removed.iter().copied().collect();
        let mut g = WeightedGraph::with_labels(self.labels.clone()).expect("labels already unique");
        let mut back = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if !removed.contains(&id) {
                g.add_edge(e.u, e.v, e.weight).expect("subgraph of a simple graph");
                back.push(id);
            }
        }
        (g, back)
    }

    /// Induced subgraph on the vertices not in `removed`. Vertices and edges
    /// are renumbered densely in their original order.
    pub fn without_vertices(&self, removed: &[VertexId]) -> Subgraph {
        let removed: BTreeSet<VertexId> = removed.iter().copied().collect();
        let vertex_map: Vec<VertexId> = (0..self.num_vertices())
            .filter(|v| !removed.contains(v))
            .collect();
        let mut forward = vec![None; self.num_vertices()];
        for (new, &old) in vertex_map.iter().enumerate() {
            forward[old] = Some(new);
        }
        let labels = vertex_map.iter().map(|&v| self.labels[v].clone()).collect();
        let mut g = WeightedGraph::with_labels(labels).expect("labels already unique");
        let mut edge_map = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if let (Some(a), Some(b)) = (forward[e.u], forward[e.v]) {
                g.add_edge(a, b, e.weight).expect("subgraph of a simple graph");
                edge_map.push(id);
            }
        }
        Subgraph {
            graph: g,
            vertex_map,
            edge_map,
            forward,
        }
    }
}

/// An induced subgraph together with the maps back to its parent.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: WeightedGraph,
    /// new vertex id -> parent vertex id
    pub vertex_map: Vec<VertexId>,
    /// new edge id -> parent edge id
    pub edge_map: Vec<EdgeId>,
    /// parent vertex id -> new vertex id
    pub forward: Vec<Option<VertexId>>,
}

/// A set of pairwise vertex-disjoint edges of a particular graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    edges: BTreeSet<EdgeId>,
    member: Vec<bool>,
    mate: Vec<Option<(VertexId, EdgeId)>>,
}

impl Matching {
    pub fn empty(g: &WeightedGraph) -> Self {
        Matching {
            edges: BTreeSet::new(),
            member: vec![false; g.num_edges()],
            mate: vec![None; g.num_vertices()],
        }
    }

    pub fn new(g: &WeightedGraph, edges: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let mut m = Self::empty(g);
        for e in edges {
            if e >= g.num_edges() {
                return Err(Error::NotAMatching);
            }
            let Edge { u, v, .. } = *g.edge(e);
            if !m.edges.insert(e) {
                continue;
            }
            if m.mate[u].is_some() || m.mate[v].is_some() {
                return Err(Error::NotAMatching);
            }
            m.member[e] = true;
            m.mate[u] = Some((v, e));
            m.mate[v] = Some((u, e));
        }
        Ok(m)
    }

    pub fn from_pairs(g: &WeightedGraph, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        let ids = pairs
            .iter()
            .map(|&(u, v)| g.edge_between(u, v).ok_or(Error::NotAMatching))
            .collect::<Result<Vec<_>>>()?;
        Self::new(g, ids)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.member.get(e).copied().unwrap_or(false)
    }

    pub fn mate(&self, v: VertexId) -> Option<VertexId> {
        self.mate[v].map(|(u, _)| u)
    }

    pub fn matched_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.mate[v].map(|(_, e)| e)
    }

    pub fn is_exposed(&self, v: VertexId) -> bool {
        self.mate[v].is_none()
    }

    pub fn exposed_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.mate.len()).filter(|&v| self.mate[v].is_none())
    }

    pub fn weight(&self, g: &WeightedGraph) -> Rational {
        g.total_weight(self.edges.iter())
    }

    /// Indicator vector over the edges of `g`.
    pub fn to_vector(&self, g: &WeightedGraph) -> Vec<Rational> {
        let mut x = vec![Rational::ZERO; g.num_edges()];
        for &e in &self.edges {
            x[e] = Rational::ONE;
        }
        x
    }

    /// Restriction to an induced subgraph. Fails if a matched edge leaves it.
    pub fn restrict(&self, sub: &Subgraph) -> Result<Matching> {
        let mut back = HashMap::new();
        for (new, &old) in sub.edge_map.iter().enumerate() {
            back.insert(old, new);
        }
        let ids = self
            .edges
            .iter()
            .map(|e| back.get(e).copied().ok_or(Error::NotAMatching))
            .collect::<Result<Vec<_>>>()?;
        Matching::new(&sub.graph, ids)
    }
}
