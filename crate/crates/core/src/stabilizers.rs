//! Vertex- and edge-stabilizers built on the minimum-cycle fractional matching.

use crate::cycles::{reduce_cycles, CycleReduction};
use crate::fractional::{check_optimal_pair, BasicFractionalMatching, FractionalVertexCover};
use crate::graph::{EdgeId, Matching, Subgraph, VertexId, WeightedGraph};
use crate::oracle::{exact_nu, OracleBudget};
use crate::rational::Rational;

/// Graphs up to this size get an exact `ν(G)` in the stabilizer reports.
pub const EXACT_NU_LIMIT: usize = 20;

#[derive(Debug, Clone)]
pub struct VertexStabilizerResult {
    /// One vertex per odd cycle, ascending.
    pub removed: Vec<VertexId>,
    pub residual: Subgraph,
    /// Maximum-weight matching of the residual graph.
    pub matching: Matching,
    /// Fractional cover of the residual graph with the same value as `matching`.
    pub cover: FractionalVertexCover,
    /// `ν(G)`, when the graph is small enough to compute it exactly.
    pub nu_before: Option<Rational>,
    /// `ν_f(G)`, an upper bound on `ν(G)`.
    pub nu_f_before: Rational,
    pub nu_after: Rational,
    pub reduction: CycleReduction,
}

impl VertexStabilizerResult {
    pub fn gamma(&self) -> usize {
        self.reduction.gamma
    }

    /// The residual matching in the edge ids of the input graph.
    pub fn matching_in_parent(&self) -> Vec<EdgeId> {
        self.matching.edges().map(|e| self.residual.edge_map[e]).collect()
    }
}

/// Removes from every odd cycle of a minimum-cycle basic optimum its vertex
/// of least cover value (lowest index on ties). The result has exactly `γ(G)`
/// vertices, which is optimal.
pub fn min_vertex_stabilizer(g: &WeightedGraph) -> VertexStabilizerResult {
    let reduction = reduce_cycles(g);
    let (x, y) = (&reduction.x, &reduction.y);
    let mut rounded = x.clone();
    let mut removed = Vec::new();
    for cycle in x.odd_cycles() {
        let v = *cycle
            .vertices()
            .iter()
            .min_by_key(|&&v| (y.get(v), v))
            .expect("cycles are nonempty");
        rounded = rounded.alternate_round(g, cycle, v).expect("v lies on the cycle");
        removed.push(v);
    }
    removed.sort_unstable();
    debug_assert!(rounded.is_integral());

    let residual = g.without_vertices(&removed);
    let matching = rounded
        .matched_part()
        .restrict(&residual)
        .expect("removed vertices are exposed after rounding");
    let cover = y.restrict(&residual.vertex_map);
    let nu_after = matching.weight(&residual.graph);
    debug_assert_eq!(nu_after, cover.total());
    debug_assert_eq!(
        check_optimal_pair(
            &residual.graph,
            &BasicFractionalMatching::from_matching(&residual.graph, &matching),
            &cover
        ),
        Ok(())
    );

    let nu_before = exact_nu_if_small(g);
    VertexStabilizerResult {
        removed,
        residual,
        matching,
        cover,
        nu_before,
        nu_f_before: y.total(),
        nu_after,
        reduction,
    }
}

fn exact_nu_if_small(g: &WeightedGraph) -> Option<Rational> {
    let budget = OracleBudget {
        max_vertices: EXACT_NU_LIMIT,
        ..OracleBudget::default()
    };
    exact_nu(g, &budget).ok().map(|(nu, _)| nu)
}

#[derive(Debug, Clone)]
pub struct EdgeStabilizerResult {
    /// All edges incident to the vertex-stabilizer, ascending and deduplicated.
    pub removed: Vec<EdgeId>,
    pub gamma: usize,
    /// `⌈γ/2⌉`, a lower bound on any edge-stabilizer.
    pub lower_bound: usize,
    /// `γ·Δ`, an upper bound on `removed.len()`.
    pub upper_bound: usize,
    pub residual: WeightedGraph,
    /// residual edge id -> input edge id
    pub edge_map: Vec<EdgeId>,
    pub matching: Matching,
    pub cover: FractionalVertexCover,
}

impl EdgeStabilizerResult {
    /// `|F| / ⌈γ/2⌉`, at most `2Δ`; `None` when `γ = 0`.
    pub fn ratio_bound(&self) -> Option<Rational> {
        (self.lower_bound > 0).then(|| Rational::from(self.removed.len() as i64) / Rational::from(self.lower_bound as i64))
    }
}

/// Deletes every edge at the vertices of [`min_vertex_stabilizer`].
pub fn edge_stabilizer_approx(g: &WeightedGraph) -> EdgeStabilizerResult {
    let vs = min_vertex_stabilizer(g);
    let mut removed: Vec<EdgeId> = vs
        .removed
        .iter()
        .flat_map(|&v| g.incident(v).iter().map(|&(_, e)| e))
        .collect();
    removed.sort_unstable();
    removed.dedup();

    let (residual, edge_map) = g.without_edges(&removed);
    let mut back = vec![None; g.num_edges()];
    for (new, &old) in edge_map.iter().enumerate() {
        back[old] = Some(new);
    }
    let matching = Matching::new(
        &residual,
        vs.matching_in_parent().into_iter().map(|e| back[e].expect("kept edge")),
    )
    .expect("matching survives");
    let mut values = vec![Rational::ZERO; g.num_vertices()];
    for (new, &old) in vs.residual.vertex_map.iter().enumerate() {
        values[old] = vs.cover.get(new);
    }
    let cover = FractionalVertexCover::new(values);
    debug_assert_eq!(
        check_optimal_pair(
            &residual,
            &BasicFractionalMatching::from_matching(&residual, &matching),
            &cover
        ),
        Ok(())
    );

    let gamma = vs.gamma();
    EdgeStabilizerResult {
        removed,
        gamma,
        lower_bound: gamma.div_ceil(2),
        upper_bound: gamma * g.max_degree(),
        residual,
        edge_map,
        matching,
        cover,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaBounds {
    pub gamma: usize,
    /// Every vertex-stabilizer has at least `γ` vertices.
    pub vertex_lower_bound: usize,
    /// Every edge-stabilizer has at least `⌈γ/2⌉` edges.
    pub edge_lower_bound: usize,
}

pub fn gamma_lower_bounds(g: &WeightedGraph) -> GammaBounds {
    let gamma = reduce_cycles(g).gamma;
    GammaBounds {
        gamma,
        vertex_lower_bound: gamma,
        edge_lower_bound: gamma.div_ceil(2),
    }
}
