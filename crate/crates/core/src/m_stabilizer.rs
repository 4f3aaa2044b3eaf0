//! Stabilizing a graph by deleting only vertices a given matching leaves
//! exposed, so that the matching stays maximum-weight.

use crate::error::{Error, Result};
use crate::fractional::FractionalVertexCover;
use crate::graph::{Matching, Subgraph, VertexId, WeightedGraph};
use crate::lp::solve_fractional;
use crate::rational::Rational;
use crate::walk::AlternatingWalk;
use crate::walk_dp::{detect_structures, reconstruct_walk, Table};

/// Order in which exposed vertices are visited by both loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Order {
    #[default]
    Ascending,
    Descending,
}

/// Why a vertex was removed, with a witnessing walk in input vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Removal {
    /// Augmenting walk from `root` back to itself.
    Flower { root: VertexId, walk: AlternatingWalk },
    /// Augmenting walk from exposed `exposed` to covered `covered`.
    PathToCovered {
        exposed: VertexId,
        covered: VertexId,
        walk: AlternatingWalk,
    },
    /// Augmenting walk between two exposed vertices; both are removed.
    PathToExposed { u: VertexId, v: VertexId, walk: AlternatingWalk },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MStatus {
    Feasible {
        /// `s1 ∪ s2`, ascending.
        removed: Vec<VertexId>,
        /// Removed in the first loop, in removal order.
        s1: Vec<VertexId>,
        /// Removed in pairs in the second loop, in removal order.
        s2: Vec<VertexId>,
    },
    Infeasible,
}

#[derive(Debug, Clone)]
pub struct MStabilizerResult {
    pub status: MStatus,
    pub diagnostics: Vec<Removal>,
    pub matching_weight: Rational,
    /// `ν_f` of the graph left after both loops.
    pub residual_nu_f: Rational,
    pub residual: Subgraph,
    /// Minimum fractional cover of the residual graph; on success its value
    /// equals the matching weight.
    pub cover: FractionalVertexCover,
}

impl MStabilizerResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self.status, MStatus::Feasible { .. })
    }

    pub fn removed(&self) -> Option<&[VertexId]> {
        match &self.status {
            MStatus::Feasible { removed, .. } => Some(removed),
            MStatus::Infeasible => None,
        }
    }
}

fn lift(g: &WeightedGraph, m: &Matching, sub: &Subgraph, w: &AlternatingWalk) -> AlternatingWalk {
    let seq: Vec<VertexId> = w.vertices().iter().map(|&v| sub.vertex_map[v]).collect();
    AlternatingWalk::from_vertices(g, m, &seq).expect("subgraph walks lift")
}

pub fn m_vertex_stabilizer(g: &WeightedGraph, m: &Matching) -> Result<MStabilizerResult> {
    m_vertex_stabilizer_ordered(g, m, Order::Ascending)
}

pub fn m_vertex_stabilizer_ordered(g: &WeightedGraph, m: &Matching, order: Order) -> Result<MStabilizerResult> {
    if Matching::new(g, m.edges()).as_ref() != Ok(m) {
        return Err(Error::NotAMatching);
    }
    let mut exposed: Vec<VertexId> = m.exposed_vertices().collect();
    if order == Order::Descending {
        exposed.reverse();
    }
    let mut removed: Vec<VertexId> = Vec::new();
    let mut diagnostics = Vec::new();
    let current = |removed: &[VertexId]| {
        let sub = g.without_vertices(removed);
        let ms = m.restrict(&sub).expect("only exposed vertices are removed");
        (sub, ms)
    };

    let mut s1 = Vec::new();
    for &u in &exposed {
        let (sub, ms) = current(&removed);
        let local = sub.forward[u].expect("u not yet removed");
        let found = detect_structures(&sub.graph, &ms, local)?;
        let reason = if found.flower_at_root {
            let w = reconstruct_walk(&found.long, &sub.graph, &ms, local, Table::One)?;
            Removal::Flower {
                root: u,
                walk: lift(g, m, &sub, &w),
            }
        } else if let Some(v) = found.aug_path_to_covered {
            let w = reconstruct_walk(&found.long, &sub.graph, &ms, v, Table::Two)?;
            Removal::PathToCovered {
                exposed: u,
                covered: sub.vertex_map[v],
                walk: lift(g, m, &sub, &w),
            }
        } else {
            continue;
        };
        diagnostics.push(reason);
        s1.push(u);
        removed.push(u);
    }

    let mut s2 = Vec::new();
    for &u in &exposed {
        if removed.contains(&u) {
            continue;
        }
        let (sub, ms) = current(&removed);
        let local = sub.forward[u].expect("u not yet removed");
        let found = detect_structures(&sub.graph, &ms, local)?;
        if let Some(v) = found.aug_path_to_exposed {
            let w = reconstruct_walk(&found.short, &sub.graph, &ms, v, Table::One)?;
            let v = sub.vertex_map[v];
            diagnostics.push(Removal::PathToExposed {
                u,
                v,
                walk: lift(g, m, &sub, &w),
            });
            s2.extend([u, v]);
            removed.extend([u, v]);
        }
    }

    removed.sort_unstable();
    let residual = g.without_vertices(&removed);
    let (_, cover) = solve_fractional(&residual.graph);
    let residual_nu_f = cover.total();
    let matching_weight = m.weight(g);
    let status = if matching_weight < residual_nu_f {
        MStatus::Infeasible
    } else {
        MStatus::Feasible { removed, s1, s2 }
    };
    Ok(MStabilizerResult {
        status,
        diagnostics,
        matching_weight,
        residual_nu_f,
        residual,
        cover,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fig9_is_infeasible() {
        let g = fixtures::fig9();
        let m = fixtures::fig9_matching(&g);
        let r = m_vertex_stabilizer(&g, &m).unwrap();
        assert_eq!(r.status, MStatus::Infeasible);
        assert!(r.diagnostics.is_empty());
        assert_eq!(r.matching_weight, Rational::from(5));
        assert_eq!(r.residual_nu_f, Rational::from(6));
    }

    #[test]
    fn triangle_root_removed() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 2.into()), (1, 2, 2.into()), (0, 2, 2.into())]).unwrap();
        let m = Matching::from_pairs(&g, &[(1, 2)]).unwrap();
        let r = m_vertex_stabilizer(&g, &m).unwrap();
        assert_eq!(
            r.status,
            MStatus::Feasible {
                removed: vec![0],
                s1: vec![0],
                s2: vec![]
            }
        );
        assert!(matches!(r.diagnostics[0], Removal::Flower { root: 0, .. }));
        assert_eq!(r.cover.total(), Rational::from(2));
    }

    #[test]
    fn single_edge_loses_factor_two() {
        let g = WeightedGraph::from_edges(2, &[(0, 1, 3.into())]).unwrap();
        let m = Matching::empty(&g);
        let r = m_vertex_stabilizer(&g, &m).unwrap();
        assert_eq!(
            r.status,
            MStatus::Feasible {
                removed: vec![0, 1],
                s1: vec![],
                s2: vec![0, 1]
            }
        );
        let r = m_vertex_stabilizer_ordered(&g, &m, Order::Descending).unwrap();
        assert_eq!(r.removed(), Some(&[0, 1][..]));
    }

    #[test]
    fn foreign_matching_rejected() {
        let g = WeightedGraph::from_edges(2, &[(0, 1, 3.into())]).unwrap();
        let h = WeightedGraph::from_edges(3, &[(0, 1, 3.into()), (1, 2, 1.into())]).unwrap();
        let m = Matching::from_pairs(&h, &[(1, 2)]).unwrap();
        assert_eq!(m_vertex_stabilizer(&g, &m).unwrap_err(), Error::NotAMatching);
    }
}
