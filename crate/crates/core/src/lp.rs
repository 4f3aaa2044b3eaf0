//! Exact solution of the fractional matching LP and its dual.
//!
//! The graph is duplicated into a bipartite graph with a left copy `v` and a
//! right copy `v'` of every vertex; each edge `uv` becomes `(u, v')` and
//! `(v, u')`. A maximum-weight bipartite matching with nonnegative dual
//! potentials is found by a primal-dual Hungarian search. Symmetrizing the
//! matching gives a half-integral optimum of the fractional LP and averaging
//! the two potentials of each vertex gives a minimum fractional vertex cover.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::fractional::{check_optimal_pair, decompose, BasicFractionalMatching, FractionalVertexCover};
use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteEdge {
    pub left: VertexId,
    pub right: VertexId,
    pub weight: Rational,
    /// Edge of the original graph this copy came from.
    pub original: EdgeId,
}

#[derive(Debug, Clone)]
pub struct BipartiteDuplicate {
    size: usize,
    edges: Vec<BipartiteEdge>,
    left_adj: Vec<Vec<usize>>,
}

impl BipartiteDuplicate {
    pub fn new(g: &WeightedGraph) -> Self {
        let n = g.num_vertices();
        let mut edges = Vec::with_capacity(2 * g.num_edges());
        let mut left_adj = vec![Vec::new(); n];
        for (id, e) in g.edges().iter().enumerate() {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                left_adj[a].push(edges.len());
                edges.push(BipartiteEdge {
                    left: a,
                    right: b,
                    weight: e.weight,
                    original: id,
                });
            }
        }
        BipartiteDuplicate {
            size: n,
            edges,
            left_adj,
        }
    }

    /// Number of vertices on each side.
    pub fn side_size(&self) -> usize {
        self.size
    }

    pub fn edges(&self) -> &[BipartiteEdge] {
        &self.edges
    }
}

/// Matched bipartite edge per left / right node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMatching {
    pub left: Vec<Option<usize>>,
    pub right: Vec<Option<usize>>,
}

impl BipartiteMatching {
    pub fn edges(&self) -> impl Iterator<Item = usize> + '_ {
        self.left.iter().flatten().copied()
    }

    pub fn weight(&self, b: &BipartiteDuplicate) -> Rational {
        self.edges().map(|e| b.edges[e].weight).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPotentials {
    pub left: Vec<Rational>,
    pub right: Vec<Rational>,
}

impl DualPotentials {
    pub fn total(&self) -> Rational {
        self.left.iter().chain(&self.right).sum()
    }

    fn slack(&self, e: &BipartiteEdge) -> Rational {
        self.left[e.left] + self.right[e.right] - e.weight
    }

    /// Feasibility, equality on matched edges and zero potential on exposed
    /// nodes.
    pub fn certifies(&self, b: &BipartiteDuplicate, m: &BipartiteMatching) -> bool {
        let nonneg = self.left.iter().chain(&self.right).all(|p| !p.is_negative());
        let feasible = b.edges.iter().all(|e| !self.slack(e).is_negative());
        let tight = m.edges().all(|e| self.slack(&b.edges[e]).is_zero());
        let exposed_zero = (0..b.size).all(|v| {
            (m.left[v].is_some() || self.left[v].is_zero())
                && (m.right[v].is_some() || self.right[v].is_zero())
        });
        nonneg && feasible && tight && exposed_zero
    }
}

/// Maximum-weight (not necessarily perfect) bipartite matching together with
/// an optimal dual in which every exposed node has potential zero.
pub fn bipartite_max_weight_matching(b: &BipartiteDuplicate) -> (BipartiteMatching, DualPotentials) {
    let n = b.size;
    let top = b
        .edges
        .iter()
        .map(|e| e.weight)
        .max()
        .unwrap_or(Rational::ZERO);
    let mut pot = DualPotentials {
        left: vec![top; n],
        right: vec![Rational::ZERO; n],
    };
    let mut m = BipartiteMatching {
        left: vec![None; n],
        right: vec![None; n],
    };

    // Every exposed left node carries the same, minimal, potential; the search
    // stops once that common value reaches zero.
    'stage: loop {
        let roots: Vec<VertexId> = (0..n)
            .filter(|&i| m.left[i].is_none() && pot.left[i].is_positive())
            .collect();
        if roots.is_empty() {
            break;
        }
        let mut left_in = vec![false; n];
        let mut right_in = vec![false; n];
        // Tree edge through which each labeled right node was reached.
        let mut via: Vec<Option<usize>> = vec![None; n];
        let mut queue: VecDeque<VertexId> = VecDeque::new();
        for &r in &roots {
            left_in[r] = true;
            queue.push_back(r);
        }
        loop {
            while let Some(i) = queue.pop_front() {
                for &eid in &b.left_adj[i] {
                    let e = &b.edges[eid];
                    let j = e.right;
                    if right_in[j] || !pot.slack(e).is_zero() {
                        continue;
                    }
                    right_in[j] = true;
                    via[j] = Some(eid);
                    match m.right[j] {
                        None => {
                            augment(b, &mut m, &via, j);
                            continue 'stage;
                        }
                        Some(me) => {
                            let i2 = b.edges[me].left;
                            if !left_in[i2] {
                                left_in[i2] = true;
                                queue.push_back(i2);
                            }
                        }
                    }
                }
            }

            let by_potential = (0..n)
                .filter(|&i| left_in[i])
                .map(|i| pot.left[i])
                .min()
                .expect("tree has a root");
            let by_slack = b
                .edges
                .iter()
                .filter(|e| left_in[e.left] && !right_in[e.right])
                .map(|e| pot.slack(e))
                .min();
            let delta = match by_slack {
                Some(s) if s < by_potential => s,
                _ => by_potential,
            };
            for i in 0..n {
                if left_in[i] {
                    pot.left[i] -= delta;
                }
                if right_in[i] {
                    pot.right[i] += delta;
                }
            }
            if delta == by_potential {
                // Exposed roots reached zero.
                continue 'stage;
            }
            queue.extend((0..n).filter(|&i| left_in[i]));
        }
    }
    debug_assert!(pot.certifies(b, &m));
    debug_assert_eq!(pot.total(), m.weight(b));
    (m, pot)
}

fn augment(b: &BipartiteDuplicate, m: &mut BipartiteMatching, via: &[Option<usize>], end: VertexId) {
    let mut j = end;
    loop {
        let eid = via[j].expect("labeled right node has a tree edge");
        let i = b.edges[eid].left;
        let previous = m.left[i];
        m.left[i] = Some(eid);
        m.right[j] = Some(eid);
        match previous {
            None => break,
            Some(old) => j = b.edges[old].right,
        }
    }
}

/// `x_uv = ([u matched to v'] + [v matched to u']) / 2`.
pub fn symmetrize(g: &WeightedGraph, b: &BipartiteDuplicate, m: &BipartiteMatching) -> Vec<Rational> {
    let mut x = vec![Rational::ZERO; g.num_edges()];
    for e in m.edges() {
        x[b.edges[e].original] += Rational::HALF;
    }
    x
}

/// Turns an optimal half-integral fractional matching into a basic one by
/// rounding every half-valued path or even cycle to one of its two
/// alternations. Odd cycles are kept.
pub fn normalize_to_basic(x: &[Rational], g: &WeightedGraph) -> Result<BasicFractionalMatching> {
    let n = g.num_vertices();
    let mut half_adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
    for (e, xe) in x.iter().enumerate() {
        if *xe == Rational::HALF {
            let edge = g.edge(e);
            half_adj[edge.u].push((edge.v, e));
            half_adj[edge.v].push((edge.u, e));
        }
    }
    if let Some(v) = half_adj.iter().position(|a| a.len() > 2) {
        return Err(Error::DegreeConstraintViolated(v));
    }
    let before = g.dot(x);
    let mut out = x.to_vec();
    let mut done = vec![false; n];
    for start in 0..n {
        if done[start] || half_adj[start].is_empty() {
            continue;
        }
        // Collect the component and find an endpoint if it is a path.
        let mut comp = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if comp.insert(v) {
                stack.extend(half_adj[v].iter().map(|&(u, _)| u));
            }
        }
        for &v in &comp {
            done[v] = true;
        }
        let endpoint = comp.iter().copied().find(|&v| half_adj[v].len() == 1);
        let is_cycle = endpoint.is_none();
        if is_cycle && comp.len() % 2 == 1 {
            continue;
        }
        let order = trace(&half_adj, endpoint.unwrap_or(start), is_cycle);
        let even: Vec<EdgeId> = order.iter().step_by(2).copied().collect();
        let odd: Vec<EdgeId> = order.iter().skip(1).step_by(2).copied().collect();
        let (we, wo) = (g.total_weight(&even), g.total_weight(&odd));
        let lowest = *order.iter().min().unwrap();
        let keep = if we > wo || (we == wo && even.contains(&lowest)) {
            &even
        } else {
            &odd
        };
        for &e in &order {
            out[e] = Rational::ZERO;
        }
        for &e in keep {
            out[e] = Rational::ONE;
        }
    }
    let basic = decompose(&out, g)?;
    if basic.weight(g) < before {
        return Err(Error::WeightLoss);
    }
    Ok(basic)
}

/// Edge sequence of a half-valued path (from an endpoint) or cycle.
fn trace(adj: &[Vec<(VertexId, EdgeId)>], start: VertexId, is_cycle: bool) -> Vec<EdgeId> {
    let mut order = Vec::new();
    let mut prev_edge: Option<EdgeId> = None;
    let mut cur = start;
    loop {
        let next = adj[cur].iter().find(|&&(_, e)| Some(e) != prev_edge);
        let Some(&(nb, e)) = next else { break };
        if is_cycle && order.first() == Some(&e) {
            break;
        }
        order.push(e);
        prev_edge = Some(e);
        cur = nb;
        if is_cycle && cur == start {
            break;
        }
    }
    order
}

/// A basic maximum-weight fractional matching and a minimum fractional
/// vertex cover with equal objective values.
pub fn solve_fractional(g: &WeightedGraph) -> (BasicFractionalMatching, FractionalVertexCover) {
    let b = BipartiteDuplicate::new(g);
    let (m, pot) = bipartite_max_weight_matching(&b);
    let x = symmetrize(g, &b, &m);
    let basic = normalize_to_basic(&x, g).expect("symmetrized bipartite optimum is optimal");
    let y = FractionalVertexCover::new(
        (0..g.num_vertices())
            .map(|v| (pot.left[v] + pot.right[v]) * Rational::HALF)
            .collect(),
    );
    debug_assert_eq!(check_optimal_pair(g, &basic, &y), Ok(()));
    (basic, y)
}

/// `ν_f(G)`.
pub fn fractional_value(g: &WeightedGraph) -> Rational {
    solve_fractional(g).1.total()
}
