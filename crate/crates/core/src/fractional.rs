//! Basic fractional matchings, fractional vertex covers and the primitive
//! moves on them: decomposition, alternate rounding, complementing and
//! switching.
//!
//! A basic fractional matching takes values in `{0, 1/2, 1}`; its 1-edges form
//! a matching and its 1/2-edges form vertex-disjoint odd cycles.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Matching, VertexId, WeightedGraph};
use crate::rational::Rational;

/// An odd cycle in canonical form: `vertices[0]` is the smallest vertex and
/// `vertices[1] < vertices[len-1]`. `edges[i]` joins `vertices[i]` and
/// `vertices[(i + 1) % len]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddCycle {
    vertices: Vec<VertexId>,
    edges: Vec<EdgeId>,
}

impl OddCycle {
    /// Builds a cycle through the given vertex sequence. The closing edge from
    /// the last vertex back to the first is implied.
    pub fn from_vertices(g: &WeightedGraph, seq: &[VertexId]) -> Result<Self> {
        let k = seq.len();
        if k < 3 || k.is_multiple_of(2) {
            return Err(Error::NotBasic);
        }
        let distinct: BTreeSet<_> = seq.iter().collect();
        if distinct.len() != k {
            return Err(Error::NotBasic);
        }
        let start = (0..k).min_by_key(|&i| seq[i]).unwrap();
        let forward = seq[(start + 1) % k] < seq[(start + k - 1) % k];
        let vertices: Vec<VertexId> = (0..k)
            .map(|i| {
                if forward {
                    seq[(start + i) % k]
                } else {
                    seq[(start + k - i) % k]
                }
            })
            .collect();
        let edges = (0..k)
            .map(|i| {
                g.edge_between(vertices[i], vertices[(i + 1) % k])
                    .ok_or(Error::NotBasic)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OddCycle { vertices, edges })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn weight(&self, g: &WeightedGraph) -> Rational {
        g.total_weight(&self.edges)
    }

    /// Edges that receive value 1 when rounding at `v`: walking the cycle from
    /// `v`, the 2nd, 4th, ... edge.
    fn rounded_edges(&self, v: VertexId) -> Option<Vec<EdgeId>> {
        let pos = self.vertices.iter().position(|&u| u == v)?;
        let k = self.len();
        Some((0..k / 2).map(|j| self.edges[(pos + 1 + 2 * j) % k]).collect())
    }
}

/// A vertex solution of the fractional matching polytope, split into its
/// integral part and its odd cycles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasicFractionalMatching {
    x: Vec<Rational>,
    matched: Matching,
    cycles: Vec<OddCycle>,
}

impl BasicFractionalMatching {
    pub fn zero(g: &WeightedGraph) -> Self {
        BasicFractionalMatching {
            x: vec![Rational::ZERO; g.num_edges()],
            matched: Matching::empty(g),
            cycles: Vec::new(),
        }
    }

    pub fn from_matching(g: &WeightedGraph, m: &Matching) -> Self {
        decompose(&m.to_vector(g), g).expect("a matching is a basic fractional matching")
    }

    pub fn values(&self) -> &[Rational] {
        &self.x
    }

    pub fn value(&self, e: EdgeId) -> Rational {
        self.x[e]
    }

    pub fn matched_part(&self) -> &Matching {
        &self.matched
    }

    /// Odd cycles sorted by their smallest vertex.
    pub fn odd_cycles(&self) -> &[OddCycle] {
        &self.cycles
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles.len()
    }

    pub fn weight(&self, g: &WeightedGraph) -> Rational {
        g.dot(&self.x)
    }

    pub fn is_integral(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.x.len()).filter(|&e| !self.x[e].is_zero())
    }

    /// `x(δ(v))`, which is always 0 or 1 for a basic solution.
    pub fn load(&self, v: VertexId) -> Rational {
        if !self.matched.is_exposed(v) || self.cycle_of(v).is_some() {
            Rational::ONE
        } else {
            Rational::ZERO
        }
    }

    pub fn cycle_of(&self, v: VertexId) -> Option<usize> {
        self.cycles.iter().position(|c| c.contains(v))
    }

    /// Round the half-valued cycle `cycle` so that `v` becomes exposed on it.
    pub fn alternate_round(&self, g: &WeightedGraph, cycle: &OddCycle, v: VertexId) -> Result<Self> {
        let idx = self
            .cycles
            .iter()
            .position(|c| c == cycle)
            .ok_or(Error::CycleNotInSupport)?;
        let ones = cycle.rounded_edges(v).ok_or(Error::VertexNotOnCycle(v))?;
        let mut x = self.x.clone();
        for &e in cycle.edges() {
            x[e] = Rational::ZERO;
        }
        for e in ones {
            x[e] = Rational::ONE;
        }
        let out = decompose(&x, g)?;
        debug_assert_eq!(out.num_cycles() + 1, self.num_cycles());
        debug_assert!(!out.cycles.contains(&self.cycles[idx]));
        Ok(out)
    }

    /// Flip `x_e -> 1 - x_e` on the given edges. The result is a raw vector;
    /// callers re-validate it with [`decompose`].
    pub fn complement(&self, path: &[EdgeId]) -> Result<Vec<Rational>> {
        let mut x = self.x.clone();
        for &e in path {
            if x[e] == Rational::HALF {
                return Err(Error::HalfValueOnPath(e));
            }
            x[e] = Rational::ONE - x[e];
        }
        Ok(x)
    }

    /// Replace the entries on `component` by those of `other`. `component` must
    /// be the full edge set of one connected component of `supp(self + other)`.
    pub fn switch(
        &self,
        g: &WeightedGraph,
        other: &BasicFractionalMatching,
        component: &[EdgeId],
    ) -> Result<Self> {
        let wanted: BTreeSet<EdgeId> = component.iter().copied().collect();
        let in_support = |e: EdgeId| !(self.x[e] + other.x[e]).is_zero();
        if wanted.is_empty() || wanted.iter().any(|&e| e >= g.num_edges() || !in_support(e)) {
            return Err(Error::NotAComponent);
        }
        // Union-find over the combined support.
        let n = g.num_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for e in 0..g.num_edges() {
            if in_support(e) {
                let (a, b) = (find(&mut parent, g.edge(e).u), find(&mut parent, g.edge(e).v));
                parent[a] = b;
            }
        }
        let first = *wanted.iter().next().unwrap();
        let root = find(&mut parent, g.edge(first).u);
        let actual: BTreeSet<EdgeId> = (0..g.num_edges())
            .filter(|&e| in_support(e) && find(&mut parent, g.edge(e).u) == root)
            .collect();
        if actual != wanted {
            return Err(Error::NotAComponent);
        }
        let mut x = self.x.clone();
        for &e in &wanted {
            x[e] = other.x[e];
        }
        decompose(&x, g)
    }
}

/// Split a half-integral vector into its matching part and its odd cycles.
pub fn decompose(x: &[Rational], g: &WeightedGraph) -> Result<BasicFractionalMatching> {
    if x.len() != g.num_edges() {
        return Err(Error::InvalidGraph(format!(
            "vector has {} entries for {} edges",
            x.len(),
            g.num_edges()
        )));
    }
    for (e, xe) in x.iter().enumerate() {
        if !(xe.is_zero() || *xe == Rational::HALF || *xe == Rational::ONE) {
            return Err(Error::NotHalfIntegral(e));
        }
    }
    let n = g.num_vertices();
    let mut load = vec![Rational::ZERO; n];
    for (e, xe) in x.iter().enumerate() {
        if !xe.is_zero() {
            load[g.edge(e).u] += *xe;
            load[g.edge(e).v] += *xe;
        }
    }
    if let Some(v) = (0..n).find(|&v| load[v] > Rational::ONE) {
        return Err(Error::DegreeConstraintViolated(v));
    }

    let mut half_nbrs: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut ones = Vec::new();
    for (e, xe) in x.iter().enumerate() {
        let edge = g.edge(e);
        if *xe == Rational::HALF {
            half_nbrs[edge.u].push(edge.v);
            half_nbrs[edge.v].push(edge.u);
        } else if *xe == Rational::ONE {
            ones.push(e);
        }
    }
    if half_nbrs.iter().any(|h| h.len() == 1) {
        return Err(Error::NotBasic);
    }

    let mut cycles = Vec::new();
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] || half_nbrs[start].is_empty() {
            continue;
        }
        let mut seq = vec![start];
        seen[start] = true;
        let mut prev = start;
        let mut cur = half_nbrs[start][0];
        while cur != start {
            seen[cur] = true;
            seq.push(cur);
            let next = if half_nbrs[cur][0] == prev {
                half_nbrs[cur][1]
            } else {
                half_nbrs[cur][0]
            };
            prev = cur;
            cur = next;
        }
        if seq.len() % 2 == 0 {
            return Err(Error::NotBasic);
        }
        cycles.push(OddCycle::from_vertices(g, &seq)?);
    }
    cycles.sort();

    let matched = Matching::new(g, ones).map_err(|_| Error::DegreeConstraintViolated(0))?;
    Ok(BasicFractionalMatching {
        x: x.to_vec(),
        matched,
        cycles,
    })
}

/// Nonnegative vertex values; feasible when `y_u + y_v >= w_uv` on every edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FractionalVertexCover {
    values: Vec<Rational>,
}

impl FractionalVertexCover {
    pub fn new(values: Vec<Rational>) -> Self {
        FractionalVertexCover { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, v: VertexId) -> Rational {
        self.values[v]
    }

    /// `τ_f = Σ y_v`.
    pub fn total(&self) -> Rational {
        self.values.iter().sum()
    }

    pub fn check_feasible(&self, g: &WeightedGraph) -> Result<()> {
        if self.values.len() != g.num_vertices() {
            return Err(Error::InvalidGraph("cover has wrong length".into()));
        }
        if let Some(v) = self.values.iter().position(Rational::is_negative) {
            return Err(Error::InfeasibleCover(
                g.incident(v).first().map(|&(_, e)| e).unwrap_or(0),
            ));
        }
        for (id, e) in g.edges().iter().enumerate() {
            if self.values[e.u] + self.values[e.v] < e.weight {
                return Err(Error::InfeasibleCover(id));
            }
        }
        Ok(())
    }

    /// Restriction to an induced subgraph.
    pub fn restrict(&self, vertex_map: &[VertexId]) -> FractionalVertexCover {
        FractionalVertexCover::new(vertex_map.iter().map(|&v| self.values[v]).collect())
    }
}

/// Edges with `y_u + y_v = w_uv`, in edge-id order.
pub fn tight_edges(g: &WeightedGraph, y: &FractionalVertexCover) -> Result<Vec<EdgeId>> {
    y.check_feasible(g)?;
    Ok(g.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| y.get(e.u) + y.get(e.v) == e.weight)
        .map(|(id, _)| id)
        .collect())
}

/// Checks primal and dual feasibility, `w·x = Σy`, and complementary
/// slackness, all with exact equality.
pub fn check_optimal_pair(
    g: &WeightedGraph,
    x: &BasicFractionalMatching,
    y: &FractionalVertexCover,
) -> Result<()> {
    let fail = |msg: String| Err(Error::NotOptimalPair(msg));
    if let Err(e) = y.check_feasible(g) {
        return fail(format!("cover infeasible: {e}"));
    }
    if let Err(e) = decompose(x.values(), g) {
        return fail(format!("matching not basic: {e}"));
    }
    for e in x.support() {
        let edge = g.edge(e);
        if y.get(edge.u) + y.get(edge.v) != edge.weight {
            return fail(format!("edge {e} in support is not tight"));
        }
    }
    for v in 0..g.num_vertices() {
        if y.get(v).is_positive() && x.load(v) != Rational::ONE {
            return fail(format!("vertex {v} has positive cover but is not saturated"));
        }
    }
    let primal = x.weight(g);
    let dual = y.total();
    if primal != dual {
        return fail(format!("w.x = {primal} but sum y = {dual}"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn half() -> Rational {
        Rational::HALF
    }

    fn triangle() -> WeightedGraph {
        WeightedGraph::from_edges(3, &[(0, 1, 1.into()), (1, 2, 1.into()), (0, 2, 1.into())]).unwrap()
    }

    #[test]
    fn decompose_zero_vector() {
        let g = fixtures::fig8();
        let x = decompose(&vec![Rational::ZERO; g.num_edges()], &g).unwrap();
        assert!(x.matched_part().is_empty());
        assert_eq!(x.num_cycles(), 0);
    }

    #[test]
    fn decompose_triangle() {
        let g = triangle();
        let x = decompose(&[half(), half(), half()], &g).unwrap();
        assert!(x.matched_part().is_empty());
        assert_eq!(x.odd_cycles()[0].vertices(), &[0, 1, 2]);
    }

    #[test]
    fn decompose_fig6() {
        let g = fixtures::fig6();
        let v = |l: &str| g.vertex_by_label(l).unwrap();
        let mut x = vec![Rational::ZERO; g.num_edges()];
        for (a, b) in [("1", "2"), ("1", "3"), ("2", "3"), ("6", "7"), ("6", "8"), ("7", "8")] {
            x[g.edge_between(v(a), v(b)).unwrap()] = half();
        }
        let e45 = g.edge_between(v("4"), v("5")).unwrap();
        x[e45] = Rational::ONE;
        let b = decompose(&x, &g).unwrap();
        assert_eq!(b.matched_part().edges().collect::<Vec<_>>(), vec![e45]);
        let cyc: Vec<Vec<&str>> = b
            .odd_cycles()
            .iter()
            .map(|c| c.vertices().iter().map(|&u| g.label(u)).collect())
            .collect();
        assert_eq!(cyc, vec![vec!["1", "2", "3"], vec!["6", "7", "8"]]);
        assert_eq!(b.weight(&g), Rational::new(13, 2));
    }

    #[test]
    fn decompose_errors() {
        let g = triangle();
        assert_eq!(
            decompose(&[Rational::new(1, 3), Rational::ZERO, Rational::ZERO], &g),
            Err(Error::NotHalfIntegral(0))
        );
        assert!(matches!(
            decompose(&[Rational::ONE, Rational::ONE, Rational::ZERO], &g),
            Err(Error::DegreeConstraintViolated(_))
        ));
        assert_eq!(decompose(&[half(), half(), Rational::ZERO], &g), Err(Error::NotBasic));
        let sq = WeightedGraph::from_edges(
            4,
            &[(0, 1, 1.into()), (1, 2, 1.into()), (2, 3, 1.into()), (0, 3, 1.into())],
        )
        .unwrap();
        assert_eq!(decompose(&[half(); 4], &sq), Err(Error::NotBasic));
    }

    #[test]
    fn alternate_round_triangle_and_pentagon() {
        let g = triangle();
        let x = decompose(&[half(), half(), half()], &g).unwrap();
        let c = x.odd_cycles()[0].clone();
        let r = x.alternate_round(&g, &c, 0).unwrap();
        // edges: 01, 12, 02
        assert_eq!(r.values(), &[Rational::ZERO, Rational::ONE, Rational::ZERO]);

        let mut p = WeightedGraph::new(5);
        for i in 0..5 {
            p.add_edge(i, (i + 1) % 5, 1.into()).unwrap();
        }
        let x = decompose(&[half(); 5], &p).unwrap();
        let c = x.odd_cycles()[0].clone();
        let r = x.alternate_round(&p, &c, 0).unwrap();
        let ones: Vec<_> = r.matched_part().edges().map(|e| (p.edge(e).u, p.edge(e).v)).collect();
        assert_eq!(ones, vec![(1, 2), (3, 4)]);
        assert!(r.is_integral());
    }

    #[test]
    fn alternate_round_fig9() {
        let g = fixtures::fig9();
        let v = |l: &str| g.vertex_by_label(l).unwrap();
        let mut x = vec![Rational::ZERO; g.num_edges()];
        for (a, b) in [("p", "q"), ("p", "r"), ("q", "r")] {
            x[g.edge_between(v(a), v(b)).unwrap()] = half();
        }
        let x = decompose(&x, &g).unwrap();
        let c = x.odd_cycles()[0].clone();
        let r = x.alternate_round(&g, &c, v("p")).unwrap();
        let qr = g.edge_between(v("q"), v("r")).unwrap();
        assert_eq!(r.matched_part().edges().collect::<Vec<_>>(), vec![qr]);
        assert_eq!(r.weight(&g), Rational::from(4));
    }

    #[test]
    fn alternate_round_errors() {
        let g = fixtures::fig9();
        let x = decompose(&[half(), half(), half(), Rational::ZERO], &g).unwrap();
        let c = x.odd_cycles()[0].clone();
        assert_eq!(x.alternate_round(&g, &c, 3), Err(Error::VertexNotOnCycle(3)));
        let rounded = x.alternate_round(&g, &c, 0).unwrap();
        assert_eq!(rounded.alternate_round(&g, &c, 0), Err(Error::CycleNotInSupport));
    }

    #[test]
    fn complement_cases() {
        let g = WeightedGraph::from_edges(3, &[(0, 1, 1.into()), (1, 2, 1.into())]).unwrap();
        let m = Matching::new(&g, [1]).unwrap();
        let x = BasicFractionalMatching::from_matching(&g, &m);
        assert_eq!(x.complement(&[]).unwrap(), x.values());
        assert_eq!(x.complement(&[0, 1]).unwrap(), vec![Rational::ONE, Rational::ZERO]);
        let single = BasicFractionalMatching::zero(&g);
        assert_eq!(single.complement(&[0]).unwrap()[0], Rational::ONE);

        let t = triangle();
        let h = decompose(&[half(), half(), half()], &t).unwrap();
        assert_eq!(h.complement(&[1]), Err(Error::HalfValueOnPath(1)));
    }

    #[test]
    fn switch_cases() {
        let two = WeightedGraph::from_edges(4, &[(0, 1, 1.into()), (2, 3, 1.into())]).unwrap();
        let a = BasicFractionalMatching::from_matching(&two, &Matching::new(&two, [0]).unwrap());
        let b = BasicFractionalMatching::from_matching(&two, &Matching::new(&two, [1]).unwrap());
        let s = a.switch(&two, &b, &[1]).unwrap();
        assert_eq!(s.values(), &[Rational::ONE, Rational::ONE]);
        assert_eq!(a.switch(&two, &a, &[0]).unwrap(), a);

        let path = WeightedGraph::from_edges(3, &[(0, 1, 1.into()), (1, 2, 1.into())]).unwrap();
        let a = BasicFractionalMatching::from_matching(&path, &Matching::new(&path, [0]).unwrap());
        let b = BasicFractionalMatching::from_matching(&path, &Matching::new(&path, [1]).unwrap());
        let s = a.switch(&path, &b, &[0, 1]).unwrap();
        assert_eq!(s, b);
        assert_eq!(a.switch(&path, &b, &[0]), Err(Error::NotAComponent));
    }

    #[test]
    fn tight_edges_examples() {
        let g = fixtures::fig9();
        let y = FractionalVertexCover::new(vec![2.into(), 2.into(), 2.into(), 0.into()]);
        let tight: Vec<_> = tight_edges(&g, &y)
            .unwrap()
            .into_iter()
            .map(|e| (g.label(g.edge(e).u), g.label(g.edge(e).v)))
            .collect();
        assert_eq!(tight, vec![("p", "q"), ("p", "r"), ("q", "r")]);

        let single = WeightedGraph::from_edges(2, &[(0, 1, 3.into())]).unwrap();
        let y = FractionalVertexCover::new(vec![2.into(), 1.into()]);
        assert_eq!(tight_edges(&single, &y).unwrap(), vec![0]);
        let low = FractionalVertexCover::new(vec![1.into(), 1.into()]);
        assert_eq!(tight_edges(&single, &low), Err(Error::InfeasibleCover(0)));
    }

    #[test]
    fn tight_edges_fig8_without_qr() {
        let g = fixtures::fig8();
        let v = |l: &str| g.vertex_by_label(l).unwrap();
        let qr = g.edge_between(v("q"), v("r")).unwrap();
        let (h, back) = g.without_edges(&[qr]);
        let mut y = vec![Rational::ZERO; 5];
        y[v("p")] = 3.into();
        y[v("s")] = 3.into();
        y[v("t")] = 1.into();
        let y = FractionalVertexCover::new(y);
        assert_eq!(y.total(), Rational::from(7));
        let tight: BTreeSet<_> = tight_edges(&h, &y)
            .unwrap()
            .into_iter()
            .map(|e| back[e])
            .collect();
        assert!(tight.contains(&g.edge_between(v("p"), v("q")).unwrap()));
        assert!(tight.contains(&g.edge_between(v("s"), v("t")).unwrap()));
    }
}
