//! Reducing the number of odd cycles in a basic maximum-weight fractional
//! matching to the minimum possible, `γ(G)`.
//!
//! With a fixed minimum cover `y`, the auxiliary graph `G'` keeps the tight
//! edges of `G`, adds a helper node `z`, joins `z` to every saturated vertex
//! with `y_v = 0`, gives every unsaturated vertex with `y_v = 0` a shadow `v'`
//! on a path `v - v' - z`, and shrinks every odd cycle of the support to a
//! pseudonode. The matching `M'` is the integral part plus all `vv'` edges. An
//! `M'`-augmenting path from a pseudonode maps back to a tight alternating
//! path in `G` along which the cycles can be rounded away without losing
//! weight; a frustrated tree certifies that its nodes never take part in such
//! a path and is deleted.

use std::collections::{BTreeSet, HashMap};
use std::hash::{Hash, Hasher};

use crate::edmonds::{grow_tree, CardinalityMatching, GrowOutcome, UnweightedGraph};
use crate::error::{Error, Result};
use crate::fractional::{
    check_optimal_pair, decompose, tight_edges, BasicFractionalMatching, FractionalVertexCover, OddCycle,
};
use crate::graph::{EdgeId, VertexId, WeightedGraph};
use crate::lp::solve_fractional;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AuxNode {
    Vertex(VertexId),
    /// Index into the cycle list of the fractional matching.
    Pseudo(usize),
    Z,
    Shadow(VertexId),
}

/// Entities removed from `G'` after a frustrated tree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Deleted {
    vertices: BTreeSet<VertexId>,
    shadows: BTreeSet<VertexId>,
    z: bool,
}

impl Deleted {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.shadows.is_empty() && !self.z
    }

    pub fn vertices(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }
}

#[derive(Debug, Clone)]
pub struct AuxiliaryGraph {
    pub graph: UnweightedGraph,
    pub matching: CardinalityMatching,
    nodes: Vec<AuxNode>,
    index: HashMap<AuxNode, usize>,
    cycles: Vec<OddCycle>,
    /// For every `G'` edge with a pseudonode end: the original tight edge it
    /// stands for, as (end inside the first node, end inside the second node).
    links: HashMap<(usize, usize), (VertexId, VertexId)>,
    /// For pseudonode-`z` edges: the cycle vertex with `y_v = 0`.
    zero_cover: HashMap<usize, VertexId>,
}

impl AuxiliaryGraph {
    pub fn nodes(&self) -> &[AuxNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> AuxNode {
        self.nodes[i]
    }

    pub fn index_of(&self, n: AuxNode) -> Option<usize> {
        self.index.get(&n).copied()
    }

    pub fn pseudonodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(|&i| matches!(self.nodes[i], AuxNode::Pseudo(_)))
    }

    pub fn cycle(&self, pseudo: usize) -> &OddCycle {
        match self.nodes[pseudo] {
            AuxNode::Pseudo(c) => &self.cycles[c],
            other => panic!("{other:?} is not a pseudonode"),
        }
    }

    /// Whether `G'` has an edge between the two entities.
    pub fn has_edge(&self, a: AuxNode, b: AuxNode) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.graph.has_edge(i, j),
            _ => false,
        }
    }

    pub fn is_matched(&self, a: AuxNode, b: AuxNode) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.matching.mate[i] == Some(j),
            _ => false,
        }
    }

    /// The original edge endpoint inside `from` for the `G'` edge `from-to`.
    fn link_end(&self, from: usize, to: usize) -> Option<VertexId> {
        if let Some(&(a, _)) = self.links.get(&(from, to)) {
            return Some(a);
        }
        self.links.get(&(to, from)).map(|&(_, b)| b)
    }
}

/// `G'` and `M'` for a complementary-slack pair.
pub fn build_auxiliary(
    g: &WeightedGraph,
    x: &BasicFractionalMatching,
    y: &FractionalVertexCover,
) -> Result<AuxiliaryGraph> {
    check_optimal_pair(g, x, y)?;
    Ok(build_with_deletions(g, x, y, &Deleted::default()))
}

fn build_with_deletions(
    g: &WeightedGraph,
    x: &BasicFractionalMatching,
    y: &FractionalVertexCover,
    deleted: &Deleted,
) -> AuxiliaryGraph {
    let n = g.num_vertices();
    let cycles = x.odd_cycles().to_vec();
    let cycle_of: Vec<Option<usize>> = (0..n).map(|v| x.cycle_of(v)).collect();
    let pseudo_alive =
        |c: usize| !cycles[c].vertices().iter().any(|v| deleted.vertices.contains(v));

    let mut nodes = Vec::new();
    for v in 0..n {
        if cycle_of[v].is_none() && !deleted.vertices.contains(&v) {
            nodes.push(AuxNode::Vertex(v));
        }
    }
    for c in 0..cycles.len() {
        if pseudo_alive(c) {
            nodes.push(AuxNode::Pseudo(c));
        }
    }
    if !deleted.z {
        nodes.push(AuxNode::Z);
    }
    for v in 0..n {
        let unsaturated_zero = x.load(v).is_zero() && y.get(v).is_zero();
        if unsaturated_zero && !deleted.vertices.contains(&v) && !deleted.shadows.contains(&v) {
            nodes.push(AuxNode::Shadow(v));
        }
    }
    let index: HashMap<AuxNode, usize> = nodes.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let of_vertex = |v: VertexId| -> Option<usize> {
        match cycle_of[v] {
            Some(c) => index.get(&AuxNode::Pseudo(c)).copied(),
            None => index.get(&AuxNode::Vertex(v)).copied(),
        }
    };

    let mut graph = UnweightedGraph::new(nodes.len());
    let mut links = HashMap::new();
    let mut zero_cover = HashMap::new();

    // (a) tight edges, with cycles shrunk (e)
    let tight = tight_edges(g, y).expect("cover is feasible");
    for e in tight {
        let edge = g.edge(e);
        let (Some(a), Some(b)) = (of_vertex(edge.u), of_vertex(edge.v)) else {
            continue;
        };
        if a == b {
            continue;
        }
        let touches_pseudo = matches!(nodes[a], AuxNode::Pseudo(_)) || matches!(nodes[b], AuxNode::Pseudo(_));
        if touches_pseudo && !graph.has_edge(a, b) {
            links.insert((a, b), (edge.u, edge.v));
        }
        graph.add_edge(a, b);
    }
    let z = index.get(&AuxNode::Z).copied();
    // (c) saturated vertices with zero cover
    for v in 0..n {
        if x.load(v) == Rational::ONE && y.get(v).is_zero() {
            if let (Some(a), Some(z)) = (of_vertex(v), z) {
                if let AuxNode::Pseudo(_) = nodes[a] {
                    zero_cover.entry(a).or_insert(v);
                }
                graph.add_edge(a, z);
            }
        }
    }
    // (d) shadows
    let mut matching = CardinalityMatching::empty(nodes.len());
    for (i, node) in nodes.iter().enumerate() {
        if let AuxNode::Shadow(v) = *node {
            if let Some(a) = of_vertex(v) {
                graph.add_edge(a, i);
                matching.mate[a] = Some(i);
                matching.mate[i] = Some(a);
            }
            if let Some(z) = z {
                graph.add_edge(i, z);
            }
        }
    }
    for e in x.matched_part().edges() {
        let edge = g.edge(e);
        if let (Some(a), Some(b)) = (of_vertex(edge.u), of_vertex(edge.v)) {
            matching.mate[a] = Some(b);
            matching.mate[b] = Some(a);
        }
    }

    AuxiliaryGraph {
        graph,
        matching,
        nodes,
        index,
        cycles,
        links,
        zero_cover,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AugmentationCase {
    /// The augmenting path is the single edge from a pseudonode to `z`: a
    /// cycle vertex has zero cover.
    ZeroCoverOnCycle,
    /// A tight alternating path joins two cycles.
    CycleToCycle,
    /// A tight valid alternating path joins a cycle to a vertex with zero
    /// cover outside all cycles.
    CycleToZeroCover,
}

#[derive(Debug, Clone)]
pub struct AugmentationEvent {
    pub case: AugmentationCase,
    /// Each removed cycle together with the vertex it was rounded at.
    pub rounded: Vec<(OddCycle, VertexId)>,
    /// The tight path in `G` that was complemented, as a vertex sequence.
    pub path: Vec<VertexId>,
    pub result: BasicFractionalMatching,
}

/// Translate an `M'`-augmenting path of `G'` into the corresponding moves in
/// `G` and apply them.
pub fn apply_augmentation(
    g: &WeightedGraph,
    x: &BasicFractionalMatching,
    aux: &AuxiliaryGraph,
    path: &[usize],
) -> Result<AugmentationEvent> {
    validate_augmenting(aux, path)?;
    let mut path: Vec<usize> = path.to_vec();
    if !matches!(aux.node(path[0]), AuxNode::Pseudo(_)) {
        path.reverse();
    }
    let r = path[0];
    let s = *path.last().unwrap();
    if !matches!(aux.node(r), AuxNode::Pseudo(_)) {
        return Err(Error::EndpointNotRecognized);
    }
    let cycle_r = aux.cycle(r).clone();

    if path.len() == 2 && aux.node(s) == AuxNode::Z {
        let v = *aux.zero_cover.get(&r).ok_or(Error::EndpointNotRecognized)?;
        let result = x.alternate_round(g, &cycle_r, v)?;
        return Ok(AugmentationEvent {
            case: AugmentationCase::ZeroCoverOnCycle,
            rounded: vec![(cycle_r, v)],
            path: Vec::new(),
            result,
        });
    }

    // Strip the z gadget at the far end.
    let (inner_end, case) = match aux.node(s) {
        AuxNode::Pseudo(_) => (path.len() - 1, AugmentationCase::CycleToCycle),
        AuxNode::Z => {
            let before = aux.node(path[path.len() - 2]);
            match before {
                AuxNode::Vertex(_) => (path.len() - 2, AugmentationCase::CycleToZeroCover),
                AuxNode::Shadow(_) => (path.len() - 3, AugmentationCase::CycleToZeroCover),
                _ => return Err(Error::EndpointNotRecognized),
            }
        }
        _ => return Err(Error::EndpointNotRecognized),
    };

    let u = aux.link_end(r, path[1]).ok_or(Error::EndpointNotRecognized)?;
    let mut g_path = vec![u];
    for &node in &path[1..inner_end] {
        match aux.node(node) {
            AuxNode::Vertex(v) => g_path.push(v),
            _ => return Err(Error::EndpointNotRecognized),
        }
    }
    let mut rounded = vec![(cycle_r.clone(), u)];
    if case == AugmentationCase::CycleToCycle {
        let v = aux
            .link_end(s, path[path.len() - 2])
            .ok_or(Error::EndpointNotRecognized)?;
        g_path.push(v);
        rounded.push((aux.cycle(s).clone(), v));
    } else if let AuxNode::Vertex(v) = aux.node(path[inner_end]) {
        g_path.push(v);
    } else {
        return Err(Error::EndpointNotRecognized);
    }

    let edges: Vec<EdgeId> = g_path
        .windows(2)
        .map(|p| g.edge_between(p[0], p[1]).ok_or(Error::PathNotAugmenting))
        .collect::<Result<_>>()?;
    let mut current = x.clone();
    for (cycle, at) in &rounded {
        current = current.alternate_round(g, cycle, *at)?;
    }
    let values = current.complement(&edges)?;
    let result = decompose(&values, g)?;
    Ok(AugmentationEvent {
        case,
        rounded,
        path: g_path,
        result,
    })
}

fn validate_augmenting(aux: &AuxiliaryGraph, path: &[usize]) -> Result<()> {
    if path.len() < 2 || path.len() % 2 == 1 {
        return Err(Error::PathNotAugmenting);
    }
    let m = &aux.matching;
    if !m.is_exposed(path[0]) || !m.is_exposed(*path.last().unwrap()) {
        return Err(Error::PathNotAugmenting);
    }
    let distinct: BTreeSet<_> = path.iter().collect();
    if distinct.len() != path.len() {
        return Err(Error::PathNotAugmenting);
    }
    for (i, p) in path.windows(2).enumerate() {
        if !aux.graph.has_edge(p[0], p[1]) || (m.mate[p[0]] == Some(p[1])) != (i % 2 == 1) {
            return Err(Error::PathNotAugmenting);
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct CycleReduction {
    pub x: BasicFractionalMatching,
    pub y: FractionalVertexCover,
    pub gamma: usize,
    pub initial_cycles: usize,
    pub events: Vec<AugmentationEvent>,
    /// Node sets of the frustrated trees, mapped to their `G'` entities.
    pub frustrated: Vec<Vec<AuxNode>>,
}

fn cover_digest(y: &FractionalVertexCover) -> u64 {
    let mut h = std::collections::hash_map::DefaultHasher::new();
    y.hash(&mut h);
    h.finish()
}

/// Basic maximum-weight fractional matching with exactly `γ(G)` odd cycles,
/// together with the minimum cover used throughout.
pub fn reduce_cycles(g: &WeightedGraph) -> CycleReduction {
    let (x, y) = solve_fractional(g);
    reduce_cycles_from(g, x, y).expect("solver output is an optimal pair")
}

/// Same as [`reduce_cycles`], starting from a given optimal pair.
pub fn reduce_cycles_from(
    g: &WeightedGraph,
    x: BasicFractionalMatching,
    y: FractionalVertexCover,
) -> Result<CycleReduction> {
    check_optimal_pair(g, &x, &y)?;
    let digest = cover_digest(&y);
    let initial_cycles = x.num_cycles();
    let mut x = x;
    let mut deleted = Deleted::default();
    let mut events = Vec::new();
    let mut frustrated = Vec::new();

    loop {
        debug_assert_eq!(cover_digest(&y), digest);
        let aux = build_with_deletions(g, &x, &y, &deleted);
        let Some(root) = aux.pseudonodes().find(|&p| aux.matching.is_exposed(p)) else {
            break;
        };
        match grow_tree(&aux.graph, &aux.matching, root) {
            GrowOutcome::Augmenting(path) => {
                let event = apply_augmentation(g, &x, &aux, &path)?;
                debug_assert!(event.path.iter().all(|v| !deleted.contains_vertex(*v)));
                debug_assert_eq!(check_optimal_pair(g, &event.result, &y), Ok(()));
                debug_assert!(event.result.num_cycles() < x.num_cycles());
                x = event.result.clone();
                events.push(event);
            }
            GrowOutcome::Frustrated(tree) => {
                let mut removed = Vec::new();
                for &i in &tree.nodes {
                    let node = aux.node(i);
                    removed.push(node);
                    match node {
                        AuxNode::Vertex(v) => {
                            deleted.vertices.insert(v);
                        }
                        AuxNode::Pseudo(_) => {
                            deleted.vertices.extend(aux.cycle(i).vertices().iter().copied());
                        }
                        AuxNode::Z => deleted.z = true,
                        AuxNode::Shadow(v) => {
                            deleted.shadows.insert(v);
                        }
                    }
                }
                frustrated.push(removed);
            }
        }
    }
    let gamma = x.num_cycles();
    Ok(CycleReduction {
        x,
        y,
        gamma,
        initial_cycles,
        events,
        frustrated,
    })
}
