//! Edmonds' maximum-cardinality matching on unweighted graphs: alternating
//! tree growth from a single root with blossom shrinking, returning either a
//! fully expanded augmenting path or a frustrated tree.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UnweightedGraph {
    adj: Vec<Vec<usize>>,
}

impl UnweightedGraph {
    pub fn new(n: usize) -> Self {
        UnweightedGraph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn add_node(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    /// Adds `uv` unless it is a loop or already present.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v || self.adj[u].contains(&v) {
            return;
        }
        for (a, b) in [(u, v), (v, u)] {
            let pos = self.adj[a].partition_point(|&x| x < b);
            self.adj[a].insert(pos, b);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }
}

/// `mate[v]` is the partner of `v`, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CardinalityMatching {
    pub mate: Vec<Option<usize>>,
}

impl CardinalityMatching {
    pub fn empty(n: usize) -> Self {
        CardinalityMatching { mate: vec![None; n] }
    }

    pub fn from_pairs(g: &UnweightedGraph, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut m = Self::empty(g.num_nodes());
        for &(u, v) in pairs {
            if !g.has_edge(u, v) || m.mate[u].is_some() || m.mate[v].is_some() {
                return Err(Error::NotAMatching);
            }
            m.mate[u] = Some(v);
            m.mate[v] = Some(u);
        }
        Ok(m)
    }

    pub fn len(&self) -> usize {
        self.mate.iter().flatten().count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exposed(&self, v: usize) -> bool {
        self.mate[v].is_none()
    }
}

/// Search state of one alternating tree. `even` nodes form B(T) (including
/// every node absorbed into a shrunk blossom); `odd` nodes form A(T).
#[derive(Debug, Clone)]
pub struct AlternatingTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub base: Vec<usize>,
    pub even: Vec<bool>,
    /// Node sets of the blossoms shrunk during the search, in order.
    pub shrunk: Vec<Vec<usize>>,
}

/// A tree in which every edge leaving an even node ends in an odd node (or
/// inside the same shrunk blossom).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrustratedTree {
    pub root: usize,
    pub nodes: BTreeSet<usize>,
    pub even: BTreeSet<usize>,
    pub odd: BTreeSet<usize>,
    /// Blossom base of every even node.
    pub base: Vec<(usize, usize)>,
}

impl FrustratedTree {
    /// Checks the defining edge condition against `g`.
    pub fn is_frustrated(&self, g: &UnweightedGraph) -> bool {
        let base_of = |v: usize| self.base.iter().find(|&&(x, _)| x == v).map(|&(_, b)| b);
        self.even.iter().all(|&b| {
            g.neighbors(b).iter().all(|&x| {
                self.odd.contains(&x) || (self.even.contains(&x) && base_of(x) == base_of(b))
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowOutcome {
    /// Simple alternating path from the root to another exposed node.
    Augmenting(Vec<usize>),
    Frustrated(FrustratedTree),
}

/// Grow an alternating tree rooted at the exposed node `root`. Neighbors are
/// scanned in ascending order.
pub fn grow_tree(g: &UnweightedGraph, m: &CardinalityMatching, root: usize) -> GrowOutcome {
    assert!(m.is_exposed(root), "tree root must be exposed");
    let n = g.num_nodes();
    let mut t = AlternatingTree {
        root,
        parent: vec![None; n],
        base: (0..n).collect(),
        even: vec![false; n],
        shrunk: Vec::new(),
    };
    let mate = &m.mate;
    let mut queue = VecDeque::new();
    t.even[root] = true;
    queue.push_back(root);

    while let Some(v) = queue.pop_front() {
        for &to in g.neighbors(v) {
            if t.base[v] == t.base[to] || mate[v] == Some(to) {
                continue;
            }
            let to_is_even = to == root || mate[to].is_some_and(|mt| t.parent[mt].is_some());
            if to_is_even {
                let b = lowest_common_base(&t, mate, v, to);
                let mut in_blossom = vec![false; n];
                mark_path(&mut t, mate, &mut in_blossom, v, b, to);
                mark_path(&mut t, mate, &mut in_blossom, to, b, v);
                let mut members = Vec::new();
                for i in 0..n {
                    if in_blossom[t.base[i]] {
                        members.push(i);
                        t.base[i] = b;
                        if !t.even[i] {
                            t.even[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
                t.shrunk.push(members);
            } else if t.parent[to].is_none() {
                t.parent[to] = Some(v);
                match mate[to] {
                    None => return GrowOutcome::Augmenting(extract_path(&t, mate, to)),
                    Some(mt) => {
                        t.even[mt] = true;
                        queue.push_back(mt);
                    }
                }
            }
        }
    }

    let even: BTreeSet<usize> = (0..n).filter(|&i| t.even[i]).collect();
    let odd: BTreeSet<usize> = (0..n)
        .filter(|&i| !t.even[i] && t.parent[i].is_some())
        .collect();
    let nodes = even.union(&odd).copied().collect();
    let base = even.iter().map(|&v| (v, t.base[v])).collect();
    GrowOutcome::Frustrated(FrustratedTree {
        root,
        nodes,
        even,
        odd,
        base,
    })
}

fn lowest_common_base(t: &AlternatingTree, mate: &[Option<usize>], a: usize, b: usize) -> usize {
    let mut on_path = vec![false; t.base.len()];
    let mut a = a;
    loop {
        a = t.base[a];
        on_path[a] = true;
        match mate[a] {
            None => break,
            Some(ma) => a = t.parent[ma].expect("matched even node has an odd parent"),
        }
    }
    let mut b = b;
    loop {
        b = t.base[b];
        if on_path[b] {
            return b;
        }
        b = t.parent[mate[b].expect("non-root base is matched")].expect("odd node has a parent");
    }
}

fn mark_path(
    t: &mut AlternatingTree,
    mate: &[Option<usize>],
    in_blossom: &mut [bool],
    mut v: usize,
    b: usize,
    mut child: usize,
) {
    while t.base[v] != b {
        let mv = mate[v].expect("even non-base node is matched");
        in_blossom[t.base[v]] = true;
        in_blossom[t.base[mv]] = true;
        t.parent[v] = Some(child);
        child = mv;
        v = t.parent[mv].expect("odd node has a parent");
    }
}

fn extract_path(t: &AlternatingTree, mate: &[Option<usize>], end: usize) -> Vec<usize> {
    let mut path = Vec::new();
    let mut v = end;
    loop {
        let pv = t.parent[v].expect("reached node has a parent");
        path.push(v);
        path.push(pv);
        match mate[pv] {
            None => break,
            Some(next) => v = next,
        }
    }
    path.reverse();
    path
}

/// `M <- M △ E(P)` for an augmenting path `P` given as a node sequence.
pub fn augment(g: &UnweightedGraph, m: &CardinalityMatching, path: &[usize]) -> Result<CardinalityMatching> {
    if path.len() < 2 || path.len() % 2 == 1 {
        return Err(Error::NotAugmenting);
    }
    let (first, last) = (path[0], path[path.len() - 1]);
    if !m.is_exposed(first) || !m.is_exposed(last) {
        return Err(Error::NotAugmenting);
    }
    let distinct: BTreeSet<_> = path.iter().collect();
    if distinct.len() != path.len() {
        return Err(Error::NotAugmenting);
    }
    for (i, pair) in path.windows(2).enumerate() {
        if !g.has_edge(pair[0], pair[1]) {
            return Err(Error::NotAugmenting);
        }
        let matched = m.mate[pair[0]] == Some(pair[1]);
        if matched != (i % 2 == 1) {
            return Err(Error::NotAugmenting);
        }
    }
    let mut out = m.clone();
    for pair in path.chunks(2) {
        out.mate[pair[0]] = Some(pair[1]);
        out.mate[pair[1]] = Some(pair[0]);
    }
    Ok(out)
}

/// Maximum-cardinality matching by repeated tree growth from exposed nodes in
/// ascending order, starting from `initial`.
pub fn maximum_matching(g: &UnweightedGraph, initial: CardinalityMatching) -> CardinalityMatching {
    let mut m = initial;
    for r in 0..g.num_nodes() {
        if !m.is_exposed(r) {
            continue;
        }
        if let GrowOutcome::Augmenting(p) = grow_tree(g, &m, r) {
            m = augment(g, &m, &p).expect("grow_tree returns augmenting paths");
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> UnweightedGraph {
        let mut g = UnweightedGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    #[test]
    fn isolated_root_is_frustrated() {
        let g = graph(1, &[]);
        match grow_tree(&g, &CardinalityMatching::empty(1), 0) {
            GrowOutcome::Frustrated(t) => {
                assert_eq!(t.nodes.into_iter().collect::<Vec<_>>(), vec![0]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn covered_path_is_frustrated() {
        // r - a - b with ab matched: no second exposed node.
        let g = graph(3, &[(0, 1), (1, 2)]);
        let m = CardinalityMatching::from_pairs(&g, &[(1, 2)]).unwrap();
        match grow_tree(&g, &m, 0) {
            GrowOutcome::Frustrated(t) => {
                assert_eq!(t.nodes.iter().copied().collect::<Vec<_>>(), vec![0, 1, 2]);
                assert_eq!(t.odd.iter().copied().collect::<Vec<_>>(), vec![1]);
                assert!(t.is_frustrated(&g));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn blossom_then_pendant() {
        // Triangle r=0, a=1, b=2 with ab matched, pendant b-c with c=3 exposed.
        let g = graph(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]);
        let m = CardinalityMatching::from_pairs(&g, &[(1, 2)]).unwrap();
        match grow_tree(&g, &m, 0) {
            GrowOutcome::Augmenting(p) => {
                assert_eq!(p, vec![0, 1, 2, 3]);
                let m2 = augment(&g, &m, &p).unwrap();
                assert_eq!(m2.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn augment_examples() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let m = CardinalityMatching::empty(4);
        let m1 = augment(&g, &m, &[0, 1]).unwrap();
        assert_eq!(m1.mate[0], Some(1));

        let m = CardinalityMatching::from_pairs(&g, &[(1, 2)]).unwrap();
        let m2 = augment(&g, &m, &[0, 1, 2, 3]).unwrap();
        assert_eq!(m2.mate, vec![Some(1), Some(0), Some(3), Some(2)]);
        assert_eq!(augment(&g, &m, &[1, 0]), Err(Error::NotAugmenting));
    }

    #[test]
    fn odd_cycle_blossom_leads_out() {
        // 5-cycle 0..4 with matching {12, 34}, pendant 3-5: from root 0 the
        // augmenting path must leave through the blossom.
        let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5)]);
        let m = CardinalityMatching::from_pairs(&g, &[(1, 2), (3, 4)]).unwrap();
        match grow_tree(&g, &m, 0) {
            GrowOutcome::Augmenting(p) => {
                let m2 = augment(&g, &m, &p).unwrap();
                assert_eq!(m2.len(), 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
