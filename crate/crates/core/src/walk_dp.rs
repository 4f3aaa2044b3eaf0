//! Optimal valid alternating walks of bounded length from a fixed source.
//!
//! `y1(v)` tracks the best walk into `v` whose last edge is unmatched (or the
//! empty walk at the source), `y2(v)` the best walk whose last edge is
//! matched (or the empty walk at an exposed source). One round extends every
//! walk by one edge; both tables are updated from the previous round only.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Matching, VertexId, WeightedGraph};
use crate::rational::Rational;
use crate::walk::AlternatingWalk;

/// A rational or minus infinity. Orders below every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extended {
    NegInfinity,
    Finite(Rational),
}

impl Extended {
    pub fn is_finite(self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn finite(self) -> Option<Rational> {
        match self {
            Extended::Finite(r) => Some(r),
            Extended::NegInfinity => None,
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, Extended::Finite(r) if r.is_positive())
    }

    /// `-∞ + r = -∞`.
    pub fn plus(self, r: Rational) -> Extended {
        match self {
            Extended::Finite(a) => Extended::Finite(a + r),
            Extended::NegInfinity => Extended::NegInfinity,
        }
    }
}

impl From<Option<Rational>> for Extended {
    fn from(v: Option<Rational>) -> Self {
        v.map_or(Extended::NegInfinity, Extended::Finite)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(r) => write!(f, "{r}"),
            Extended::NegInfinity => f.write_str("-inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Table {
    /// Last edge unmatched.
    One,
    /// Last edge matched.
    Two,
}

impl Table {
    fn other(self) -> Table {
        match self {
            Table::One => Table::Two,
            Table::Two => Table::One,
        }
    }
}

/// Both tables after every round, with the neighbor that produced each
/// improvement.
#[derive(Debug, Clone)]
pub struct WalkTables {
    source: VertexId,
    k: usize,
    y1: Vec<Vec<Extended>>,
    y2: Vec<Vec<Extended>>,
    /// `pred1[i][v] = Some(u)`: round `i` improved `y1(v)` from `y2(u)`.
    pred1: Vec<Vec<Option<VertexId>>>,
    pred2: Vec<Vec<Option<VertexId>>>,
}

impl WalkTables {
    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn y1(&self, v: VertexId) -> Extended {
        self.y1[self.k][v]
    }

    pub fn y2(&self, v: VertexId) -> Extended {
        self.y2[self.k][v]
    }

    pub fn get(&self, table: Table, v: VertexId) -> Extended {
        self.at(table, self.k, v)
    }

    /// Entry after round `i` (`i = 0` is the initialization).
    pub fn at(&self, table: Table, i: usize, v: VertexId) -> Extended {
        match table {
            Table::One => self.y1[i][v],
            Table::Two => self.y2[i][v],
        }
    }

    /// Best valid walk value ending at `v`: `y1` if `v` is exposed, `y2` if
    /// covered. Entries of the other table are intermediate state only.
    pub fn valid_value(&self, m: &Matching, v: VertexId) -> Extended {
        if m.is_exposed(v) {
            self.y1(v)
        } else {
            self.y2(v)
        }
    }

    fn pred(&self, table: Table, i: usize, v: VertexId) -> Option<VertexId> {
        match table {
            Table::One => self.pred1[i][v],
            Table::Two => self.pred2[i][v],
        }
    }
}

/// Runs `k` rounds from `s`.
pub fn optimal_walks(g: &WeightedGraph, m: &Matching, s: VertexId, k: usize) -> WalkTables {
    let n = g.num_vertices();
    assert!(s < n, "source {s} out of range");
    let mut y1 = vec![Extended::NegInfinity; n];
    let mut y2 = vec![Extended::NegInfinity; n];
    y1[s] = Extended::Finite(Rational::ZERO);
    if m.is_exposed(s) {
        y2[s] = Extended::Finite(Rational::ZERO);
    }
    let mut t = WalkTables {
        source: s,
        k,
        y1: vec![y1],
        y2: vec![y2],
        pred1: vec![vec![None; n]],
        pred2: vec![vec![None; n]],
    };
    for i in 1..=k {
        let (prev1, prev2) = (&t.y1[i - 1], &t.y2[i - 1]);
        let mut y1 = prev1.clone();
        let mut y2 = prev2.clone();
        let mut p1 = vec![None; n];
        let mut p2 = vec![None; n];
        for v in 0..n {
            let mut z1 = Extended::NegInfinity;
            let mut z1_from = None;
            for &(u, e) in g.incident(v) {
                if m.contains(e) {
                    let z2 = prev1[u].plus(-g.weight(e));
                    if z2 > y2[v] {
                        y2[v] = z2;
                        p2[v] = Some(u);
                    }
                } else {
                    let cand = prev2[u].plus(g.weight(e));
                    if cand > z1 {
                        z1 = cand;
                        z1_from = Some(u);
                    }
                }
            }
            if z1 > y1[v] {
                y1[v] = z1;
                p1[v] = z1_from;
            }
        }
        t.y1.push(y1);
        t.y2.push(y2);
        t.pred1.push(p1);
        t.pred2.push(p2);
    }
    debug_assert!((1..=k).all(|i| (0..n).all(|v| t.y1[i][v] >= t.y1[i - 1][v] && t.y2[i][v] >= t.y2[i - 1][v])));
    t
}

/// A walk realizing the final `table` entry at `v`, of length at most `k`.
pub fn reconstruct_walk(
    t: &WalkTables,
    g: &WeightedGraph,
    m: &Matching,
    v: VertexId,
    table: Table,
) -> Result<AlternatingWalk> {
    if !t.get(table, v).is_finite() {
        return Err(Error::EntryIsMinusInfinity);
    }
    let mut seq = vec![v];
    let (mut cur, mut tab, mut i) = (v, table, t.k);
    loop {
        while i > 0 && t.pred(tab, i, cur).is_none() {
            i -= 1;
        }
        if i == 0 {
            debug_assert_eq!(cur, t.source);
            break;
        }
        let u = t.pred(tab, i, cur).unwrap();
        seq.push(u);
        cur = u;
        tab = tab.other();
        i -= 1;
    }
    seq.reverse();
    AlternatingWalk::from_vertices(g, m, &seq)
}

/// What the walk searches from an exposed vertex `u` reveal.
#[derive(Debug, Clone)]
pub struct Structures {
    pub root: VertexId,
    /// An augmenting `uu`-walk of length at most `3n` exists.
    pub flower_at_root: bool,
    /// Lowest covered `v` with an augmenting `uv`-walk of length at most `3n`.
    pub aug_path_to_covered: Option<VertexId>,
    /// Lowest exposed `v != u` with an augmenting `uv`-walk of length at most `n`.
    pub aug_path_to_exposed: Option<VertexId>,
    /// Tables for `k = 3n`.
    pub long: WalkTables,
    /// Tables for `k = n`.
    pub short: WalkTables,
}

pub fn detect_structures(g: &WeightedGraph, m: &Matching, u: VertexId) -> Result<Structures> {
    if !m.is_exposed(u) {
        return Err(Error::VertexNotExposed(u));
    }
    let n = g.num_vertices();
    let long = optimal_walks(g, m, u, 3 * n);
    let short = optimal_walks(g, m, u, n);
    let flower_at_root = long.y1(u).is_positive();
    let aug_path_to_covered = (0..n).find(|&v| !m.is_exposed(v) && long.y2(v).is_positive());
    let aug_path_to_exposed = (0..n).find(|&v| v != u && m.is_exposed(v) && short.y1(v).is_positive());
    Ok(Structures {
        root: u,
        flower_at_root,
        aug_path_to_covered,
        aug_path_to_exposed,
        long,
        short,
    })
}

/// The augmenting substructures an augmenting walk must contain. Closed
/// sequences repeat their first vertex at the end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AugmentingStructure {
    Path(Vec<VertexId>),
    /// Even alternating cycle.
    Cycle(Vec<VertexId>),
    /// Blossom closed at its base, and a stem from the base to the root
    /// (just the base when the blossom is its own flower).
    Flower { blossom: Vec<VertexId>, stem: Vec<VertexId> },
    /// Two blossoms joined by an odd path between their bases.
    BiCycle {
        first: Vec<VertexId>,
        path: Vec<VertexId>,
        second: Vec<VertexId>,
    },
}

fn seq_value(g: &WeightedGraph, m: &Matching, seq: &[VertexId]) -> Rational {
    seq.windows(2)
        .map(|p| {
            let e = g.edge_between(p[0], p[1]).expect("walk edges exist");
            if m.contains(e) {
                -g.weight(e)
            } else {
                g.weight(e)
            }
        })
        .sum()
}

fn seq_flags(g: &WeightedGraph, m: &Matching, seq: &[VertexId]) -> Option<Vec<bool>> {
    seq.windows(2)
        .map(|p| g.edge_between(p[0], p[1]).map(|e| m.contains(e)))
        .collect()
}

fn alternates(flags: &[bool]) -> bool {
    flags.windows(2).all(|p| p[0] != p[1])
}

fn simple(seq: &[VertexId]) -> bool {
    let mut seen = std::collections::BTreeSet::new();
    seq.iter().all(|v| seen.insert(*v))
}

fn is_blossom(g: &WeightedGraph, m: &Matching, cyc: &[VertexId]) -> bool {
    let Some(flags) = seq_flags(g, m, cyc) else { return false };
    cyc.len() >= 4
        && cyc.first() == cyc.last()
        && flags.len() % 2 == 1
        && simple(&cyc[1..])
        && alternates(&flags)
        && !flags[0]
}

impl AugmentingStructure {
    /// Weight gain: paths and cycles count once, stems and bi-cycle paths twice.
    pub fn value(&self, g: &WeightedGraph, m: &Matching) -> Rational {
        match self {
            AugmentingStructure::Path(p) | AugmentingStructure::Cycle(p) => seq_value(g, m, p),
            AugmentingStructure::Flower { blossom, stem } => {
                seq_value(g, m, blossom) + Rational::from(2) * seq_value(g, m, stem)
            }
            AugmentingStructure::BiCycle { first, path, second } => {
                seq_value(g, m, first) + Rational::from(2) * seq_value(g, m, path) + seq_value(g, m, second)
            }
        }
    }

    /// Checks the shape against the definitions (not the sign of the value).
    pub fn is_well_formed(&self, g: &WeightedGraph, m: &Matching) -> bool {
        match self {
            AugmentingStructure::Path(p) => {
                let Some(flags) = seq_flags(g, m, p) else { return false };
                !flags.is_empty()
                    && simple(p)
                    && alternates(&flags)
                    && (m.is_exposed(p[0]) || flags[0])
                    && (m.is_exposed(*p.last().unwrap()) || *flags.last().unwrap())
            }
            AugmentingStructure::Cycle(c) => {
                let Some(flags) = seq_flags(g, m, c) else { return false };
                c.len() >= 5
                    && c.first() == c.last()
                    && flags.len() % 2 == 0
                    && simple(&c[1..])
                    && alternates(&flags)
                    && flags[0] != *flags.last().unwrap()
            }
            AugmentingStructure::Flower { blossom, stem } => {
                let Some(flags) = seq_flags(g, m, stem) else { return false };
                let root = *stem.last().unwrap();
                is_blossom(g, m, blossom)
                    && stem[0] == blossom[0]
                    && simple(stem)
                    && alternates(&flags)
                    && flags.first().is_none_or(|&f| f)
                    && (m.is_exposed(root) || *flags.last().unwrap())
            }
            AugmentingStructure::BiCycle { first, path, second } => {
                let Some(flags) = seq_flags(g, m, path) else { return false };
                is_blossom(g, m, first)
                    && is_blossom(g, m, second)
                    && path.first() == first.first()
                    && path.last() == second.first()
                    && simple(path)
                    && flags.len() % 2 == 1
                    && alternates(&flags)
                    && flags[0]
                    && *flags.last().unwrap()
            }
        }
    }
}

/// Splits a walk at its first repeated vertex, recursively: every piece is a
/// simple path or a simple closed walk, consecutive pieces sharing an end.
pub fn decompose_walk(seq: &[VertexId]) -> Vec<Vec<VertexId>> {
    let mut pieces = Vec::new();
    let mut rest = seq;
    loop {
        let mut first_seen = std::collections::HashMap::new();
        let mut split = None;
        for (j, &v) in rest.iter().enumerate() {
            if let Some(&i) = first_seen.get(&v) {
                split = Some((i, j));
                break;
            }
            first_seen.insert(v, j);
        }
        match split {
            None => {
                if rest.len() > 1 {
                    pieces.push(rest.to_vec());
                }
                return pieces;
            }
            Some((i, j)) => {
                if i > 0 {
                    pieces.push(rest[..=i].to_vec());
                }
                pieces.push(rest[i..=j].to_vec());
                rest = &rest[j..];
            }
        }
    }
}

fn is_closed(p: &[VertexId]) -> bool {
    p.len() > 1 && p.first() == p.last()
}

fn concat(pieces: &[Vec<VertexId>]) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = Vec::new();
    for p in pieces {
        if out.is_empty() {
            out.extend_from_slice(p);
        } else {
            out.extend_from_slice(&p[1..]);
        }
    }
    out
}

/// Finds an augmenting path, cycle, flower or bi-cycle inside an augmenting
/// walk by splitting off closed pieces, dropping even cycles, and pairing the
/// remaining blossoms with the paths around them.
pub fn extract_structure(g: &WeightedGraph, m: &Matching, walk: &AlternatingWalk) -> Option<AugmentingStructure> {
    if !seq_value(g, m, walk.vertices()).is_positive() {
        return None;
    }
    let mut seq = walk.vertices().to_vec();
    let pieces = loop {
        let pieces = decompose_walk(&seq);
        let even = |p: &Vec<VertexId>| is_closed(p) && (p.len() - 1).is_multiple_of(2);
        if let Some(c) = pieces.iter().find(|p| even(p) && seq_value(g, m, p).is_positive()) {
            return Some(AugmentingStructure::Cycle(c.clone()));
        }
        if !pieces.iter().any(even) {
            break pieces;
        }
        let kept: Vec<Vec<VertexId>> = pieces.into_iter().filter(|p| !even(p)).collect();
        seq = concat(&kept);
    };
    if pieces.is_empty() {
        return None;
    }
    let last = pieces.len() - 1;
    if pieces.len() == 1 {
        let p = pieces[0].clone();
        return Some(if is_closed(&p) {
            AugmentingStructure::Flower {
                stem: vec![p[0]],
                blossom: p,
            }
        } else {
            AugmentingStructure::Path(p)
        });
    }
    let positive = |s: AugmentingStructure| s.value(g, m).is_positive().then_some(s);

    // pieces alternate path, blossom, path, ..., path
    let mut head_stem = pieces[0].clone();
    head_stem.reverse();
    let head = AugmentingStructure::Flower {
        blossom: pieces[1].clone(),
        stem: head_stem,
    };
    if let Some(s) = positive(head) {
        return Some(s);
    }
    for i in (1..last.saturating_sub(1)).step_by(2) {
        let bi = AugmentingStructure::BiCycle {
            first: pieces[i].clone(),
            path: pieces[i + 1].clone(),
            second: pieces[i + 2].clone(),
        };
        if let Some(s) = positive(bi) {
            return Some(s);
        }
    }
    // the blossom before the tail is traversed ending at its base
    let tail = AugmentingStructure::Flower {
        blossom: pieces[last - 1].clone(),
        stem: pieces[last].clone(),
    };
    positive(tail)
}
