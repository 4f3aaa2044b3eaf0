//! Brute-force ground truth for small graphs.
//!
//! Everything here is exponential and guarded by an [`OracleBudget`]; these
//! routines exist to check the polynomial algorithms, not to replace them.

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::fractional::{decompose, BasicFractionalMatching};
use crate::graph::{EdgeId, Matching, VertexId, WeightedGraph};
use crate::par::Execution;
use crate::rational::Rational;
use crate::walk::AlternatingWalk;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Largest graph accepted by the matching and basic-solution searches.
    pub max_vertices: usize,
    /// Largest graph accepted by the stabilizer subset searches.
    pub max_subset_vertices: usize,
    pub max_walk_length: usize,
    /// Cap on the number of walk prefixes visited by a single enumeration.
    pub max_walk_steps: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 12,
            max_subset_vertices: 8,
            max_walk_length: 12,
            max_walk_steps: 5_000_000,
        }
    }
}

impl OracleBudget {
    fn check_vertices(&self, g: &WeightedGraph) -> Result<()> {
        if g.num_vertices() > self.max_vertices {
            return Err(Error::BudgetExceeded(format!(
                "{} vertices, limit {}",
                g.num_vertices(),
                self.max_vertices
            )));
        }
        Ok(())
    }

    fn check_subsets(&self, g: &WeightedGraph) -> Result<()> {
        if g.num_vertices() > self.max_subset_vertices {
            return Err(Error::BudgetExceeded(format!(
                "{} vertices, subset limit {}",
                g.num_vertices(),
                self.max_subset_vertices
            )));
        }
        Ok(())
    }
}

fn weight_matrix(g: &WeightedGraph) -> Vec<Vec<Option<Rational>>> {
    let n = g.num_vertices();
    let mut w = vec![vec![None; n]; n];
    for e in g.edges() {
        w[e.u][e.v] = Some(e.weight);
        w[e.v][e.u] = Some(e.weight);
    }
    w
}

/// Maximum-weight matching value and one matching attaining it.
pub fn exact_nu(g: &WeightedGraph, budget: &OracleBudget) -> Result<(Rational, Matching)> {
    budget.check_vertices(g)?;
    let n = g.num_vertices();
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut memo: HashMap<u64, (Rational, Option<(VertexId, VertexId)>)> = HashMap::new();

    fn best(
        g: &WeightedGraph,
        rest: u64,
        memo: &mut HashMap<u64, (Rational, Option<(VertexId, VertexId)>)>,
    ) -> Rational {
        if rest == 0 {
            return Rational::ZERO;
        }
        if let Some(&(v, _)) = memo.get(&rest) {
            return v;
        }
        let v = rest.trailing_zeros() as usize;
        let without = rest & !(1u64 << v);
        let mut value = best(g, without, memo);
        let mut choice = None;
        for &(u, e) in g.incident(v) {
            if without & (1u64 << u) != 0 {
                let cand = g.weight(e) + best(g, without & !(1u64 << u), memo);
                if cand > value {
                    value = cand;
                    choice = Some((v, u));
                }
            }
        }
        memo.insert(rest, (value, choice));
        value
    }

    let value = best(g, full, &mut memo);
    let mut pairs = Vec::new();
    let mut rest = full;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= !(1u64 << v);
        if let Some((_, Some((a, b)))) = memo.get(&(rest | (1u64 << v))) {
            pairs.push((*a, *b));
            rest &= !(1u64 << b);
        }
    }
    let m = Matching::from_pairs(g, &pairs)?;
    debug_assert_eq!(m.weight(g), value);
    Ok((value, m))
}

/// Best value and fewest cycles over all basic fractional matchings.
struct BasicSearch {
    n: usize,
    /// Heaviest Hamiltonian cycle on each odd vertex set of size at least 3.
    cycle: Vec<Option<Rational>>,
    w: Vec<Vec<Option<Rational>>>,
    memo: Vec<Option<(Rational, usize)>>,
}

impl BasicSearch {
    fn new(g: &WeightedGraph) -> Self {
        let n = g.num_vertices();
        let w = weight_matrix(g);
        let size = 1usize << n;
        // path[mask][end]: heaviest path from min(mask) to `end` through all of mask
        let mut path: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; size];
        for v in 0..n {
            path[1 << v][v] = Some(Rational::ZERO);
        }
        for mask in 1..size {
            let start = mask.trailing_zeros() as usize;
            for end in 0..n {
                let Some(cur) = path[mask][end] else { continue };
                for next in start + 1..n {
                    if mask & (1 << next) != 0 {
                        continue;
                    }
                    if let Some(wt) = w[end][next] {
                        let slot = &mut path[mask | (1 << next)][next];
                        let cand = cur + wt;
                        if slot.is_none_or(|s| cand > s) {
                            *slot = Some(cand);
                        }
                    }
                }
            }
        }
        let mut cycle = vec![None; size];
        for (mask, ends) in path.iter().enumerate() {
            if mask.count_ones() < 3 || mask.count_ones() % 2 == 0 {
                continue;
            }
            let start = mask.trailing_zeros() as usize;
            for (end, p) in ends.iter().enumerate() {
                if let (Some(p), Some(wt)) = (p, w[end][start]) {
                    let cand = *p + wt;
                    if cycle[mask].is_none_or(|c| cand > c) {
                        cycle[mask] = Some(cand);
                    }
                }
            }
        }
        BasicSearch {
            n,
            cycle,
            w,
            memo: vec![None; size],
        }
    }

    fn better(a: (Rational, usize), b: (Rational, usize)) -> bool {
        a.0 > b.0 || (a.0 == b.0 && a.1 < b.1)
    }

    fn solve(&mut self, rest: usize) -> (Rational, usize) {
        if rest == 0 {
            return (Rational::ZERO, 0);
        }
        if let Some(r) = self.memo[rest] {
            return r;
        }
        let v = rest.trailing_zeros() as usize;
        let without = rest & !(1 << v);
        let mut best = self.solve(without);
        for u in v + 1..self.n {
            if without & (1 << u) == 0 {
                continue;
            }
            if let Some(wt) = self.w[v][u] {
                let (val, c) = self.solve(without & !(1 << u));
                let cand = (val + wt, c);
                if Self::better(cand, best) {
                    best = cand;
                }
            }
        }
        // odd cycles whose lowest vertex is v
        let mut sub = without;
        while sub != 0 {
            let mask = sub | (1 << v);
            if let Some(cw) = self.cycle[mask] {
                let (val, c) = self.solve(rest & !mask);
                let cand = (val + cw * Rational::HALF, c + 1);
                if Self::better(cand, best) {
                    best = cand;
                }
            }
            sub = (sub - 1) & without;
        }
        self.memo[rest] = Some(best);
        best
    }
}

fn basic_optimum(g: &WeightedGraph, budget: &OracleBudget) -> Result<(Rational, usize)> {
    budget.check_vertices(g)?;
    let mut search = BasicSearch::new(g);
    let full = (1usize << g.num_vertices()) - 1;
    Ok(search.solve(full))
}

/// Maximum-weight fractional matching value, by enumerating basic solutions.
pub fn exact_nu_f(g: &WeightedGraph, budget: &OracleBudget) -> Result<Rational> {
    basic_optimum(g, budget).map(|(v, _)| v)
}

/// Fewest odd cycles over all basic maximum-weight fractional matchings.
pub fn brute_gamma(g: &WeightedGraph, budget: &OracleBudget) -> Result<usize> {
    basic_optimum(g, budget).map(|(_, c)| c)
}

/// Basic maximum-weight fractional matchings in a fixed enumeration order,
/// stopping after `limit`.
pub fn basic_optima(g: &WeightedGraph, budget: &OracleBudget, limit: usize) -> Result<Vec<BasicFractionalMatching>> {
    budget.check_vertices(g)?;
    let n = g.num_vertices();
    let mut search = BasicSearch::new(g);
    let full = (1usize << n) - 1;
    let target = search.solve(full).0;

    struct Enum<'a> {
        g: &'a WeightedGraph,
        search: BasicSearch,
        target: Rational,
        limit: usize,
        x: Vec<Rational>,
        out: Vec<Vec<Rational>>,
    }
    impl Enum<'_> {
        fn go(&mut self, rest: usize, value: Rational) -> Result<()> {
            if value + self.search.solve(rest).0 < self.target {
                return Ok(());
            }
            if self.out.len() == self.limit {
                return Ok(());
            }
            if rest == 0 {
                self.out.push(self.x.clone());
                return Ok(());
            }
            let v = rest.trailing_zeros() as usize;
            let without = rest & !(1 << v);
            self.go(without, value)?;
            let g = self.g;
            for &(u, e) in g.incident(v) {
                if without & (1 << u) != 0 {
                    self.x[e] = Rational::ONE;
                    self.go(without & !(1 << u), value + g.weight(e))?;
                    self.x[e] = Rational::ZERO;
                }
            }
            let mut cycles = Vec::new();
            let mut path = vec![v];
            odd_cycles_from(g, v, without, &mut path, &mut cycles);
            for cyc in cycles {
                let mut mask = 0usize;
                let mut w = Rational::ZERO;
                let edges: Vec<EdgeId> = (0..cyc.len())
                    .map(|i| g.edge_between(cyc[i], cyc[(i + 1) % cyc.len()]).unwrap())
                    .collect();
                for (&c, &e) in cyc.iter().zip(&edges) {
                    mask |= 1 << c;
                    w += g.weight(e);
                    self.x[e] = Rational::HALF;
                }
                self.go(rest & !mask, value + w * Rational::HALF)?;
                for &e in &edges {
                    self.x[e] = Rational::ZERO;
                }
            }
            Ok(())
        }
    }

    let mut en = Enum {
        g,
        search,
        target,
        limit,
        x: vec![Rational::ZERO; g.num_edges()],
        out: Vec::new(),
    };
    en.go(full, Rational::ZERO)?;
    en.out.iter().map(|x| decompose(x, g)).collect()
}

/// Simple odd cycles through `path[0]` using only vertices of `allowed`
/// (all larger than `path[0]`), each listed in one direction.
fn odd_cycles_from(g: &WeightedGraph, start: VertexId, allowed: usize, path: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
    let last = *path.last().unwrap();
    if path.len() >= 3 && path.len() % 2 == 1 && path[1] < last && g.edge_between(last, start).is_some() {
        out.push(path.clone());
    }
    for &(u, _) in g.incident(last) {
        if allowed & (1 << u) != 0 && !path.contains(&u) {
            path.push(u);
            odd_cycles_from(g, start, allowed, path, out);
            path.pop();
        }
    }
}

pub fn is_stable(g: &WeightedGraph, budget: &OracleBudget) -> Result<bool> {
    let (nu, _) = exact_nu(g, budget)?;
    Ok(nu == exact_nu_f(g, budget)?)
}

/// First subset in (size, lexicographic) order accepted by `ok`, searching
/// each size class with `exec`.
fn smallest_subset<F>(universe: &[usize], exec: Execution, ok: F) -> Result<Option<Vec<usize>>>
where
    F: Fn(&[usize]) -> Result<bool> + Sync + Send,
{
    for k in 0..=universe.len() {
        let candidates: Vec<Vec<usize>> = universe.iter().copied().combinations(k).collect();
        let results = exec.map(&candidates, |c| ok(c));
        for (c, r) in candidates.into_iter().zip(results) {
            if r? {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

/// Smallest vertex set whose removal leaves a stable graph.
pub fn brute_min_vertex_stabilizer(
    g: &WeightedGraph,
    budget: &OracleBudget,
    exec: Execution,
) -> Result<Vec<VertexId>> {
    budget.check_subsets(g)?;
    let universe: Vec<VertexId> = (0..g.num_vertices()).collect();
    let found = smallest_subset(&universe, exec, |s| is_stable(&g.without_vertices(s).graph, budget))?;
    Ok(found.expect("the empty graph is stable"))
}

/// Smallest edge set whose removal leaves a stable graph.
pub fn brute_min_edge_stabilizer(
    g: &WeightedGraph,
    budget: &OracleBudget,
    exec: Execution,
) -> Result<Vec<EdgeId>> {
    budget.check_subsets(g)?;
    let universe: Vec<EdgeId> = (0..g.num_edges()).collect();
    let found = smallest_subset(&universe, exec, |f| is_stable(&g.without_edges(f).0, budget))?;
    Ok(found.expect("the edgeless graph is stable"))
}

/// Whether removing `s` (disjoint from the matched vertices) leaves a stable
/// graph in which `m` is a maximum-weight matching.
pub fn is_m_stabilizer(g: &WeightedGraph, m: &Matching, s: &[VertexId], budget: &OracleBudget) -> Result<bool> {
    if s.iter().any(|&v| !m.is_exposed(v)) {
        return Ok(false);
    }
    let sub = g.without_vertices(s);
    // w(M) <= nu <= nu_f, so equality at the ends pins down both conditions
    Ok(m.weight(g) == exact_nu_f(&sub.graph, budget)?)
}

/// Smallest set of `m`-exposed vertices whose removal leaves a stable graph
/// with `m` still maximum-weight; `None` if no such set exists.
pub fn brute_min_m_stabilizer(
    g: &WeightedGraph,
    m: &Matching,
    budget: &OracleBudget,
    exec: Execution,
) -> Result<Option<Vec<VertexId>>> {
    budget.check_subsets(g)?;
    let universe: Vec<VertexId> = m.exposed_vertices().collect();
    smallest_subset(&universe, exec, |s| is_m_stabilizer(g, m, s, budget))
}

/// Depth-first search over alternating walks from `s`, calling `visit` on
/// every valid walk of length at most `k` (including the empty one when valid).
fn walk_search<F>(
    g: &WeightedGraph,
    m: &Matching,
    s: VertexId,
    k: usize,
    budget: &OracleBudget,
    mut visit: F,
) -> Result<()>
where
    F: FnMut(&[VertexId], Rational),
{
    if k > budget.max_walk_length {
        return Err(Error::BudgetExceeded(format!(
            "walk length {k}, limit {}",
            budget.max_walk_length
        )));
    }
    struct Ctx<'a, F> {
        g: &'a WeightedGraph,
        m: &'a Matching,
        k: usize,
        steps: usize,
        limit: usize,
        seq: Vec<VertexId>,
        visit: F,
    }
    fn go<F: FnMut(&[VertexId], Rational)>(ctx: &mut Ctx<'_, F>, value: Rational, last_matched: Option<bool>) -> Result<()> {
        ctx.steps += 1;
        if ctx.steps > ctx.limit {
            return Err(Error::BudgetExceeded(format!("more than {} walk prefixes", ctx.limit)));
        }
        let v = *ctx.seq.last().unwrap();
        let start_ok = ctx.m.is_exposed(ctx.seq[0]) || (last_matched.is_some() && ctx.seq.len() > 1);
        let end_ok = ctx.m.is_exposed(v) || last_matched == Some(true);
        if start_ok && end_ok {
            (ctx.visit)(&ctx.seq, value);
        }
        if ctx.seq.len() > ctx.k {
            return Ok(());
        }
        let g = ctx.g;
        for &(u, e) in g.incident(v) {
            let matched = ctx.m.contains(e);
            if last_matched == Some(matched) {
                continue;
            }
            // a walk from a covered start must open with its matched edge
            if last_matched.is_none() && !ctx.m.is_exposed(ctx.seq[0]) && !matched {
                continue;
            }
            let w = g.weight(e);
            ctx.seq.push(u);
            let next = if matched { value - w } else { value + w };
            go(ctx, next, Some(matched))?;
            ctx.seq.pop();
        }
        Ok(())
    }
    let mut ctx = Ctx {
        g,
        m,
        k,
        steps: 0,
        limit: budget.max_walk_steps,
        seq: vec![s],
        visit: &mut visit,
    };
    go(&mut ctx, Rational::ZERO, None)
}

/// Every valid alternating walk from `s` of length at most `k`, with its
/// endpoint and value.
pub fn enumerate_valid_walks(
    g: &WeightedGraph,
    m: &Matching,
    s: VertexId,
    k: usize,
    budget: &OracleBudget,
) -> Result<Vec<(VertexId, Rational, AlternatingWalk)>> {
    let mut out = Vec::new();
    walk_search(g, m, s, k, budget, |seq, value| {
        out.push((*seq.last().unwrap(), value, seq.to_vec()));
    })?;
    out.into_iter()
        .map(|(v, val, seq)| Ok((v, val, AlternatingWalk::from_vertices(g, m, &seq)?)))
        .collect()
}

/// `best[j][v]`: the largest value of a valid walk from `s` to `v` with
/// exactly `j` edges, for `j = 0..=k`.
pub fn best_walk_values_by_length(
    g: &WeightedGraph,
    m: &Matching,
    s: VertexId,
    k: usize,
    budget: &OracleBudget,
) -> Result<Vec<Vec<Option<Rational>>>> {
    let mut best = vec![vec![None::<Rational>; g.num_vertices()]; k + 1];
    walk_search(g, m, s, k, budget, |seq, value| {
        let slot = &mut best[seq.len() - 1][*seq.last().unwrap()];
        if slot.is_none_or(|b| value > b) {
            *slot = Some(value);
        }
    })?;
    Ok(best)
}

/// Largest value of a valid walk from `s` to each vertex with at most `k`
/// edges; `None` where no such walk exists.
pub fn best_walk_values(
    g: &WeightedGraph,
    m: &Matching,
    s: VertexId,
    k: usize,
    budget: &OracleBudget,
) -> Result<Vec<Option<Rational>>> {
    let by_len = best_walk_values_by_length(g, m, s, k, budget)?;
    Ok(prefix_max(&by_len).pop().unwrap())
}

/// Running maximum over lengths: entry `j` covers walks of length at most `j`.
pub fn prefix_max(by_len: &[Vec<Option<Rational>>]) -> Vec<Vec<Option<Rational>>> {
    let mut out: Vec<Vec<Option<Rational>>> = Vec::with_capacity(by_len.len());
    for row in by_len {
        let next = match out.last() {
            None => row.clone(),
            Some(prev) => prev.iter().zip(row).map(|(a, b)| (*a).max(*b)).collect(),
        };
        out.push(next);
    }
    out
}
