//! Seeded random instances for property suites and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Matching, WeightedGraph};
use crate::rational::Rational;

/// Parameters for [`random_graphs`].
#[derive(Debug, Clone)]
pub struct GraphSpec {
    pub min_vertices: usize,
    pub max_vertices: usize,
    /// Each edge is present with probability drawn uniformly from this range.
    pub density: (f64, f64),
    /// Edge weights are drawn uniformly from this list.
    pub weights: Vec<Rational>,
}

impl GraphSpec {
    /// Integer weights `lo..=hi`.
    pub fn integer_weights(min_vertices: usize, max_vertices: usize, lo: i64, hi: i64) -> Self {
        GraphSpec {
            min_vertices,
            max_vertices,
            density: (0.25, 0.85),
            weights: (lo..=hi).map(Rational::from).collect(),
        }
    }

    pub fn unit_weights(min_vertices: usize, max_vertices: usize) -> Self {
        Self::integer_weights(min_vertices, max_vertices, 1, 1)
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph<R: Rng>(rng: &mut R, spec: &GraphSpec) -> WeightedGraph {
    let n = rng.gen_range(spec.min_vertices..=spec.max_vertices);
    let p = rng.gen_range(spec.density.0..=spec.density.1);
    let mut g = WeightedGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                let w = *spec.weights.choose(rng).expect("nonempty weight list");
                g.add_edge(u, v, w).expect("simple by construction");
            }
        }
    }
    g
}

/// `count` graphs from one seed; the same seed always gives the same list.
pub fn random_graphs(seed: u64, count: usize, spec: &GraphSpec) -> Vec<WeightedGraph> {
    let mut r = rng(seed);
    (0..count).map(|_| random_graph(&mut r, spec)).collect()
}

/// A random (not necessarily maximal) matching: edges in random order, each
/// kept with probability `keep` when both ends are still free.
pub fn random_matching<R: Rng>(rng: &mut R, g: &WeightedGraph, keep: f64) -> Matching {
    let mut order: Vec<usize> = (0..g.num_edges()).collect();
    order.shuffle(rng);
    let mut used = vec![false; g.num_vertices()];
    let mut chosen = Vec::new();
    for e in order {
        let edge = g.edge(e);
        if !used[edge.u] && !used[edge.v] && rng.gen_bool(keep) {
            used[edge.u] = true;
            used[edge.v] = true;
            chosen.push(e);
        }
    }
    Matching::new(g, chosen).expect("disjoint by construction")
}
