//! Small named instances used throughout the test suites and shipped as JSON
//! under `fixtures/`.

use crate::graph::{Matching, WeightedGraph};
use crate::rational::Rational;

fn build(labels: &[&str], edges: &[(&str, &str, Rational)]) -> WeightedGraph {
    let mut g = WeightedGraph::with_labels(labels.iter().map(|s| s.to_string()).collect())
        .expect("fixture labels are unique");
    for (a, b, w) in edges {
        let u = g.vertex_by_label(a).unwrap();
        let v = g.vertex_by_label(b).unwrap();
        g.add_edge(u, v, *w).expect("fixture edges are simple");
    }
    g
}

fn int(n: i64) -> Rational {
    Rational::from(n)
}

/// Two triangles of weight 2 joined by the path 1-4-5-6 with weights 1, 1/2, 1.
/// `γ = 2`, yet deleting the single edge 45 stabilizes it.
pub fn fig6() -> WeightedGraph {
    build(
        &["1", "2", "3", "4", "5", "6", "7", "8"],
        &[
            ("1", "2", int(2)),
            ("1", "3", int(2)),
            ("2", "3", int(2)),
            ("1", "4", int(1)),
            ("4", "5", Rational::HALF),
            ("5", "6", int(1)),
            ("6", "7", int(2)),
            ("6", "8", int(2)),
            ("7", "8", int(2)),
        ],
    )
}

/// Triangle of weight 2 with a pendant edge of weight `1 - eps` at vertex 1.
pub fn fig7(eps: Rational) -> WeightedGraph {
    build(
        &["1", "2", "3", "4"],
        &[
            ("1", "2", int(2)),
            ("1", "3", int(2)),
            ("2", "3", int(2)),
            ("1", "4", Rational::ONE - eps),
        ],
    )
}

/// The five-vertex graph whose unique minimum edge-stabilizer is `{qr}`.
pub fn fig8() -> WeightedGraph {
    build(
        &["p", "q", "r", "s", "t"],
        &[
            ("q", "r", int(4)),
            ("s", "t", int(4)),
            ("p", "q", int(3)),
            ("p", "t", int(3)),
            ("r", "s", int(3)),
            ("q", "s", int(3)),
            ("p", "r", int(3)),
        ],
    )
}

/// Triangle `pqr` of weight 4 with a pendant edge `ps` of weight 1.
pub fn fig9() -> WeightedGraph {
    build(
        &["p", "q", "r", "s"],
        &[
            ("p", "q", int(4)),
            ("p", "r", int(4)),
            ("q", "r", int(4)),
            ("p", "s", int(1)),
        ],
    )
}

/// The maximum-weight matching `{qr, ps}` of [`fig9`].
pub fn fig9_matching(g: &WeightedGraph) -> Matching {
    let v = |l: &str| g.vertex_by_label(l).unwrap();
    Matching::from_pairs(g, &[(v("q"), v("r")), (v("p"), v("s"))]).unwrap()
}

/// Two unit-weight triangles `{a,b,c}` and `{d,e,f}` joined by the edge `cd`.
pub fn twin_triangles() -> WeightedGraph {
    build(
        &["a", "b", "c", "d", "e", "f"],
        &[
            ("a", "b", int(1)),
            ("b", "c", int(1)),
            ("a", "c", int(1)),
            ("d", "e", int(1)),
            ("e", "f", int(1)),
            ("d", "f", int(1)),
            ("c", "d", int(1)),
        ],
    )
}
