//! Small reference graphs used by the tests, the acceptance target and the
//! examples in the README.

use crate::graph::{Graph, ModifiedGrid};
use crate::spanning::EdgeWeights;

/// Triangle `0-1-2` with a pendant vertex `3` hanging off vertex 2.
pub fn triangle_with_pendant() -> Graph {
    Graph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)]).expect("valid graph")
}

/// Named graphs with at most 10 vertices: digon, triangle, triangle plus
/// pendant, `K4`, standard grids up to `3 x 3`, modified grids up to
/// `(2, 3)` and a few multigraphs.
pub fn small_graphs() -> Vec<(String, Graph)> {
    let mut out = vec![
        ("digon".to_string(), Graph::digon()),
        ("triangle".to_string(), Graph::triangle()),
        ("triangle_pendant".to_string(), triangle_with_pendant()),
        ("k4".to_string(), Graph::complete(4).expect("valid graph")),
    ];
    for (m, n) in [(2, 2), (2, 3), (3, 3)] {
        out.push((format!("grid_{m}x{n}"), Graph::standard_grid(m, n).expect("valid grid")));
    }
    for (m, n) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
        let g = ModifiedGrid::new(m, n).expect("valid grid");
        out.push((format!("modified_grid_{m}_{n}"), g.graph().clone()));
    }
    let multi = [
        ("triangle_doubled_edge", 3, vec![(0, 1), (0, 1), (1, 2), (2, 0)]),
        ("k4_doubled_edge", 4, vec![(0, 1), (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
        ("square_with_chord", 4, vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]),
        ("tripled_digon_pendant", 3, vec![(0, 1), (0, 1), (0, 1), (1, 2)]),
    ];
    for (name, v, edges) in multi {
        out.push((name.to_string(), Graph::new(v, edges).expect("valid graph")));
    }
    out
}

/// Deterministic non-uniform weights `1, 2.5, 1.5, 3, 2`, repeating with
/// period 5 so they never align with the period-2 grid edge pairs.
pub fn varied_weights(g: &Graph) -> EdgeWeights {
    EdgeWeights::new(
        (0..g.edge_count())
            .map(|e| 1.0 + ((3 * e) % 5) as f64 / 2.0)
            .collect(),
    )
    .expect("positive weights")
}
