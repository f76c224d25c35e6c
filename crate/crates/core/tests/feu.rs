mod common;

use common::{brute_force_marginals, brute_force_trees, spans};
use fairpeano::corpus::{small_graphs, triangle_with_pendant, varied_weights};
use fairpeano::feu::{
    classify, deflate, densest_subgraphs, fair_support, forbidden_tree_witness, is_fair_tree,
    one_density, partner_tree, solve_feu_exact, solve_feu_frank_wolfe, uniformize, uniformize_from,
    Classification, Density,
};
use fairpeano::spanning::{kirchhoff_edge_probabilities, pmf_edge_probabilities};
use fairpeano::{Graph, ModifiedGrid, SpanningTree};
use proptest::prelude::*;

/// Optimality certificate independent of the solvers: `eta` lies in the
/// tree polytope (checked through a witness pmf elsewhere) and no tree has
/// smaller `<eta, x>` than `||eta||^2`.
fn certificate_gap(g: &Graph, eta: &[f64]) -> f64 {
    let norm2: f64 = eta.iter().map(|x| x * x).sum();
    let best = brute_force_trees(g)
        .iter()
        .map(|t| t.iter().map(|&e| eta[e]).sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    norm2 - best
}

#[test]
fn fair_characterization_is_exhaustive() {
    for (m, n) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
        let grid = ModifiedGrid::new(m, n).unwrap();
        let g = grid.graph();
        let mut fair = 0;
        for edges in brute_force_trees(g) {
            let one_per_pair = (0..grid.node_count()).all(|v| {
                let [a, b] = grid.cell(v);
                edges.contains(&a) as u8 + edges.contains(&b) as u8 == 1
            });
            let complement: Vec<usize> = (0..g.edge_count()).filter(|e| !edges.contains(e)).collect();
            let complement_spans = spans(g, &complement);
            let t = SpanningTree::new(g, edges).unwrap();
            let no_witness = forbidden_tree_witness(&grid, &t).unwrap().is_none();
            assert_eq!(one_per_pair, complement_spans, "({m},{n})");
            assert_eq!(one_per_pair, no_witness, "({m},{n})");
            assert_eq!(one_per_pair, is_fair_tree(&grid, &t).unwrap(), "({m},{n})");
            if one_per_pair {
                fair += 1;
                let partner = partner_tree(&grid, &t).unwrap();
                assert_eq!(partner.edges(), complement.as_slice());
            }
        }
        assert_eq!(fair, 1usize << (m * n), "({m},{n})");
    }
}

#[test]
fn exact_solver_on_modified_grids() {
    for (m, n) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 2)] {
        let grid = ModifiedGrid::new(m, n).unwrap();
        let s = solve_feu_exact(grid.graph(), 1e-14).unwrap();
        assert!(s.eta.iter().all(|x| (x - 0.5).abs() < 1e-9), "({m},{n})");
        assert!(s.variance < 1e-15);
        assert!(s.homogeneous);
    }
}

#[test]
fn triangle_with_pendant_usage() {
    let g = triangle_with_pendant();
    let s = solve_feu_exact(&g, 1e-14).unwrap();
    let want = [2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 1.0];
    for (a, b) in s.eta.iter().zip(want) {
        assert!((a - b).abs() < 1e-6);
    }
    assert!(!s.homogeneous);
}

#[test]
fn solvers_agree_and_certify_on_corpus() {
    for (name, g) in small_graphs() {
        let exact = solve_feu_exact(&g, 1e-14).unwrap();
        let fw = solve_feu_frank_wolfe(&g, 1e-12, 1_000_000).unwrap();
        assert!(fw.converged, "{name}");
        for e in 0..g.edge_count() {
            assert!((exact.eta[e] - fw.eta[e]).abs() < 1e-5, "{name} edge {e}");
        }
        assert!(certificate_gap(&g, &exact.eta) < 1e-9, "{name}");
        // the witness pmf reproduces eta
        let from_witness = pmf_edge_probabilities(&exact.witness);
        for e in 0..g.edge_count() {
            assert!((from_witness[e] - exact.eta[e]).abs() < 1e-9, "{name} edge {e}");
        }
        let spread = exact.eta.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
            - exact.eta.iter().cloned().fold(f64::INFINITY, f64::min);
        assert_eq!(
            classify(&g).unwrap().is_homogeneous(),
            spread < 1e-7,
            "{name}: classification disagrees with eta spread {spread}"
        );
        assert_eq!(exact.homogeneous, spread < 1e-7, "{name}");
    }
}

#[test]
fn fair_support_matches_fair_trees() {
    for (m, n) in [(1, 1), (1, 2), (2, 2)] {
        let grid = ModifiedGrid::new(m, n).unwrap();
        let s = solve_feu_exact(grid.graph(), 1e-14).unwrap();
        let sup = fair_support(grid.graph(), &s.eta).unwrap();
        assert_eq!(sup.fair.len(), 1 << (m * n));
        for t in &sup.fair {
            assert!(is_fair_tree(&grid, t).unwrap());
        }
        for t in &sup.forbidden {
            assert!(!is_fair_tree(&grid, t).unwrap());
        }
    }
}

/// Direct density scan over vertex subsets with its own connectivity check.
fn max_proper_density(g: &Graph) -> Option<(u64, u64)> {
    let v = g.vertex_count();
    let full = (1u32 << v) - 1;
    let mut best: Option<(u64, u64)> = None;
    for mask in 1..full {
        let k = mask.count_ones() as u64;
        if k < 2 {
            continue;
        }
        let inside: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1)
            .collect();
        let mut reach = 1u32 << mask.trailing_zeros();
        loop {
            let before = reach;
            for &(a, b) in &inside {
                if reach >> a & 1 == 1 || reach >> b & 1 == 1 {
                    reach |= 1 << a | 1 << b;
                }
            }
            if reach == before {
                break;
            }
        }
        if reach != mask {
            continue;
        }
        let d = (inside.len() as u64, k - 1);
        if best.map_or(true, |b| d.0 * b.1 > b.0 * d.1) {
            best = Some(d);
        }
    }
    best
}

#[test]
fn standard_grids_are_strictly_one_dense() {
    for m in 2..=4 {
        for n in 2..=4 {
            let g = Graph::standard_grid(m, n).unwrap();
            let theta = ((2 * m * n - m - n) as u64, (m * n - 1) as u64);
            assert_eq!(one_density(&g).unwrap(), Density::new(theta.0, theta.1).unwrap());
            let proper = max_proper_density(&g).unwrap();
            assert!(proper.0 * theta.1 < theta.0 * proper.1, "{m}x{n}");
            assert_eq!(classify(&g).unwrap(), Classification::StrictlyOneDense, "{m}x{n}");
        }
    }
}

#[test]
fn grid_densities_increase_and_stay_below_two() {
    let theta = |m: usize, n: usize| one_density(&Graph::standard_grid(m, n).unwrap()).unwrap();
    let two = Density::new(2, 1).unwrap();
    // 1 x n grids are paths with density 1, so the range starts at 2
    for m in 2..=6 {
        for n in 2..=6 {
            let d = theta(m, n);
            assert!(d < two, "{m}x{n}");
            // definitional closed form
            assert_eq!(
                d,
                Density::new((2 * m * n - m - n) as u64, (m * n - 1) as u64).unwrap()
            );
            if m < 6 {
                assert!(theta(m + 1, n) > d, "{m}x{n} -> m+1");
            }
            if n < 6 {
                assert!(theta(m, n + 1) > d, "{m}x{n} -> n+1");
            }
        }
    }
}

#[test]
fn modified_grids_deflate_into_digons() {
    for (m, n) in [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3), (3, 2)] {
        let grid = ModifiedGrid::new(m, n).unwrap();
        let seq = deflate(grid.graph()).unwrap();
        assert_eq!(seq.len(), m * n, "({m},{n})");
        for stage in &seq.stages {
            assert_eq!(stage.density, Density::new(2, 1).unwrap());
            assert_eq!(stage.core_vertices.len(), 2);
            assert_eq!(stage.core_edges.len(), 2);
            let core = stage.graph.induced_subgraph(&stage.core_vertices).unwrap();
            assert_eq!(classify(&core.graph).unwrap(), Classification::StrictlyOneDense);
        }
        assert_eq!(seq.final_graph().unwrap().vertex_count(), 1);
        let mut used: Vec<usize> = seq
            .stages
            .iter()
            .flat_map(|s| s.core_original_edges.iter().copied())
            .collect();
        used.sort_unstable();
        assert_eq!(used, (0..grid.graph().edge_count()).collect::<Vec<_>>());
    }
}

#[test]
fn eta_is_constant_on_the_densest_core() {
    for (name, g) in small_graphs() {
        let scan = densest_subgraphs(&g).unwrap();
        let s = solve_feu_exact(&g, 1e-14).unwrap();
        let core = scan.minimal_cores().next().unwrap();
        let sub = g.induced_subgraph(&core.vertices).unwrap();
        let (p, q) = core.density.reduced();
        let want = q as f64 / p as f64;
        for &e in &sub.edge_map {
            assert!((s.eta[e] - want).abs() < 1e-7, "{name} edge {e}: {} vs {want}", s.eta[e]);
        }
    }
}

#[test]
fn uniformize_is_unique() {
    for (m, n) in [(2, 3), (3, 3)] {
        let g = Graph::standard_grid(m, n).unwrap();
        let target = (g.vertex_count() - 1) as f64 / g.edge_count() as f64;
        let a = uniformize(&g, 1e-10, 10_000).unwrap();
        let b = uniformize_from(&g, &varied_weights(&g), 1e-10, 10_000).unwrap();
        for u in [&a, &b] {
            assert!(u.residual <= 1e-8);
            let p = kirchhoff_edge_probabilities(&g, &u.weights).unwrap();
            let oracle = brute_force_marginals(&g, u.weights.as_slice());
            for e in 0..g.edge_count() {
                assert!((p[e] - target).abs() <= 1e-8);
                assert!((oracle[e] - target).abs() <= 1e-8);
            }
            let log_mean: f64 =
                u.weights.as_slice().iter().map(|w| w.ln()).sum::<f64>() / g.edge_count() as f64;
            assert!(log_mean.abs() < 1e-12);
        }
        for (x, y) in a.weights.as_slice().iter().zip(b.weights.as_slice()) {
            assert!((x - y).abs() < 1e-6);
        }
    }
}

#[test]
fn uniformize_rejects_inhomogeneous_graphs() {
    assert!(matches!(
        uniformize(&triangle_with_pendant(), 1e-10, 100),
        Err(fairpeano::Error::Precondition(_))
    ));
}

fn connected_multigraph() -> impl Strategy<Value = Graph> {
    (2usize..7).prop_flat_map(|v| {
        let tree = proptest::collection::vec(any::<prop::sample::Index>(), v - 1);
        let extra = proptest::collection::vec((0..v, 0..v), 0..6);
        (Just(v), tree, extra).prop_map(|(v, tree, extra)| {
            let mut edges: Vec<(usize, usize)> = tree
                .iter()
                .enumerate()
                .map(|(k, ix)| (ix.index(k + 1), k + 1))
                .collect();
            edges.extend(extra.into_iter().filter(|(a, b)| a != b));
            Graph::new(v, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn contraction_invariants(g in connected_multigraph(), mask in any::<u32>()) {
        let vertices: Vec<usize> = (0..g.vertex_count()).filter(|v| mask >> v & 1 == 1).collect();
        prop_assume!(vertices.len() >= 2);
        let sub = g.induced_subgraph(&vertices).unwrap();
        prop_assume!(sub.graph.is_connected());
        let q = g.contract(&sub.edge_map).unwrap();
        prop_assert_eq!(q.graph.vertex_count(), g.vertex_count() - vertices.len() + 1);
        prop_assert_eq!(q.graph.edge_count(), g.edge_count() - sub.graph.edge_count());
        for (k, &e) in q.edge_map.iter().enumerate() {
            let (a, b) = g.edge(e);
            let (qa, qb) = q.graph.edge(k);
            let mapped = (q.vertex_map[a], q.vertex_map[b]);
            prop_assert!(mapped == (qa, qb) || mapped == (qb, qa));
            prop_assert!(!sub.edge_map.contains(&e));
        }
        for &v in &vertices {
            prop_assert_eq!(q.vertex_map[v], q.merged);
        }
        prop_assert!(q.graph.is_connected());
    }

    #[test]
    fn solvers_agree_on_random_graphs(g in connected_multigraph()) {
        let exact = solve_feu_exact(&g, 1e-14).unwrap();
        let fw = solve_feu_frank_wolfe(&g, 1e-12, 1_000_000).unwrap();
        prop_assert!(fw.converged);
        for e in 0..g.edge_count() {
            prop_assert!((exact.eta[e] - fw.eta[e]).abs() < 1e-5);
        }
        prop_assert!(certificate_gap(&g, &exact.eta) < 1e-9);
        let total: f64 = exact.eta.iter().sum();
        prop_assert!((total - (g.vertex_count() - 1) as f64).abs() < 1e-9);
    }
}
