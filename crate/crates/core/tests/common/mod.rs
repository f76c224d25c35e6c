//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's enumeration or linear algebra.

#![allow(dead_code)]

use fairpeano::Graph;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

/// Whether the edge subset is acyclic and spans, checked with a plain
/// union-find.
pub fn spans(g: &Graph, edges: &[usize]) -> bool {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    for &e in edges {
        let (a, b) = g.edge(e);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    edges.len() + 1 == g.vertex_count()
}

/// All spanning trees by scanning every `(|V|-1)`-subset of edges in
/// lexicographic order.
pub fn brute_force_trees(g: &Graph) -> Vec<Vec<usize>> {
    let k = g.vertex_count() - 1;
    let m = g.edge_count();
    let mut out = Vec::new();
    if k == 0 {
        return vec![Vec::new()];
    }
    if k > m {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if spans(g, &idx) {
            out.push(idx.clone());
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < m - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Edge marginals of the weighted tree law, from the brute-force tree list.
pub fn brute_force_marginals(g: &Graph, w: &[f64]) -> Vec<f64> {
    let trees = brute_force_trees(g);
    let mut total = 0.0;
    let mut p = vec![0.0; g.edge_count()];
    for t in &trees {
        let mass: f64 = t.iter().map(|&e| w[e]).product();
        total += mass;
        for &e in t {
            p[e] += mass;
        }
    }
    p.iter().map(|x| x / total).collect()
}

/// Pearson statistic and the upper `alpha` critical value.
pub fn chi_square(observed: &[u64], expected: &[f64], alpha: f64) -> (f64, f64) {
    assert_eq!(observed.len(), expected.len());
    let stat = observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
        .sum();
    let df = (observed.len() - 1) as f64;
    let crit = ChiSquared::new(df).unwrap().inverse_cdf(1.0 - alpha);
    (stat, crit)
}
