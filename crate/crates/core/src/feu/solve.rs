//! Minimizing `Var(eta)` over the convex hull of spanning tree indicators.
//!
//! Every indicator has `|V| - 1` ones, so the mean of `eta` is fixed and the
//! problem is the minimum-norm point of the hull. The reported `gap` is the
//! Frank-Wolfe duality gap of the variance objective; by strong convexity
//! `||eta - eta*||_2 <= sqrt(|E| * gap)`.

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, UnionFind};
use crate::spanning::{enumerate_spanning_trees, EdgeVector, SpanningTree, TreePmf};

/// Tolerance on `max(eta) - min(eta)` for declaring a solution homogeneous.
pub const HOMOGENEITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeuSolution {
    pub eta: EdgeVector,
    pub variance: f64,
    pub witness: TreePmf,
    pub homogeneous: bool,
    pub converged: bool,
    pub iterations: usize,
    pub gap: f64,
}

impl FeuSolution {
    /// Certified bound on `||eta - eta*||_2`.
    pub fn distance_bound(&self) -> f64 {
        (self.eta.len() as f64 * self.gap.max(0.0)).sqrt()
    }
}

/// `(1/|E|) sum_e (eta(e) - mean)^2`.
pub fn variance(eta: &[f64]) -> f64 {
    if eta.is_empty() {
        return 0.0;
    }
    let k = eta.len() as f64;
    let mean = eta.iter().sum::<f64>() / k;
    eta.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / k
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gap of the variance objective at `eta` against vertex `s`:
/// `(2/|E|) <eta - mean, eta - s>`.
fn variance_gap(eta: &[f64], mean: f64, s: &[f64]) -> f64 {
    let k = eta.len() as f64;
    2.0 / k
        * eta
            .iter()
            .zip(s)
            .map(|(x, y)| (x - mean) * (x - y))
            .sum::<f64>()
}

fn is_homogeneous(eta: &[f64], gap: f64) -> bool {
    let (lo, hi) = eta
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
    let slack = 2.0 * (eta.len() as f64 * gap.max(0.0)).sqrt();
    hi - lo <= HOMOGENEITY_TOL + slack
}

fn finish(
    edge_count: usize,
    trees: Vec<SpanningTree>,
    masses: Vec<f64>,
    converged: bool,
    iterations: usize,
    gap: f64,
) -> Result<FeuSolution> {
    let witness = TreePmf::new(edge_count, trees, masses)?;
    let eta = crate::spanning::pmf_edge_probabilities(&witness);
    Ok(FeuSolution {
        variance: variance(&eta),
        homogeneous: is_homogeneous(&eta, gap),
        eta,
        witness,
        converged,
        iterations,
        gap,
    })
}

fn check_input(g: &Graph, tol: f64) -> Result<()> {
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    if g.edge_count() == 0 {
        return Err(Error::EmptyEdgeSet);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Wolfe's minimum-norm-point algorithm over all enumerated spanning trees.
/// Stops when the variance gap is at most `tol`.
pub fn solve_feu_exact(g: &Graph, tol: f64) -> Result<FeuSolution> {
    check_input(g, tol)?;
    let trees = enumerate_spanning_trees(g, crate::spanning::DEFAULT_TREE_CAP)?;
    let e = g.edge_count();
    let points: Vec<Vec<f64>> = trees.iter().map(|t| t.indicator(e)).collect();
    let mean = (g.vertex_count() - 1) as f64 / e as f64;

    // corral: indices into `points` with barycentric weights
    let mut corral: Vec<usize> = vec![0];
    let mut lambda: Vec<f64> = vec![1.0];
    let mut x = points[0].clone();
    let max_iter = 10_000 + 10 * points.len();
    let mut iterations = 0;
    let mut gap;
    loop {
        iterations += 1;
        let (j, _) = points
            .iter()
            .enumerate()
            .map(|(k, p)| (k, dot(&x, p)))
            .fold((0, f64::INFINITY), |acc, c| if c.1 < acc.1 { c } else { acc });
        gap = variance_gap(&x, mean, &points[j]);
        if gap <= tol || corral.contains(&j) || iterations > max_iter {
            break;
        }
        corral.push(j);
        lambda.push(0.0);
        // minor cycles
        loop {
            let alpha = affine_minimizer(&points, &corral);
            if alpha.iter().all(|&a| a > 1e-14) {
                lambda = alpha;
                break;
            }
            let mut theta = 1.0f64;
            for (l, a) in lambda.iter().zip(&alpha) {
                if *a <= 1e-14 && l - a > 0.0 {
                    theta = theta.min(l / (l - a));
                }
            }
            for (l, a) in lambda.iter_mut().zip(&alpha) {
                *l = (1.0 - theta) * *l + theta * a;
            }
            let mut k = 0;
            while k < corral.len() {
                if lambda[k] <= 1e-14 {
                    corral.swap_remove(k);
                    lambda.swap_remove(k);
                } else {
                    k += 1;
                }
            }
            let total: f64 = lambda.iter().sum();
            lambda.iter_mut().for_each(|l| *l /= total);
        }
        x = combine(&points, &corral, &lambda, e);
    }
    let converged = gap <= tol;
    let mut support: Vec<(usize, f64)> = corral.into_iter().zip(lambda).collect();
    support.sort_by_key(|p| p.0);
    let (idx, masses): (Vec<usize>, Vec<f64>) = support.into_iter().unzip();
    let total: f64 = masses.iter().sum();
    finish(
        e,
        idx.into_iter().map(|k| trees[k].clone()).collect(),
        masses.into_iter().map(|m| m / total).collect(),
        converged,
        iterations,
        gap,
    )
}

fn combine(points: &[Vec<f64>], idx: &[usize], w: &[f64], dim: usize) -> Vec<f64> {
    let mut x = vec![0.0; dim];
    for (&k, &l) in idx.iter().zip(w) {
        for (xi, pi) in x.iter_mut().zip(&points[k]) {
            *xi += l * pi;
        }
    }
    x
}

/// Barycentric coordinates of the minimum-norm point of the affine hull of
/// `points[idx]`, from the bordered Gram system.
fn affine_minimizer(points: &[Vec<f64>], idx: &[usize]) -> Vec<f64> {
    let k = idx.len();
    let mut a = DMatrix::zeros(k + 1, k + 1);
    for r in 0..k {
        for c in r..k {
            let v = dot(&points[idx[r]], &points[idx[c]]);
            a[(r, c)] = v;
            a[(c, r)] = v;
        }
        a[(r, k)] = 1.0;
        a[(k, r)] = 1.0;
    }
    let mut b = DVector::zeros(k + 1);
    b[k] = 1.0;
    let sol = a
        .clone()
        .lu()
        .solve(&b)
        .filter(|s| s.iter().all(|v| v.is_finite()))
        .unwrap_or_else(|| {
            a.svd(true, true)
                .solve(&b, 1e-12)
                .expect("SVD solve with both factors")
        });
    sol.rows(0, k).iter().copied().collect()
}

/// Spanning tree of minimum total `weight`, ties broken by edge index.
fn kruskal(g: &Graph, weight: &[f64]) -> SpanningTree {
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by(|&a, &b| weight[a].total_cmp(&weight[b]).then(a.cmp(&b)));
    let mut uf = UnionFind::new(g.vertex_count());
    let mut edges: Vec<usize> = order
        .into_iter()
        .filter(|&e| {
            let (a, b) = g.edge(e);
            uf.union(a, b)
        })
        .collect();
    edges.truncate(g.vertex_count() - 1);
    edges.sort_unstable();
    SpanningTree::from_sorted_unchecked(edges)
}

/// Frank-Wolfe with away steps and exact line search. The linear oracle is a
/// minimum spanning tree under gradient weights `2(eta(e) - mean)`; it starts
/// from the minimum spanning tree under unit weights. Stops when the
/// variance gap is at most `tol`; otherwise returns with `converged = false`.
pub fn solve_feu_frank_wolfe(g: &Graph, tol: f64, max_iter: usize) -> Result<FeuSolution> {
    check_input(g, tol)?;
    let e = g.edge_count();
    let mean = (g.vertex_count() - 1) as f64 / e as f64;
    let start = kruskal(g, &vec![1.0; e]);
    let mut atoms: Vec<(SpanningTree, f64)> = vec![(start, 1.0)];
    let mut lookup: HashMap<SpanningTree, usize> = HashMap::new();
    lookup.insert(atoms[0].0.clone(), 0);

    let mut iterations = 0;
    let mut gap = f64::INFINITY;
    while iterations < max_iter {
        let mut eta = vec![0.0; e];
        for (t, a) in &atoms {
            for &k in t.edges() {
                eta[k] += a;
            }
        }
        let grad: Vec<f64> = eta.iter().map(|x| 2.0 * (x - mean)).collect();
        let s = kruskal(g, &grad);
        let s_x = s.indicator(e);
        gap = variance_gap(&eta, mean, &s_x);
        if gap <= tol {
            break;
        }
        iterations += 1;

        // away atom: largest <grad, x_a>
        let (ai, _) = atoms
            .iter()
            .enumerate()
            .map(|(i, (t, _))| (i, t.edges().iter().map(|&k| grad[k]).sum::<f64>()))
            .fold((0, f64::NEG_INFINITY), |acc, c| if c.1 > acc.1 { c } else { acc });
        let a_x = atoms[ai].0.indicator(e);
        let away_gap = -variance_gap(&eta, mean, &a_x);
        let alpha_a = atoms[ai].1;
        let fw_step = gap >= away_gap || alpha_a >= 1.0;

        let (d, gamma_max): (Vec<f64>, f64) = if fw_step {
            (s_x.iter().zip(&eta).map(|(s, x)| s - x).collect(), 1.0)
        } else {
            (
                eta.iter().zip(&a_x).map(|(x, a)| x - a).collect(),
                alpha_a / (1.0 - alpha_a),
            )
        };
        let dd = dot(&d, &d);
        if dd <= 0.0 {
            break;
        }
        let slope: f64 = eta.iter().zip(&d).map(|(x, di)| (x - mean) * di).sum();
        let gamma = (-slope / dd).clamp(0.0, gamma_max);

        if fw_step {
            for atom in atoms.iter_mut() {
                atom.1 *= 1.0 - gamma;
            }
            match lookup.get(&s) {
                Some(&i) => atoms[i].1 += gamma,
                None => {
                    lookup.insert(s.clone(), atoms.len());
                    atoms.push((s, gamma));
                }
            }
        } else {
            for atom in atoms.iter_mut() {
                atom.1 *= 1.0 + gamma;
            }
            atoms[ai].1 -= gamma;
            if gamma >= gamma_max {
                atoms[ai].1 = 0.0;
            }
        }
        atoms.retain(|a| a.1 > 0.0);
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        atoms.iter_mut().for_each(|a| a.1 /= total);
        lookup = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.0.clone(), i))
            .collect();
    }
    let converged = gap <= tol;
    if !converged {
        log::warn!("frank-wolfe stopped after {iterations} iterations with gap {gap:e}");
    }
    atoms.sort_by(|a, b| a.0.cmp(&b.0));
    let (trees, masses): (Vec<SpanningTree>, Vec<f64>) = atoms.into_iter().unzip();
    finish(e, trees, masses, converged, iterations, gap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ModifiedGrid;

    fn pendant() -> Graph {
        Graph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap()
    }

    #[test]
    fn exact_examples() {
        let g = ModifiedGrid::new(2, 2).unwrap();
        let s = solve_feu_exact(g.graph(), 1e-14).unwrap();
        assert!(s.converged);
        assert!(s.eta.iter().all(|x| (x - 0.5).abs() < 1e-9), "{:?}", s.eta);
        assert!(s.variance < 1e-16);
        assert!(s.homogeneous);

        let s = solve_feu_exact(&pendant(), 1e-14).unwrap();
        let want = [2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0, 1.0];
        for (x, w) in s.eta.iter().zip(want) {
            assert!((x - w).abs() < 1e-6, "{:?}", s.eta);
        }
        assert!(!s.homogeneous);

        let s = solve_feu_exact(&Graph::path(4).unwrap(), 1e-14).unwrap();
        assert!(s.eta.iter().all(|&x| x == 1.0));
        assert_eq!(s.variance, 0.0);
    }

    #[test]
    fn frank_wolfe_examples() {
        let s = solve_feu_frank_wolfe(&Graph::digon(), 1e-12, 100).unwrap();
        assert!(s.converged && s.iterations <= 2);
        assert!(s.eta.iter().all(|x| (x - 0.5).abs() < 1e-12));

        let g = ModifiedGrid::new(3, 3).unwrap();
        let s = solve_feu_frank_wolfe(g.graph(), 1e-6, 10_000).unwrap();
        assert!(s.converged);
        assert!(s.eta.iter().all(|x| (x - 0.5).abs() < 1e-5), "{:?}", s.eta);

        let fw = solve_feu_frank_wolfe(&pendant(), 1e-8, 100_000).unwrap();
        let ex = solve_feu_exact(&pendant(), 1e-14).unwrap();
        assert!(fw.converged);
        for (a, b) in fw.eta.iter().zip(&ex.eta) {
            assert!((a - b).abs() < 1e-5);
        }
    }

    #[test]
    fn nonconvergence_is_flagged() {
        let g = ModifiedGrid::new(3, 3).unwrap();
        let s = solve_feu_frank_wolfe(g.graph(), 1e-300, 3).unwrap();
        assert!(!s.converged);
        assert_eq!(s.iterations, 3);
        assert!(s.gap > 0.0);
    }

    #[test]
    fn variance_matches_definition() {
        assert_eq!(variance(&[1.0, 1.0]), 0.0);
        assert!((variance(&[0.0, 1.0]) - 0.25).abs() < 1e-15);
    }
}
