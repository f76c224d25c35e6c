//! Fair trees of a general graph: the trees in the support of some optimal
//! pmf. Found with one linear program that maximizes the support of a
//! representation of `eta*`.

use microlp::{ComparisonOp, OptimizationDirection, Problem};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spanning::{enumerate_spanning_trees, SpanningTree, TreePmf, DEFAULT_TREE_CAP};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FairSupport {
    pub fair: Vec<SpanningTree>,
    pub forbidden: Vec<SpanningTree>,
    /// an optimal pmf whose support is exactly `fair`
    pub pmf: TreePmf,
}

/// Relative tolerance on the edge-usage equalities.
const EQ_TOL: f64 = 1e-9;
/// Face membership tolerance on `<eta*, x> - ||eta*||^2`.
const FACE_TOL: f64 = 1e-7;

/// Splits all spanning trees of `g` into fair and forbidden given the
/// optimal edge usage `eta_star`.
///
/// A tree in an optimal support minimizes `<eta*, x>` over trees, so only
/// those trees enter the program. Over them it solves
/// `max sum t_k` subject to `sum mu_k x_k = s eta*`, `sum mu_k = s`,
/// `0 <= t_k <= min(mu_k, 1)`, `s <= S`. A tree is fair iff `t_k = 1`.
pub fn fair_support(g: &Graph, eta_star: &[f64]) -> Result<FairSupport> {
    if eta_star.len() != g.edge_count() {
        return Err(Error::WeightCount {
            expected: g.edge_count(),
            found: eta_star.len(),
        });
    }
    let trees = enumerate_spanning_trees(g, DEFAULT_TREE_CAP)?;
    let norm2: f64 = eta_star.iter().map(|x| x * x).sum();
    let on_face: Vec<bool> = trees
        .iter()
        .map(|t| t.edges().iter().map(|&e| eta_star[e]).sum::<f64>() <= norm2 + FACE_TOL)
        .collect();
    let face: Vec<usize> = (0..trees.len()).filter(|&k| on_face[k]).collect();
    if face.is_empty() {
        return Err(Error::Lp("no tree lies on the optimal face".into()));
    }

    let scale_cap = 1e4 * face.len() as f64;
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let s = lp.add_var(0.0, (0.0, scale_cap));
    let mu: Vec<_> = face
        .iter()
        .map(|_| lp.add_var(0.0, (0.0, f64::INFINITY)))
        .collect();
    let t: Vec<_> = face.iter().map(|_| lp.add_var(1.0, (0.0, 1.0))).collect();
    for (&m, &tk) in mu.iter().zip(&t) {
        lp.add_constraint(&[(tk, 1.0), (m, -1.0)], ComparisonOp::Le, 0.0);
    }
    let mut total: Vec<_> = mu.iter().map(|&m| (m, 1.0)).collect();
    total.push((s, -1.0));
    lp.add_constraint(total.as_slice(), ComparisonOp::Eq, 0.0);
    for (e, &target) in eta_star.iter().enumerate() {
        let mut row: Vec<_> = face
            .iter()
            .zip(&mu)
            .filter(|(&k, _)| trees[k].contains(e))
            .map(|(_, &m)| (m, 1.0))
            .collect();
        row.push((s, -(target + EQ_TOL)));
        lp.add_constraint(row.as_slice(), ComparisonOp::Le, 0.0);
        row.pop();
        row.push((s, -(target - EQ_TOL)));
        lp.add_constraint(row.as_slice(), ComparisonOp::Ge, 0.0);
    }
    let solution = lp
        .solve()
        .map_err(|e| Error::Lp(e.to_string()))?
        .into_solution()
        .map_err(|_| Error::Lp("solve interrupted".into()))?;

    let mut fair = Vec::new();
    let mut masses = Vec::new();
    let mut is_fair = vec![false; trees.len()];
    for (i, &k) in face.iter().enumerate() {
        if solution.var_value(t[i]) > 0.5 {
            is_fair[k] = true;
            fair.push(trees[k].clone());
            masses.push(solution.var_value(mu[i]));
        }
    }
    if fair.is_empty() {
        return Err(Error::Lp("no representation of eta* found".into()));
    }
    let sum: f64 = masses.iter().sum();
    let pmf = TreePmf::new(
        g.edge_count(),
        fair.clone(),
        masses.into_iter().map(|m| m / sum).collect(),
    )?;
    let forbidden = trees
        .into_iter()
        .zip(is_fair)
        .filter(|(_, f)| !f)
        .map(|(t, _)| t)
        .collect();
    Ok(FairSupport {
        fair,
        forbidden,
        pmf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feu::{is_fair_tree, solve_feu_exact};
    use crate::graph::ModifiedGrid;
    use crate::spanning::pmf_edge_probabilities;

    #[test]
    fn modified_grid_support_is_fair_family() {
        let grid = ModifiedGrid::new(2, 2).unwrap();
        let sol = solve_feu_exact(grid.graph(), 1e-14).unwrap();
        let sup = fair_support(grid.graph(), &sol.eta).unwrap();
        assert_eq!(sup.fair.len(), 16);
        assert_eq!(sup.forbidden.len(), 20);
        for t in &sup.fair {
            assert!(is_fair_tree(&grid, t).unwrap());
        }
        let eta = pmf_edge_probabilities(&sup.pmf);
        assert!(eta.iter().all(|x| (x - 0.5).abs() < 1e-7));
    }

    #[test]
    fn pendant_support_is_all_trees() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let sol = solve_feu_exact(&g, 1e-14).unwrap();
        let sup = fair_support(&g, &sol.eta).unwrap();
        assert_eq!(sup.fair.len(), 3);
        assert!(sup.forbidden.is_empty());
    }
}
