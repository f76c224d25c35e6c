use serde::{Deserialize, Serialize};

use super::density::{classify, Classification, BRUTE_FORCE_BOUND};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spanning::{kirchhoff_edge_probabilities, EdgeVector, EdgeWeights};

const DAMPING: f64 = 0.5;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Uniformized {
    /// geometric mean 1
    pub weights: EdgeWeights,
    pub probabilities: EdgeVector,
    /// `max_e |p(e) - (|V|-1)/|E|`
    pub residual: f64,
    pub iterations: usize,
}

/// Weights whose weighted spanning tree law uses every edge with probability
/// `(|V|-1)/|E|`, starting from unit weights.
pub fn uniformize(g: &Graph, tol: f64, max_iter: usize) -> Result<Uniformized> {
    uniformize_from(g, &EdgeWeights::unit(g.edge_count()), tol, max_iter)
}

/// Damped fixed-point iteration on log-weights,
/// `log w += 0.5 (log target - log p)`, renormalized to geometric mean 1
/// after every sweep.
pub fn uniformize_from(
    g: &Graph,
    initial: &EdgeWeights,
    tol: f64,
    max_iter: usize,
) -> Result<Uniformized> {
    if initial.len() != g.edge_count() {
        return Err(Error::WeightCount {
            expected: g.edge_count(),
            found: initial.len(),
        });
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    if g.vertex_count() < 2 {
        return Err(Error::SingleVertex);
    }
    if !g.is_biconnected() {
        return Err(Error::Precondition("graph is not biconnected".into()));
    }
    if g.vertex_count() <= BRUTE_FORCE_BOUND && classify(g)? != Classification::StrictlyOneDense {
        return Err(Error::Precondition("graph is not strictly 1-dense".into()));
    }
    let target = (g.vertex_count() - 1) as f64 / g.edge_count() as f64;
    let mut logw: Vec<f64> = initial.as_slice().iter().map(|w| w.ln()).collect();
    normalize(&mut logw);
    let mut iterations = 0;
    loop {
        let weights = EdgeWeights::new(logw.iter().map(|l| l.exp()).collect())?;
        let p = kirchhoff_edge_probabilities(g, &weights)?;
        let residual = p.iter().map(|x| (x - target).abs()).fold(0.0, f64::max);
        if residual <= tol {
            return Ok(Uniformized {
                weights,
                probabilities: p,
                residual,
                iterations,
            });
        }
        if iterations == max_iter {
            return Err(Error::NotConverged {
                iterations,
                residual,
            });
        }
        for (l, pe) in logw.iter_mut().zip(&p) {
            *l += DAMPING * (target.ln() - pe.ln());
        }
        normalize(&mut logw);
        iterations += 1;
    }
}

fn normalize(logw: &mut [f64]) {
    let mean = logw.iter().sum::<f64>() / logw.len() as f64;
    logw.iter_mut().for_each(|l| *l -= mean);
}
