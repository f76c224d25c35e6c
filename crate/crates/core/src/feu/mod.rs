//! Fairest edge usage: 1-density, densest subgraphs, the variance-minimizing
//! edge usage problem, deflation, uniformization, and fair trees.

mod deflation;
mod density;
mod fair;
mod solve;
mod support;
mod uniformize;

pub use deflation::{deflate, deflate_bounded, DeflationSequence, DeflationStage};
pub use density::{
    classify, densest_subgraphs, densest_subgraphs_bounded, one_density, Classification,
    DensestSubgraphs, Density, InducedCandidate, BRUTE_FORCE_BOUND,
};
pub use fair::{forbidden_tree_witness, is_fair_tree, partner_tree};
pub use solve::{solve_feu_exact, solve_feu_frank_wolfe, variance, FeuSolution, HOMOGENEITY_TOL};
pub use support::{fair_support, FairSupport};
pub use uniformize::{uniformize, uniformize_from, Uniformized};
