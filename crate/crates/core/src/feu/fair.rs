//! Fair trees on modified grids: one edge from every pair `E_v`.

use crate::error::{Error, Result};
use crate::graph::ModifiedGrid;
use crate::spanning::{is_spanning_tree, SpanningTree};

/// Number of tree edges in each node's pair.
fn pair_counts(grid: &ModifiedGrid, t: &SpanningTree) -> Result<Vec<usize>> {
    if !is_spanning_tree(grid.graph(), t.edges()) {
        return Err(Error::NotSpanningTree);
    }
    let mut counts = vec![0; grid.node_count()];
    for &e in t.edges() {
        counts[grid.owner(e).0] += 1;
    }
    Ok(counts)
}

pub fn is_fair_tree(grid: &ModifiedGrid, t: &SpanningTree) -> Result<bool> {
    Ok(pair_counts(grid, t)?.iter().all(|&c| c == 1))
}

/// Swaps every chosen edge for the other edge of its pair.
pub fn partner_tree(grid: &ModifiedGrid, t: &SpanningTree) -> Result<SpanningTree> {
    let counts = pair_counts(grid, t)?;
    if let Some((node, &count)) = counts.iter().enumerate().find(|(_, &c)| c != 1) {
        return Err(Error::NotFair { node, count });
    }
    // the partner of edge 2v + s is 2v + (1 - s): order is preserved
    Ok(SpanningTree::from_sorted_unchecked(
        t.edges().iter().map(|&e| e ^ 1).collect(),
    ))
}

/// For a non-fair spanning tree, a node whose pair is fully used and a node
/// whose pair is unused (both exist since the tree has exactly one edge per
/// node on average). Picks the smallest such indices.
pub fn forbidden_tree_witness(
    grid: &ModifiedGrid,
    t: &SpanningTree,
) -> Result<Option<(usize, usize)>> {
    let counts = pair_counts(grid, t)?;
    let full = counts.iter().position(|&c| c == 2);
    let empty = counts.iter().position(|&c| c == 0);
    Ok(match (full, empty) {
        (Some(a), Some(b)) => Some((a, b)),
        (None, None) => None,
        _ => unreachable!("tree has one edge per node on average"),
    })
}
