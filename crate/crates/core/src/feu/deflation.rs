use serde::{Deserialize, Serialize};

use super::density::{densest_subgraphs_bounded, Density, BRUTE_FORCE_BOUND};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// One contraction: the minimal core of `graph`, then the quotient.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeflationStage {
    /// the graph this stage starts from
    pub graph: Graph,
    /// core vertices, sorted, in `graph`'s labels
    pub core_vertices: Vec<usize>,
    /// core edges in `graph`'s labels
    pub core_edges: Vec<usize>,
    /// core edges in the original graph's labels
    pub core_original_edges: Vec<usize>,
    pub density: Density,
    pub quotient: Graph,
    /// quotient edge -> edge of `graph`
    pub edge_map: Vec<usize>,
    /// quotient edge -> edge of the original graph
    pub original_edges: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DeflationSequence {
    pub stages: Vec<DeflationStage>,
}

impl DeflationSequence {
    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn final_graph(&self) -> Option<&Graph> {
        self.stages.last().map(|s| &s.quotient)
    }
}

pub fn deflate(g: &Graph) -> Result<DeflationSequence> {
    deflate_bounded(g, BRUTE_FORCE_BOUND).map_err(|(e, _)| e)
}

/// Contracts a minimal core (lexicographically smallest vertex set among
/// ties) until one vertex remains. A strictly 1-dense stage graph is its own
/// minimal core, so its contraction is the last stage. On failure the
/// stages completed so far are returned alongside the error.
pub fn deflate_bounded(
    g: &Graph,
    bound: usize,
) -> std::result::Result<DeflationSequence, (Error, DeflationSequence)> {
    let mut seq = DeflationSequence { stages: Vec::new() };
    let mut current = g.clone();
    let mut to_original: Vec<usize> = (0..g.edge_count()).collect();
    while current.vertex_count() > 1 {
        let scan = match densest_subgraphs_bounded(&current, bound) {
            Ok(s) => s,
            Err(e) => return Err((e, seq)),
        };
        let core = scan
            .minimal_cores()
            .map(|c| c.vertices.clone())
            .min()
            .expect("a maximizer with no smaller maximizer exists");
        let mut in_core = vec![false; current.vertex_count()];
        core.iter().for_each(|&v| in_core[v] = true);
        let core_edges: Vec<usize> = (0..current.edge_count())
            .filter(|&e| {
                let (a, b) = current.edge(e);
                in_core[a] && in_core[b]
            })
            .collect();
        let quotient = match current.contract(&core_edges) {
            Ok(q) => q,
            Err(e) => return Err((e, seq)),
        };
        let original_edges: Vec<usize> =
            quotient.edge_map.iter().map(|&e| to_original[e]).collect();
        seq.stages.push(DeflationStage {
            graph: current.clone(),
            core_original_edges: core_edges.iter().map(|&e| to_original[e]).collect(),
            core_vertices: core,
            core_edges,
            density: scan.max_density,
            quotient: quotient.graph.clone(),
            edge_map: quotient.edge_map,
            original_edges: original_edges.clone(),
        });
        current = quotient.graph;
        to_original = original_edges;
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ModifiedGrid;

    #[test]
    fn modified_grid_stages_are_digons() {
        let g = ModifiedGrid::new(2, 2).unwrap();
        let seq = deflate(g.graph()).unwrap();
        assert_eq!(seq.len(), 4);
        for st in &seq.stages {
            assert_eq!(st.core_vertices.len(), 2);
            assert_eq!(st.core_edges.len(), 2);
            assert_eq!(st.density, Density::new(2, 1).unwrap());
        }
        assert_eq!(seq.final_graph().unwrap().vertex_count(), 1);
    }

    #[test]
    fn digon_and_pendant() {
        assert_eq!(deflate(&Graph::digon()).unwrap().len(), 1);
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let seq = deflate(&g).unwrap();
        assert_eq!(seq.stages[0].core_vertices, vec![0, 1, 2]);
        assert_eq!(seq.stages[0].density.reduced(), (3, 2));
        assert_eq!(seq.stages[0].quotient.vertex_count(), 2);
        assert_eq!(seq.stages[0].quotient.edge_count(), 1);
        assert_eq!(seq.stages[0].original_edges, vec![3]);
        assert_eq!(seq.len(), 2);
    }

    #[test]
    fn partial_sequence_on_bound() {
        let g = Graph::path(5).unwrap();
        let (err, partial) = deflate_bounded(&g, 4).unwrap_err();
        assert!(matches!(err, Error::TooLarge { .. }));
        assert!(partial.is_empty());
    }
}
