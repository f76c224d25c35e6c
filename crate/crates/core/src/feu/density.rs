use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count scanned by brute force (`2^16` subsets).
pub const BRUTE_FORCE_BOUND: usize = 16;

/// Exact 1-density `|E| / (|V| - 1)`, kept as the unreduced pair.
/// Comparison is by value using integer cross-multiplication.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Density {
    pub edges: u64,
    pub denominator: u64,
}

impl Density {
    pub fn new(edges: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::SingleVertex);
        }
        Ok(Density { edges, denominator })
    }

    pub fn value(&self) -> f64 {
        self.edges as f64 / self.denominator as f64
    }

    /// Lowest-terms numerator and denominator.
    pub fn reduced(&self) -> (u64, u64) {
        let g = gcd(self.edges, self.denominator);
        (self.edges / g, self.denominator / g)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

impl PartialEq for Density {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Density {}

impl PartialOrd for Density {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Density {
    fn cmp(&self, other: &Self) -> Ordering {
        let l = self.edges as u128 * other.denominator as u128;
        let r = other.edges as u128 * self.denominator as u128;
        l.cmp(&r)
    }
}

impl fmt::Display for Density {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = self.reduced();
        if q == 1 {
            write!(f, "{p}")
        } else {
            write!(f, "{p}/{q}")
        }
    }
}

pub fn one_density(g: &Graph) -> Result<Density> {
    Density::new(g.edge_count() as u64, g.vertex_count() as u64 - 1)
}

/// A connected vertex-induced subgraph with at least one edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedCandidate {
    /// sorted vertex indices
    pub vertices: Vec<usize>,
    pub density: Density,
    /// no maximizer is a strict subset of this one
    pub minimal: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensestSubgraphs {
    pub max_density: Density,
    /// every maximizer, ordered by vertex bitmask
    pub maximizers: Vec<InducedCandidate>,
    /// largest density among connected induced subgraphs other than the
    /// whole graph, if any exist
    pub max_proper_density: Option<Density>,
}

impl DensestSubgraphs {
    pub fn minimal_cores(&self) -> impl Iterator<Item = &InducedCandidate> {
        self.maximizers.iter().filter(|c| c.minimal)
    }
}

pub fn densest_subgraphs(g: &Graph) -> Result<DensestSubgraphs> {
    densest_subgraphs_bounded(g, BRUTE_FORCE_BOUND)
}

/// Exhaustive scan over vertex subsets inducing a connected subgraph with at
/// least one edge.
pub fn densest_subgraphs_bounded(g: &Graph, bound: usize) -> Result<DensestSubgraphs> {
    let n = g.vertex_count();
    if n > bound || n >= 64 {
        return Err(Error::TooLarge { vertices: n, bound });
    }
    if n < 2 {
        return Err(Error::SingleVertex);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut adj = vec![0u64; n];
    let edge_masks: Vec<u64> = g
        .edges()
        .iter()
        .map(|&(a, b)| {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
            (1u64 << a) | (1u64 << b)
        })
        .collect();
    let full: u64 = (1u64 << n) - 1;

    let mut best: Option<Density> = None;
    let mut best_masks: Vec<u64> = Vec::new();
    let mut proper: Option<Density> = None;
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        let edges = edge_masks.iter().filter(|&&em| em & mask == em).count() as u64;
        if edges == 0 || !connected_mask(&adj, mask) {
            continue;
        }
        let d = Density {
            edges,
            denominator: mask.count_ones() as u64 - 1,
        };
        if mask != full && proper.map_or(true, |p| d > p) {
            proper = Some(d);
        }
        match best.map(|b| d.cmp(&b)) {
            None | Some(Ordering::Greater) => {
                best = Some(d);
                best_masks.clear();
                best_masks.push(mask);
            }
            Some(Ordering::Equal) => best_masks.push(mask),
            Some(Ordering::Less) => {}
        }
    }
    let max_density = best.expect("connected graph with two vertices has an edge");
    let maximizers = best_masks
        .iter()
        .map(|&mask| InducedCandidate {
            vertices: (0..n).filter(|&v| mask >> v & 1 == 1).collect(),
            density: max_density,
            minimal: !best_masks
                .iter()
                .any(|&o| o != mask && o & mask == o),
        })
        .collect();
    Ok(DensestSubgraphs {
        max_density,
        maximizers,
        max_proper_density: proper,
    })
}

fn connected_mask(adj: &[u64], mask: u64) -> bool {
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & mask & !seen;
        seen |= new;
        frontier |= new;
    }
    seen == mask
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    StrictlyOneDense,
    HomogeneousNotStrict,
    Inhomogeneous,
}

impl Classification {
    pub fn is_homogeneous(self) -> bool {
        !matches!(self, Classification::Inhomogeneous)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::StrictlyOneDense => "strictly_1_dense",
            Classification::HomogeneousNotStrict => "homogeneous_not_strict",
            Classification::Inhomogeneous => "inhomogeneous",
        })
    }
}

/// Strictly 1-dense when every proper connected induced subgraph is
/// strictly sparser than `g`; homogeneous when no subgraph is denser than
/// `g`. Densities are compared exactly.
pub fn classify(g: &Graph) -> Result<Classification> {
    let theta = one_density(g)?;
    let scan = densest_subgraphs(g)?;
    Ok(match scan.max_proper_density {
        Some(p) if p >= theta => {
            if scan.max_density == theta {
                Classification::HomogeneousNotStrict
            } else {
                Classification::Inhomogeneous
            }
        }
        _ => Classification::StrictlyOneDense,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ModifiedGrid;

    fn pendant() -> Graph {
        Graph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap()
    }

    #[test]
    fn density_examples() {
        let g = ModifiedGrid::new(3, 3).unwrap();
        let d = one_density(g.graph()).unwrap();
        assert_eq!((d.edges, d.denominator), (18, 9));
        assert_eq!(d, Density::new(2, 1).unwrap());
        assert_eq!(one_density(&Graph::triangle()).unwrap().reduced(), (3, 2));
        assert_eq!(
            one_density(&Graph::standard_grid(2, 2).unwrap()).unwrap().reduced(),
            (4, 3)
        );
        assert!(matches!(
            one_density(&Graph::new(1, vec![]).unwrap()),
            Err(Error::SingleVertex)
        ));
        assert_eq!(Density::new(6, 4).unwrap().to_string(), "3/2");
    }

    #[test]
    fn densest_examples() {
        let g = ModifiedGrid::new(2, 2).unwrap();
        let s = densest_subgraphs(g.graph()).unwrap();
        assert_eq!(s.max_density, Density::new(2, 1).unwrap());
        let digon = vec![g.node(2, 1), g.v0()];
        let core = s.maximizers.iter().find(|c| c.vertices == digon).unwrap();
        assert!(core.minimal);

        let s = densest_subgraphs(&Graph::triangle()).unwrap();
        assert_eq!(s.maximizers.len(), 1);
        assert_eq!(s.maximizers[0].vertices, vec![0, 1, 2]);

        let s = densest_subgraphs(&pendant()).unwrap();
        assert_eq!(s.maximizers.len(), 1);
        assert_eq!(s.maximizers[0].vertices, vec![0, 1, 2]);
        assert_eq!(s.max_density.reduced(), (3, 2));
    }

    #[test]
    fn classify_examples() {
        let g = ModifiedGrid::new(2, 2).unwrap();
        assert_eq!(classify(g.graph()).unwrap(), Classification::HomogeneousNotStrict);
        assert_eq!(
            classify(&Graph::standard_grid(3, 3).unwrap()).unwrap(),
            Classification::StrictlyOneDense
        );
        assert_eq!(classify(&pendant()).unwrap(), Classification::Inhomogeneous);
        assert_eq!(classify(&Graph::digon()).unwrap(), Classification::StrictlyOneDense);
    }

    #[test]
    fn bound_enforced() {
        let g = Graph::path(17).unwrap();
        assert!(matches!(
            densest_subgraphs(&g),
            Err(Error::TooLarge { vertices: 17, bound: 16 })
        ));
    }
}
