//! Multigraphs, modified grids, and the unit-square lattice.
//!
//! Edges are addressed by their position in the edge list. No operation in
//! this module reorders edges; derived graphs carry explicit index maps back
//! to their parent.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite multigraph without self-loops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::NoVertices);
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(Error::EndpointOutOfRange {
                        edge: i,
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if a == b {
                return Err(Error::SelfLoop { edge: i, vertex: a });
            }
        }
        Ok(Graph {
            vertex_count,
            edges,
        })
    }

    /// Two vertices joined by two parallel edges.
    pub fn digon() -> Self {
        Graph::new(2, vec![(0, 1), (0, 1)]).unwrap()
    }

    pub fn triangle() -> Self {
        Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    /// Path on `k` vertices.
    pub fn path(k: usize) -> Result<Self> {
        Graph::new(k, (1..k).map(|i| (i - 1, i)).collect())
    }

    pub fn complete(k: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                edges.push((a, b));
            }
        }
        Graph::new(k, edges)
    }

    /// Standard rectangular grid with `m` columns and `n` rows (`mn` vertices).
    /// Vertex `(i, j)` with `i < m`, `j < n` has index `j * m + i`.
    pub fn standard_grid(m: usize, n: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidDimension { what: "m", value: m });
        }
        if n == 0 {
            return Err(Error::InvalidDimension { what: "n", value: n });
        }
        let mut edges = Vec::with_capacity(2 * m * n);
        for j in 0..n {
            for i in 0..m {
                let v = j * m + i;
                if i + 1 < m {
                    edges.push((v, v + 1));
                }
                if j + 1 < n {
                    edges.push((v, v + m));
                }
            }
        }
        Graph::new(m * n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Incidence lists: for every vertex, `(neighbor, edge index)` pairs in
    /// edge order.
    pub fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            inc[a].push((b, e));
            inc[b].push((a, e));
        }
        inc
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.vertex_count);
        let mut components = self.vertex_count;
        for &(a, b) in &self.edges {
            if uf.union(a, b) {
                components -= 1;
            }
        }
        components == 1
    }

    /// True when the graph is connected and stays connected after removing
    /// any single vertex. A single edge (or a digon) counts as biconnected.
    pub fn is_biconnected(&self) -> bool {
        if !self.is_connected() {
            return false;
        }
        if self.vertex_count <= 2 {
            return true;
        }
        (0..self.vertex_count).all(|cut| {
            let mut uf = UnionFind::new(self.vertex_count);
            let mut components = self.vertex_count - 1;
            for &(a, b) in &self.edges {
                if a != cut && b != cut && uf.union(a, b) {
                    components -= 1;
                }
            }
            components == 1
        })
    }

    pub(crate) fn check_edge(&self, e: usize) -> Result<()> {
        if e >= self.edges.len() {
            return Err(Error::EdgeOutOfRange {
                edge: e,
                edge_count: self.edges.len(),
            });
        }
        Ok(())
    }

    /// Subgraph induced by `vertices`: every edge with both endpoints inside
    /// the set, in parent edge order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Subgraph> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut local = vec![usize::MAX; self.vertex_count];
        let mut vertex_map = Vec::with_capacity(vertices.len());
        let sorted: BTreeSet<usize> = vertices.iter().copied().collect();
        for &v in &sorted {
            if v >= self.vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count: self.vertex_count,
                });
            }
            local[v] = vertex_map.len();
            vertex_map.push(v);
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if local[a] != usize::MAX && local[b] != usize::MAX {
                edges.push((local[a], local[b]));
                edge_map.push(e);
            }
        }
        Ok(Subgraph {
            graph: Graph {
                vertex_count: vertex_map.len(),
                edges,
            },
            vertex_map,
            edge_map,
        })
    }

    /// Merges every vertex touched by `core_edges` into one vertex and drops
    /// the self-loops this creates. Parallel edges survive.
    ///
    /// The merged vertex takes the smallest index among the merged vertices;
    /// the remaining vertices keep their relative order.
    pub fn contract(&self, core_edges: &[usize]) -> Result<Quotient> {
        if core_edges.is_empty() {
            return Err(Error::EmptyEdgeSet);
        }
        let mut touched = vec![false; self.vertex_count];
        let mut uf = UnionFind::new(self.vertex_count);
        for &e in core_edges {
            self.check_edge(e)?;
            let (a, b) = self.edges[e];
            touched[a] = true;
            touched[b] = true;
            uf.union(a, b);
        }
        let first = touched.iter().position(|&t| t).unwrap();
        let root = uf.find(first);
        if (0..self.vertex_count).any(|v| touched[v] && uf.find(v) != root) {
            return Err(Error::DisconnectedCore);
        }

        let mut vertex_map = vec![0; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            if touched[v] && v != first {
                continue;
            }
            vertex_map[v] = next;
            next += 1;
        }
        for v in 0..self.vertex_count {
            if touched[v] {
                vertex_map[v] = vertex_map[first];
            }
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            let (na, nb) = (vertex_map[a], vertex_map[b]);
            if na != nb {
                edges.push((na, nb));
                edge_map.push(e);
            }
        }
        Ok(Quotient {
            graph: Graph {
                vertex_count: next,
                edges,
            },
            merged: vertex_map[first],
            vertex_map,
            edge_map,
        })
    }
}

/// Induced subgraph plus maps from its indices back to the parent graph.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    /// local vertex -> parent vertex
    pub vertex_map: Vec<usize>,
    /// local edge -> parent edge
    pub edge_map: Vec<usize>,
}

/// Result of contracting a connected edge set.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub graph: Graph,
    /// parent vertex -> quotient vertex
    pub vertex_map: Vec<usize>,
    /// quotient edge -> parent edge
    pub edge_map: Vec<usize>,
    /// index of the merged vertex in the quotient
    pub merged: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// `m x n` grid of nodes plus the special vertex `v0` that absorbs the bottom
/// row and the right column.
///
/// Node `(i, j)`, `1 <= i <= m` (column, left to right) and `1 <= j <= n`
/// (row, bottom to top), has index `(j - 1) * m + (i - 1)`; `v0` is `m * n`.
/// Each node owns the pair `E_v = (right edge, down edge)` at edge indices
/// `(2v, 2v + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModifiedGrid {
    m: usize,
    n: usize,
    graph: Graph,
    partition: Vec<[usize; 2]>,
}

/// Which edge of a node's pair a tree uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Choice {
    Right,
    Down,
}

impl ModifiedGrid {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidDimension { what: "m", value: m });
        }
        if n == 0 {
            return Err(Error::InvalidDimension { what: "n", value: n });
        }
        let v0 = m * n;
        let mut edges = Vec::with_capacity(2 * m * n);
        let mut partition = Vec::with_capacity(m * n);
        for j in 1..=n {
            for i in 1..=m {
                let v = (j - 1) * m + (i - 1);
                let right = if i == m { v0 } else { v + 1 };
                let down = if j == 1 { v0 } else { v - m };
                partition.push([edges.len(), edges.len() + 1]);
                edges.push((v, right));
                edges.push((v, down));
            }
        }
        Ok(ModifiedGrid {
            m,
            n,
            graph: Graph::new(m * n + 1, edges)?,
            partition,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn v0(&self) -> usize {
        self.m * self.n
    }

    pub fn node_count(&self) -> usize {
        self.m * self.n
    }

    /// 1-based `(i, j)` to vertex index.
    pub fn node(&self, i: usize, j: usize) -> usize {
        debug_assert!((1..=self.m).contains(&i) && (1..=self.n).contains(&j));
        (j - 1) * self.m + (i - 1)
    }

    /// Vertex index to 1-based `(i, j)`.
    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v % self.m + 1, v / self.m + 1)
    }

    /// The pair `E_v` as `[right, down]` edge indices.
    pub fn cell(&self, v: usize) -> [usize; 2] {
        self.partition[v]
    }

    pub fn partition(&self) -> &[[usize; 2]] {
        &self.partition
    }

    /// Node owning edge `e`, and which side of its pair it is.
    pub fn owner(&self, e: usize) -> (usize, Choice) {
        let side = if e % 2 == 0 { Choice::Right } else { Choice::Down };
        (e / 2, side)
    }

    pub fn edge_for(&self, v: usize, choice: Choice) -> usize {
        match choice {
            Choice::Right => self.partition[v][0],
            Choice::Down => self.partition[v][1],
        }
    }

    /// The same graph obtained from an `(m+1) x (n+1)` grid by identifying
    /// the bottom row and right column into one vertex and dropping loops.
    ///
    /// Vertices use this grid's labeling; edges follow the larger grid's
    /// order, so compare as multisets.
    pub fn by_identification(m: usize, n: usize) -> Result<Graph> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidDimension {
                what: "grid size",
                value: m.min(n),
            });
        }
        // big grid: columns 1..=m+1, rows 0..=n; boundary is row 0 or column m+1
        let v0 = m * n;
        let label = |i: usize, j: usize| {
            if j == 0 || i == m + 1 {
                v0
            } else {
                (j - 1) * m + (i - 1)
            }
        };
        let mut edges = Vec::new();
        for j in 0..=n {
            for i in 1..=m + 1 {
                let a = label(i, j);
                if i + 1 <= m + 1 {
                    let b = label(i + 1, j);
                    if a != b {
                        edges.push((a, b));
                    }
                }
                if j + 1 <= n {
                    let b = label(i, j + 1);
                    if a != b {
                        edges.push((a, b));
                    }
                }
            }
        }
        Graph::new(m * n + 1, edges)
    }
}

/// Lattice `(1/n Z)^2` inside `Q = (0,1] x [0,1)` together with its dual.
///
/// Primal vertices are `(i/n, j/n)` with `1 <= i <= n`, `0 <= j < n`. The
/// bottom row and right column form the boundary; identifying them gives the
/// modified grid with `m = n = n - 1`. Dual vertices sit at
/// `((2a+1)/(2n), (2b+1)/(2n))` for `0 <= a, b < n`.
#[derive(Debug, Clone)]
pub struct SquareLattice {
    n: usize,
    grid: ModifiedGrid,
}

impl SquareLattice {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension {
                what: "lattice size n (needs n >= 2)",
                value: n,
            });
        }
        Ok(SquareLattice {
            n,
            grid: ModifiedGrid::new(n - 1, n - 1)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The identified modified-grid view used for fair-tree sampling.
    pub fn grid(&self) -> &ModifiedGrid {
        &self.grid
    }

    /// Integer lattice coordinates `(i, j)` of a grid node (primal point
    /// `(i/n, j/n)`).
    pub fn node_lattice(&self, v: usize) -> (usize, usize) {
        self.grid.coords(v)
    }

    pub fn primal_vertices(&self) -> Vec<(f64, f64)> {
        let n = self.n as f64;
        let mut out = Vec::with_capacity(self.n * self.n);
        for j in 0..self.n {
            for i in 1..=self.n {
                out.push((i as f64 / n, j as f64 / n));
            }
        }
        out
    }

    /// Nodes with `x < 1` and `y > 0`, in grid index order.
    pub fn interior_nodes(&self) -> Vec<(f64, f64)> {
        let n = self.n as f64;
        (0..self.grid.node_count())
            .map(|v| {
                let (i, j) = self.grid.coords(v);
                (i as f64 / n, j as f64 / n)
            })
            .collect()
    }

    pub fn dual_vertices(&self) -> Vec<(f64, f64)> {
        let s = 2.0 * self.n as f64;
        let mut out = Vec::with_capacity(self.n * self.n);
        for b in 0..self.n {
            for a in 0..self.n {
                out.push(((2 * a + 1) as f64 / s, (2 * b + 1) as f64 / s));
            }
        }
        out
    }

    /// Bottom-row and right-column edges as pairs of integer lattice points.
    pub fn boundary_edges(&self) -> Vec<((usize, usize), (usize, usize))> {
        let n = self.n;
        let mut out = Vec::with_capacity(2 * (n - 1));
        for i in 1..n {
            out.push(((i, 0), (i + 1, 0)));
        }
        for j in 0..n - 1 {
            out.push(((n, j), (n, j + 1)));
        }
        out
    }

    /// Full lattice graph on all `n^2` primal vertices. Vertex `(i, j)` has
    /// index `j * n + (i - 1)`.
    pub fn lattice_graph(&self) -> Graph {
        Graph::standard_grid(self.n, self.n).unwrap()
    }

    /// Dual grid graph on `n^2` vertices; vertex `(a, b)` has index
    /// `b * n + a`.
    pub fn dual_graph(&self) -> Graph {
        Graph::standard_grid(self.n, self.n).unwrap()
    }

    /// Identifies the boundary of [`Self::lattice_graph`] into one vertex and
    /// relabels interior points to grid indices. Isomorphic to
    /// [`Self::grid`] by construction; tests compare edge multisets.
    pub fn identified_graph(&self) -> Graph {
        let n = self.n;
        let v0 = (n - 1) * (n - 1);
        let lattice = self.lattice_graph();
        let label = |idx: usize| {
            let i = idx % n + 1;
            let j = idx / n;
            if j == 0 || i == n {
                v0
            } else {
                (j - 1) * (n - 1) + (i - 1)
            }
        };
        let edges = lattice
            .edges()
            .iter()
            .map(|&(a, b)| (label(a), label(b)))
            .filter(|(a, b)| a != b)
            .collect();
        Graph::new(v0 + 1, edges).unwrap()
    }
}

/// Sorted list of normalized endpoint pairs; equal for graphs that agree as
/// edge multisets.
pub fn edge_multiset(g: &Graph) -> Vec<(usize, usize)> {
    let mut out: Vec<_> = g
        .edges()
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_graph_examples() {
        let d = Graph::new(2, vec![(0, 1), (0, 1)]).unwrap();
        assert_eq!(d.edge_count(), 2);
        assert_eq!(Graph::triangle().edge_count(), 3);
        match Graph::new(2, vec![(0, 0)]) {
            Err(Error::SelfLoop { edge: 0, vertex: 0 }) => {}
            other => panic!("expected self-loop rejection, got {other:?}"),
        }
        assert!(matches!(
            Graph::new(2, vec![(0, 2)]),
            Err(Error::EndpointOutOfRange { edge: 0, vertex: 2, .. })
        ));
    }

    #[test]
    fn modified_grid_counts() {
        let g = ModifiedGrid::new(3, 3).unwrap();
        assert_eq!(g.graph().vertex_count(), 10);
        assert_eq!(g.graph().edge_count(), 18);

        let g = ModifiedGrid::new(1, 1).unwrap();
        assert_eq!(g.graph().vertex_count(), 2);
        assert_eq!(edge_multiset(g.graph()), edge_multiset(&Graph::digon()));

        let g = ModifiedGrid::new(2, 2).unwrap();
        assert_eq!(g.graph().vertex_count(), 5);
        assert_eq!(g.graph().edge_count(), 8);
        assert_eq!(g.partition().len(), 4);
        assert!(ModifiedGrid::new(0, 3).is_err());
        assert!(ModifiedGrid::new(2, 0).is_err());
    }

    #[test]
    fn partition_covers_edges_once() {
        for (m, n) in [(1, 1), (2, 3), (4, 2), (5, 5)] {
            let g = ModifiedGrid::new(m, n).unwrap();
            let mut seen = vec![0; g.graph().edge_count()];
            for cell in g.partition() {
                for &e in cell {
                    seen[e] += 1;
                }
            }
            assert!(seen.iter().all(|&c| c == 1));
            // bottom-right node is joined to v0 by two parallel edges
            let br = g.node(m, 1);
            let [r, d] = g.cell(br);
            assert_eq!(g.graph().edge(r), (br, g.v0()));
            assert_eq!(g.graph().edge(d), (br, g.v0()));
            // |E| = 2 (|V| - 1)
            assert_eq!(g.graph().edge_count(), 2 * (g.graph().vertex_count() - 1));
        }
    }

    #[test]
    fn identification_agrees_with_direct_construction() {
        for m in 1..=5 {
            for n in 1..=5 {
                let direct = ModifiedGrid::new(m, n).unwrap();
                let ident = ModifiedGrid::by_identification(m, n).unwrap();
                assert_eq!(edge_multiset(direct.graph()), edge_multiset(&ident), "({m},{n})");
            }
        }
    }

    #[test]
    fn square_lattice_examples() {
        let lat = SquareLattice::new(5).unwrap();
        assert_eq!(lat.primal_vertices().len(), 25);
        assert_eq!(lat.interior_nodes().len(), 16);
        assert_eq!(lat.dual_vertices().len(), 25);

        let lat = SquareLattice::new(2).unwrap();
        assert_eq!(lat.primal_vertices().len(), 4);
        assert_eq!(lat.interior_nodes().len(), 1);
        assert!(SquareLattice::new(1).is_err());

        let lat = SquareLattice::new(3).unwrap();
        let mut nodes = lat.interior_nodes();
        nodes.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let t = 1.0 / 3.0;
        let expect = [(t, t), (t, 2.0 * t), (2.0 * t, t), (2.0 * t, 2.0 * t)];
        for (got, want) in nodes.iter().zip(expect.iter()) {
            assert!((got.0 - want.0).abs() < 1e-15 && (got.1 - want.1).abs() < 1e-15);
        }
        // half-open Q: y = 0 included, x = 0 excluded
        for (x, y) in lat.primal_vertices() {
            assert!(x > 0.0 && x <= 1.0 && (0.0..1.0).contains(&y));
        }
    }

    #[test]
    fn lattice_identification_is_modified_grid() {
        for n in 2..=7 {
            let lat = SquareLattice::new(n).unwrap();
            assert_eq!(
                edge_multiset(&lat.identified_graph()),
                edge_multiset(lat.grid().graph())
            );
        }
    }

    #[test]
    fn induced_subgraph_examples() {
        let s = Graph::triangle().induced_subgraph(&[0, 1]).unwrap();
        assert_eq!(s.graph.edge_count(), 1);

        let g = ModifiedGrid::new(2, 2).unwrap();
        let s = g
            .graph()
            .induced_subgraph(&[g.node(2, 1), g.v0()])
            .unwrap();
        assert_eq!(edge_multiset(&s.graph), edge_multiset(&Graph::digon()));

        let grid = Graph::standard_grid(3, 3).unwrap();
        let all: Vec<usize> = (0..9).collect();
        let s = grid.induced_subgraph(&all).unwrap();
        assert_eq!(s.graph, grid);
        assert_eq!(s.edge_map, (0..grid.edge_count()).collect::<Vec<_>>());

        assert!(matches!(grid.induced_subgraph(&[]), Err(Error::EmptyVertexSet)));
    }

    #[test]
    fn contraction_examples() {
        let q = Graph::digon().contract(&[0, 1]).unwrap();
        assert_eq!(q.graph.vertex_count(), 1);
        assert_eq!(q.graph.edge_count(), 0);

        let g = ModifiedGrid::new(1, 2).unwrap();
        let [r, d] = g.cell(g.node(1, 1));
        let q = g.graph().contract(&[r, d]).unwrap();
        assert_eq!(edge_multiset(&q.graph), edge_multiset(&Graph::digon()));

        let q = Graph::triangle().contract(&[0]).unwrap();
        assert_eq!(edge_multiset(&q.graph), edge_multiset(&Graph::digon()));
        assert_eq!(q.edge_map, vec![1, 2]);

        let path = Graph::path(4).unwrap();
        assert!(matches!(path.contract(&[0, 2]), Err(Error::DisconnectedCore)));
    }

    #[test]
    fn biconnectivity() {
        assert!(Graph::triangle().is_biconnected());
        assert!(Graph::digon().is_biconnected());
        assert!(!Graph::path(3).unwrap().is_biconnected());
        assert!(Graph::standard_grid(2, 3).unwrap().is_biconnected());
        let pendant = Graph::new(4, vec![(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert!(!pendant.is_biconnected());
    }
}
