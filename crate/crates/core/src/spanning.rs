//! Spanning trees: membership, enumeration, Kirchhoff counts, effective
//! resistance, and the random samplers.

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Choice, Graph, ModifiedGrid, UnionFind};

/// One real per edge index.
pub type EdgeVector = Vec<f64>;

/// Default cap for [`enumerate_spanning_trees`].
pub const DEFAULT_TREE_CAP: usize = 1_000_000;

/// Strictly positive edge conductances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct EdgeWeights(Vec<f64>);

impl EdgeWeights {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        for (edge, &value) in weights.iter().enumerate() {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::NonPositiveWeight { edge, value });
            }
        }
        Ok(EdgeWeights(weights))
    }

    pub fn unit(edge_count: usize) -> Self {
        EdgeWeights(vec![1.0; edge_count])
    }

    pub fn for_graph(g: &Graph, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != g.edge_count() {
            return Err(Error::WeightCount {
                expected: g.edge_count(),
                found: weights.len(),
            });
        }
        EdgeWeights::new(weights)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check(&self, g: &Graph) -> Result<()> {
        if self.0.len() != g.edge_count() {
            return Err(Error::WeightCount {
                expected: g.edge_count(),
                found: self.0.len(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for EdgeWeights {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        EdgeWeights::new(v)
    }
}

impl From<EdgeWeights> for Vec<f64> {
    fn from(w: EdgeWeights) -> Self {
        w.0
    }
}

impl std::ops::Index<usize> for EdgeWeights {
    type Output = f64;
    fn index(&self, e: usize) -> &f64 {
        &self.0[e]
    }
}

/// Spanning tree stored as a sorted edge-index set. Trees with the same
/// indices are equal; parallel edges are distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpanningTree(Vec<usize>);

impl SpanningTree {
    pub fn new(g: &Graph, mut edges: Vec<usize>) -> Result<Self> {
        for &e in &edges {
            g.check_edge(e)?;
        }
        edges.sort_unstable();
        if !is_spanning_tree(g, &edges) {
            return Err(Error::NotSpanningTree);
        }
        Ok(SpanningTree(edges))
    }

    pub(crate) fn from_sorted_unchecked(edges: Vec<usize>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        SpanningTree(edges)
    }

    pub fn edges(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn indicator(&self, edge_count: usize) -> Vec<f64> {
        let mut x = vec![0.0; edge_count];
        for &e in &self.0 {
            x[e] = 1.0;
        }
        x
    }

    pub fn into_edges(self) -> Vec<usize> {
        self.0
    }
}

/// Connected, spanning, and acyclic; decided with union-find and the edge
/// count. Invalid or repeated indices give `false`.
pub fn is_spanning_tree(g: &Graph, edges: &[usize]) -> bool {
    if edges.len() + 1 != g.vertex_count() {
        return false;
    }
    let mut uf = UnionFind::new(g.vertex_count());
    for &e in edges {
        if e >= g.edge_count() {
            return false;
        }
        let (a, b) = g.edge(e);
        if !uf.union(a, b) {
            return false;
        }
    }
    true
}

/// Every spanning tree exactly once, in lexicographic order of sorted edge
/// indices. Fails once more than `cap` trees have been found.
pub fn enumerate_spanning_trees(g: &Graph, cap: usize) -> Result<Vec<SpanningTree>> {
    if !g.is_connected() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(g.vertex_count());
    let uf = UnionFind::new(g.vertex_count());
    enumerate_rec(g, 0, &mut chosen, uf, cap, &mut out)?;
    Ok(out)
}

fn enumerate_rec(
    g: &Graph,
    k: usize,
    chosen: &mut Vec<usize>,
    uf: UnionFind,
    cap: usize,
    out: &mut Vec<SpanningTree>,
) -> Result<()> {
    if chosen.len() + 1 == g.vertex_count() {
        if out.len() == cap {
            return Err(Error::TooManyTrees { cap });
        }
        out.push(SpanningTree(chosen.clone()));
        return Ok(());
    }
    if k == g.edge_count() {
        return Ok(());
    }
    // chosen edges plus everything from k on must still connect the graph
    let mut reach = uf.clone();
    let mut comps = g.vertex_count() - chosen.len();
    for &(a, b) in &g.edges()[k..] {
        if reach.union(a, b) {
            comps -= 1;
        }
    }
    if comps != 1 {
        return Ok(());
    }
    let (a, b) = g.edge(k);
    let mut with = uf.clone();
    if with.union(a, b) {
        chosen.push(k);
        enumerate_rec(g, k + 1, chosen, with, cap, out)?;
        chosen.pop();
    }
    enumerate_rec(g, k + 1, chosen, uf, cap, out)
}

/// Laplacian with conductances `w`, grounded at the last vertex.
fn reduced_laplacian(g: &Graph, w: &EdgeWeights) -> DMatrix<f64> {
    let n = g.vertex_count() - 1;
    let mut l = DMatrix::zeros(n, n);
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let c = w[e];
        if a < n {
            l[(a, a)] += c;
        }
        if b < n {
            l[(b, b)] += c;
        }
        if a < n && b < n {
            l[(a, b)] -= c;
            l[(b, a)] -= c;
        }
    }
    l
}

/// Weighted spanning tree count `sum_T prod_{e in T} w(e)` as the
/// determinant of the reduced Laplacian. Zero for disconnected graphs.
pub fn matrix_tree_count(g: &Graph, w: &EdgeWeights) -> Result<f64> {
    w.check(g)?;
    if !g.is_connected() {
        return Ok(0.0);
    }
    if g.vertex_count() == 1 {
        return Ok(1.0);
    }
    Ok(reduced_laplacian(g, w).lu().determinant())
}

/// Inverse of the reduced Laplacian, padded with a zero row and column for
/// the ground vertex. `R(u, v) = G[u][u] + G[v][v] - 2 G[u][v]`.
fn green_matrix(g: &Graph, w: &EdgeWeights) -> Result<DMatrix<f64>> {
    w.check(g)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count();
    let mut full = DMatrix::zeros(n, n);
    if n == 1 {
        return Ok(full);
    }
    let inv = reduced_laplacian(g, w)
        .cholesky()
        .ok_or(Error::Disconnected)?
        .inverse();
    full.view_mut((0, 0), (n - 1, n - 1)).copy_from(&inv);
    Ok(full)
}

fn resistance_from(green: &DMatrix<f64>, a: usize, b: usize) -> f64 {
    green[(a, a)] + green[(b, b)] - 2.0 * green[(a, b)]
}

/// Effective resistance between the endpoints of edge `e` in the network with
/// conductances `w`. Parallel edges all contribute conductance.
pub fn effective_resistance(g: &Graph, w: &EdgeWeights, e: usize) -> Result<f64> {
    g.check_edge(e)?;
    let green = green_matrix(g, w)?;
    let (a, b) = g.edge(e);
    Ok(resistance_from(&green, a, b))
}

/// Per-edge inclusion probability of the weighted uniform spanning tree:
/// `w(e) * R_eff(e)`.
pub fn kirchhoff_edge_probabilities(g: &Graph, w: &EdgeWeights) -> Result<EdgeVector> {
    let green = green_matrix(g, w)?;
    Ok(g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, &(a, b))| w[e] * resistance_from(&green, a, b))
        .collect())
}

/// Explicit probability mass function over a list of spanning trees.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreePmf {
    edge_count: usize,
    trees: Vec<SpanningTree>,
    masses: Vec<f64>,
}

impl TreePmf {
    /// Masses must be nonnegative and sum to one within `1e-9`; they are
    /// renormalized so the stored sum is one to rounding.
    pub fn new(edge_count: usize, trees: Vec<SpanningTree>, masses: Vec<f64>) -> Result<Self> {
        if trees.len() != masses.len() {
            return Err(Error::invalid(
                "masses",
                format!("{} masses for {} trees", masses.len(), trees.len()),
            ));
        }
        if let Some(m) = masses.iter().find(|&&m| !(m >= 0.0) || !m.is_finite()) {
            return Err(Error::invalid("masses", format!("negative or non-finite mass {m}")));
        }
        let total: f64 = masses.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::invalid("masses", format!("masses sum to {total}")));
        }
        let masses = masses.into_iter().map(|m| m / total).collect();
        Ok(TreePmf {
            edge_count,
            trees,
            masses,
        })
    }

    pub fn uniform(edge_count: usize, trees: Vec<SpanningTree>) -> Result<Self> {
        let k = trees.len();
        TreePmf::new(edge_count, trees, vec![1.0 / k as f64; k])
    }

    pub fn point_mass(edge_count: usize, tree: SpanningTree) -> Self {
        TreePmf {
            edge_count,
            trees: vec![tree],
            masses: vec![1.0],
        }
    }

    /// Weighted-uniform pmf on all spanning trees: mass proportional to the
    /// product of edge weights.
    pub fn weighted_enumeration(g: &Graph, w: &EdgeWeights, cap: usize) -> Result<Self> {
        w.check(g)?;
        let trees = enumerate_spanning_trees(g, cap)?;
        let raw: Vec<f64> = trees
            .iter()
            .map(|t| t.edges().iter().map(|&e| w[e]).product())
            .collect();
        let total: f64 = raw.iter().sum();
        TreePmf::new(
            g.edge_count(),
            trees,
            raw.into_iter().map(|m| m / total).collect(),
        )
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn trees(&self) -> &[SpanningTree] {
        &self.trees
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }
}

/// `eta(e) = sum_T mu(T) [e in T]`.
pub fn pmf_edge_probabilities(pmf: &TreePmf) -> EdgeVector {
    let mut eta = vec![0.0; pmf.edge_count];
    for (t, &m) in pmf.trees.iter().zip(&pmf.masses) {
        for &e in t.edges() {
            eta[e] += m;
        }
    }
    eta
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WustAlgorithm {
    Wilson,
    AldousBroder,
}

/// Weighted random-walk step tables.
struct WalkTable {
    /// per vertex: (neighbor, edge, cumulative weight)
    steps: Vec<Vec<(usize, usize, f64)>>,
}

impl WalkTable {
    fn new(g: &Graph, w: &EdgeWeights) -> Self {
        let steps = g
            .incidence()
            .into_iter()
            .map(|inc| {
                let mut acc = 0.0;
                inc.into_iter()
                    .map(|(nb, e)| {
                        acc += w[e];
                        (nb, e, acc)
                    })
                    .collect()
            })
            .collect();
        WalkTable { steps }
    }

    fn step<R: Rng + ?Sized>(&self, u: usize, rng: &mut R) -> (usize, usize) {
        let row = &self.steps[u];
        let total = row.last().map(|s| s.2).unwrap_or(0.0);
        let r = rng.gen::<f64>() * total;
        let k = row.partition_point(|s| s.2 <= r).min(row.len() - 1);
        (row[k].0, row[k].1)
    }
}

/// Samples a spanning tree with probability proportional to the product of
/// its edge weights, rooted at vertex 0.
pub fn sample_wust<R: Rng + ?Sized>(
    g: &Graph,
    w: &EdgeWeights,
    rng: &mut R,
    algorithm: WustAlgorithm,
) -> Result<SpanningTree> {
    sample_wust_rooted(g, w, rng, algorithm, 0)
}

/// As [`sample_wust`] with an explicit root. The root changes the trajectory
/// of the walk, not the law of the tree.
pub fn sample_wust_rooted<R: Rng + ?Sized>(
    g: &Graph,
    w: &EdgeWeights,
    rng: &mut R,
    algorithm: WustAlgorithm,
    root: usize,
) -> Result<SpanningTree> {
    w.check(g)?;
    if root >= g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: root,
            vertex_count: g.vertex_count(),
        });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let table = WalkTable::new(g, w);
    let mut edges = match algorithm {
        WustAlgorithm::Wilson => wilson(g, &table, rng, root),
        WustAlgorithm::AldousBroder => aldous_broder(g, &table, rng, root),
    };
    edges.sort_unstable();
    Ok(SpanningTree(edges))
}

fn wilson<R: Rng + ?Sized>(g: &Graph, table: &WalkTable, rng: &mut R, root: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut in_tree = vec![false; n];
    let mut next = vec![(usize::MAX, usize::MAX); n];
    in_tree[root] = true;
    for start in 0..n {
        let mut u = start;
        while !in_tree[u] {
            next[u] = table.step(u, rng);
            u = next[u].0;
        }
        u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            u = next[u].0;
        }
    }
    (0..n).filter(|&v| v != root).map(|v| next[v].1).collect()
}

fn aldous_broder<R: Rng + ?Sized>(
    g: &Graph,
    table: &WalkTable,
    rng: &mut R,
    root: usize,
) -> Vec<usize> {
    let n = g.vertex_count();
    let mut visited = vec![false; n];
    visited[root] = true;
    let mut remaining = n - 1;
    let mut edges = Vec::with_capacity(n - 1);
    let mut u = root;
    while remaining > 0 {
        let (v, e) = table.step(u, rng);
        if !visited[v] {
            visited[v] = true;
            edges.push(e);
            remaining -= 1;
        }
        u = v;
    }
    edges
}

/// The tree that takes `choices[v]` from every node's pair.
pub fn fair_tree_from_choices(grid: &ModifiedGrid, choices: &[Choice]) -> Result<SpanningTree> {
    if choices.len() != grid.node_count() {
        return Err(Error::invalid(
            "choices",
            format!("expected {} choices, found {}", grid.node_count(), choices.len()),
        ));
    }
    // edge 2v or 2v+1 for node v: already increasing in v
    Ok(SpanningTree(
        choices
            .iter()
            .enumerate()
            .map(|(v, &c)| grid.edge_for(v, c))
            .collect(),
    ))
}

/// One independent fair coin per node; heads takes the right edge.
pub fn sample_fair_choices<R: Rng + ?Sized>(grid: &ModifiedGrid, rng: &mut R) -> Vec<Choice> {
    (0..grid.node_count())
        .map(|_| if rng.gen::<bool>() { Choice::Right } else { Choice::Down })
        .collect()
}

pub fn sample_fair_tree<R: Rng + ?Sized>(grid: &ModifiedGrid, rng: &mut R) -> SpanningTree {
    let choices = sample_fair_choices(grid, rng);
    fair_tree_from_choices(grid, &choices).expect("choice count matches node count")
}
