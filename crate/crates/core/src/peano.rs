//! Dual trees and the Peano curve winding between a fair tree and its dual.
//!
//! Geometry is kept in integer quarter units of `1/(4n)`: primal vertices
//! sit at `(4i, 4j)`, dual vertices at `(4a+2, 4b+2)`, and the fine lattice
//! at odd coordinates `1..4n-1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feu::is_fair_tree;
use crate::geometry::{distance_transform_sq, directed_hausdorff, segment_distance, Point, Region, LEVEL_SLACK};
use crate::graph::{Choice, SquareLattice};
use crate::spanning::{is_spanning_tree, SpanningTree};

/// Spanning tree of the `n x n` dual grid, as edge indices into
/// [`SquareLattice::dual_graph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualTree {
    n: usize,
    edges: Vec<usize>,
    /// `horizontal[b*n + a]`: edge `(a,b)-(a+1,b)` present
    horizontal: Vec<bool>,
    /// `vertical[b*n + a]`: edge `(a,b)-(a,b+1)` present
    vertical: Vec<bool>,
}

impl DualTree {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn has_horizontal(&self, a: usize, b: usize) -> bool {
        a + 1 < self.n && b < self.n && self.horizontal[b * self.n + a]
    }

    pub fn has_vertical(&self, a: usize, b: usize) -> bool {
        a < self.n && b + 1 < self.n && self.vertical[b * self.n + a]
    }

    /// Edge endpoints in quarter units.
    pub fn segments(&self) -> Vec<((i64, i64), (i64, i64))> {
        let n = self.n;
        let mut out = Vec::new();
        for b in 0..n {
            for a in 0..n {
                let p = (4 * a as i64 + 2, 4 * b as i64 + 2);
                if self.has_horizontal(a, b) {
                    out.push((p, (p.0 + 4, p.1)));
                }
                if self.has_vertical(a, b) {
                    out.push((p, (p.0, p.1 + 4)));
                }
            }
        }
        out
    }
}

/// Index of the dual grid edge `(a,b)-(a+1,b)` or `(a,b)-(a,b+1)` in
/// `standard_grid(n, n)` order.
fn dual_edge_index(n: usize, a: usize, b: usize, horizontal: bool) -> usize {
    // each full row below b has n-1 right edges and n up edges; each vertex
    // left of a in row b has a right edge and, below the top row, an up edge
    let up_in_row = usize::from(b + 1 < n);
    let idx = b * (2 * n - 1) + a * (1 + up_in_row);
    if horizontal {
        idx
    } else {
        idx + usize::from(a + 1 < n)
    }
}

fn check_fair(lat: &SquareLattice, t: &SpanningTree) -> Result<()> {
    if !is_fair_tree(lat.grid(), t)? {
        return Err(Error::Curve("tree is not fair".into()));
    }
    Ok(())
}

fn choices(lat: &SquareLattice, t: &SpanningTree) -> Vec<Choice> {
    let grid = lat.grid();
    t.edges().iter().map(|&e| grid.owner(e).1).collect()
}

/// The dual of a fair tree: duals of the interior primal edges not in `t`,
/// plus the dual boundary path along the left column and top row.
pub fn dual_tree(lat: &SquareLattice, t: &SpanningTree) -> Result<DualTree> {
    check_fair(lat, t)?;
    let n = lat.n();
    let mut horizontal = vec![false; n * n];
    let mut vertical = vec![false; n * n];
    for (v, c) in choices(lat, t).into_iter().enumerate() {
        let (i, j) = lat.node_lattice(v);
        match c {
            // down edge absent: its dual is horizontal, (i-1, j-1)-(i, j-1)
            Choice::Right => horizontal[(j - 1) * n + (i - 1)] = true,
            // right edge absent: its dual is vertical, (i, j-1)-(i, j)
            Choice::Down => vertical[(j - 1) * n + i] = true,
        }
    }
    for b in 0..n - 1 {
        vertical[b * n] = true;
    }
    for a in 0..n - 1 {
        horizontal[(n - 1) * n + a] = true;
    }
    let mut edges = Vec::with_capacity(n * n - 1);
    for b in 0..n {
        for a in 0..n {
            if horizontal[b * n + a] {
                edges.push(dual_edge_index(n, a, b, true));
            }
            if vertical[b * n + a] {
                edges.push(dual_edge_index(n, a, b, false));
            }
        }
    }
    edges.sort_unstable();
    let dual = DualTree {
        n,
        edges,
        horizontal,
        vertical,
    };
    debug_assert!(is_spanning_tree(&lat.dual_graph(), &dual.edges));
    Ok(dual)
}

/// Walls for curve moves: the primal tree with the bottom and right
/// boundary, and the dual tree.
struct Walls<'a> {
    n: usize,
    choice: Vec<Choice>,
    dual: &'a DualTree,
    lat: &'a SquareLattice,
}

impl Walls<'_> {
    fn choice_at(&self, i: usize, j: usize) -> Choice {
        self.choice[self.lat.grid().node(i, j)]
    }

    /// Is the primal vertical segment `(4i, 4j) - (4i, 4j+4)` present?
    fn primal_vertical(&self, i: usize, j: usize) -> bool {
        let n = self.n;
        if i == n {
            return j + 1 < n;
        }
        // interior: the down edge of node (i, j+1)
        i >= 1 && j + 1 <= n - 1 && self.choice_at(i, j + 1) == Choice::Down
    }

    /// Is the primal horizontal segment `(4i, 4j) - (4i+4, 4j)` present?
    fn primal_horizontal(&self, i: usize, j: usize) -> bool {
        let n = self.n;
        if j == 0 {
            return i >= 1 && i < n;
        }
        i >= 1 && i <= n - 1 && j <= n - 1 && self.choice_at(i, j) == Choice::Right
    }

    /// May the curve step from fine point `p` to `q` (distance 2)?
    fn allowed(&self, p: (i64, i64), q: (i64, i64)) -> bool {
        let g = 4 * self.n as i64;
        if q.0 < 1 || q.1 < 1 || q.0 > g - 1 || q.1 > g - 1 {
            return false;
        }
        if p.1 == q.1 {
            let x = p.0.min(q.0) + 1;
            let y = p.1;
            if x % 4 == 0 {
                !self.primal_vertical((x / 4) as usize, (y / 4) as usize)
            } else {
                // dual column a at x = 4a + 2
                let a = ((x - 2) / 4) as usize;
                y < 2 || !self.dual.has_vertical(a, ((y - 2) / 4) as usize)
            }
        } else {
            let y = p.1.min(q.1) + 1;
            let x = p.0;
            if y % 4 == 0 {
                !self.primal_horizontal((x / 4) as usize, (y / 4) as usize)
            } else {
                let b = ((y - 2) / 4) as usize;
                x < 2 || !self.dual.has_horizontal(((x - 2) / 4) as usize, b)
            }
        }
    }

    fn moves(&self, p: (i64, i64)) -> impl Iterator<Item = (i64, i64)> + '_ {
        [(2, 0), (0, 2), (-2, 0), (0, -2)]
            .into_iter()
            .map(move |(dx, dy)| (p.0 + dx, p.1 + dy))
            .filter(move |&q| self.allowed(p, q))
    }
}

/// Peano curve in quarter units, from `0` to `1 + i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCurve {
    n: usize,
    points: Vec<(i64, i64)>,
}

impl LatticeCurve {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points in quarter units; the first is `(0, 0)` and the last
    /// `(4n, 4n)`.
    pub fn lattice_points(&self) -> &[(i64, i64)] {
        &self.points
    }

    pub fn point(&self, k: usize) -> Point {
        let s = 4.0 * self.n as f64;
        let (x, y) = self.points[k];
        (x as f64 / s, y as f64 / s)
    }

    pub fn points(&self) -> Vec<Point> {
        (0..self.points.len()).map(|k| self.point(k)).collect()
    }

    /// Fine-lattice points (everything except the two endpoints).
    pub fn interior(&self) -> &[(i64, i64)] {
        &self.points[1..self.points.len() - 1]
    }
}

/// The walk between `t` and its dual tree. The allowed-move graph on the
/// fine lattice is a single cycle around the dual tree; the curve enters it
/// at `(1,1)`, steps to `(3,1)`, follows the cycle to `(4n-1, 4n-1)` and
/// ends at `1 + i`.
pub fn peano_curve(lat: &SquareLattice, t: &SpanningTree) -> Result<LatticeCurve> {
    let dual = dual_tree(lat, t)?;
    peano_curve_with_dual(lat, t, &dual)
}

pub fn peano_curve_with_dual(
    lat: &SquareLattice,
    t: &SpanningTree,
    dual: &DualTree,
) -> Result<LatticeCurve> {
    let n = lat.n();
    let g = 4 * n as i64;
    let walls = Walls {
        n,
        choice: choices(lat, t),
        dual,
        lat,
    };
    let start = (1, 1);
    let second = (3, 1);
    let end = (g - 1, g - 1);
    if !walls.allowed(start, second) {
        return Err(Error::Curve("first step is blocked".into()));
    }
    let mut points = vec![(0, 0), start, second];
    let (mut prev, mut cur) = (start, second);
    let limit = (g * g) as usize;
    while cur != end {
        let mut next = walls.moves(cur).filter(|&q| q != prev);
        let q = next
            .next()
            .ok_or_else(|| Error::Curve(format!("dead end at {cur:?}")))?;
        if next.next().is_some() {
            return Err(Error::Curve(format!("branching at {cur:?}")));
        }
        points.push(q);
        if points.len() > limit {
            return Err(Error::Curve("walk does not reach the far corner".into()));
        }
        (prev, cur) = (cur, q);
    }
    points.push((g, g));
    Ok(LatticeCurve { n, points })
}

/// First index whose point has `x + y > b`, or the curve length.
pub fn stopping_index(c: &LatticeCurve, b: f64) -> usize {
    (0..c.len())
        .find(|&k| {
            let (x, y) = c.point(k);
            x + y > b + LEVEL_SLACK
        })
        .unwrap_or(c.len())
}

/// Largest distance from a sample point of `region` to the curve points
/// `0..prefix_end`.
pub fn coverage_radius(c: &LatticeCurve, prefix_end: usize, region: &Region) -> Result<f64> {
    if prefix_end == 0 {
        return Err(Error::EmptyPointSet);
    }
    let prefix = &c.points[..prefix_end.min(c.len())];
    let g = 4 * c.n;
    let div = region.divisions();
    if g % div == 0 {
        // both sets live on the quarter lattice
        let scale = g / div;
        let d2 = distance_transform_sq(g, prefix.iter().map(|&(x, y)| (x as usize, y as usize)));
        let w = g + 1;
        let max = region
            .sample_indices()
            .into_iter()
            .map(|(k, l)| d2[l * scale * w + k * scale])
            .fold(0.0, f64::max);
        return Ok(max.sqrt() / g as f64);
    }
    let s = g as f64;
    let pts: Vec<Point> = prefix.iter().map(|&(x, y)| (x as f64 / s, y as f64 / s)).collect();
    directed_hausdorff(&region.sample_points(), &pts)
}

/// Results of checking a curve against its tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveCheck {
    /// consecutive fine points differ by `1/(2n)` in exactly one coordinate
    pub unit_steps: bool,
    /// no step crosses the primal tree, the boundary, or the dual tree
    pub no_crossings: bool,
    /// number of fine points visited (with multiplicity)
    pub fine_points: usize,
    /// every one of the `4n^2` fine points visited exactly once
    pub covers_all_fine_points: bool,
    /// visits exactly the fine points with `x >= 3` and `y <= 4n-3` (in
    /// quarter units) plus the two corner points, each once
    pub covers_medial_points: bool,
    /// largest distance from an interior primal vertex to the curve
    pub interior_vertex_distance: f64,
    /// largest distance from any primal vertex to the curve
    pub vertex_distance: f64,
}

impl CurveCheck {
    /// The curve is a path on all fine points within `1/(4n)` of every
    /// primal vertex.
    pub fn full_invariants(&self, n: usize) -> bool {
        self.unit_steps
            && self.no_crossings
            && self.covers_all_fine_points
            && self.vertex_distance <= 1.0 / (4.0 * n as f64) + 1e-12
    }

    /// The invariants this construction satisfies: unit steps, no crossings,
    /// every medial point once, interior vertices within `1/(4n)`, all
    /// vertices within `sqrt(2)/(4n)`.
    pub fn medial_invariants(&self, n: usize) -> bool {
        let q = 1.0 / (4.0 * n as f64);
        self.unit_steps
            && self.no_crossings
            && self.covers_medial_points
            && self.interior_vertex_distance <= q + 1e-12
            && self.vertex_distance <= 2f64.sqrt() * q + 1e-12
    }
}

pub fn check_curve(lat: &SquareLattice, t: &SpanningTree, c: &LatticeCurve) -> Result<CurveCheck> {
    let dual = dual_tree(lat, t)?;
    let n = lat.n();
    let g = 4 * n as i64;
    let walls = Walls {
        n,
        choice: choices(lat, t),
        dual: &dual,
        lat,
    };
    let fine = c.interior();
    let unit_steps = fine.windows(2).all(|w| {
        let (dx, dy) = ((w[1].0 - w[0].0).abs(), (w[1].1 - w[0].1).abs());
        (dx == 2 && dy == 0) || (dx == 0 && dy == 2)
    }) && c.points.first() == Some(&(0, 0))
        && c.points.last() == Some(&(g, g));
    let no_crossings = fine.windows(2).all(|w| walls.allowed(w[0], w[1]));

    let side = (2 * n) as usize;
    let mut seen = vec![0u32; side * side];
    let mut on_lattice = true;
    for &(x, y) in fine {
        if x < 1 || y < 1 || x > g - 1 || y > g - 1 || x % 2 == 0 || y % 2 == 0 {
            on_lattice = false;
            continue;
        }
        seen[((y - 1) / 2) as usize * side + ((x - 1) / 2) as usize] += 1;
    }
    let covers_all_fine_points = on_lattice && seen.iter().all(|&s| s == 1);
    let corner_lo = (0, 0);
    let corner_hi = (side - 1, side - 1);
    let covers_medial_points = on_lattice
        && (0..side).all(|r| {
            (0..side).all(|q| {
                let medial = q >= 1 && r + 1 < side;
                let want = u32::from(medial || (q, r) == corner_lo || (q, r) == corner_hi);
                seen[r * side + q] == want
            })
        });

    let pts = c.points();
    let s = 4.0 * n as f64;
    let mut interior_vertex_distance: f64 = 0.0;
    let mut vertex_distance: f64 = 0.0;
    for i in 1..=n {
        for j in 0..n {
            let v = (4 * i) as f64 / s;
            let w = (4 * j) as f64 / s;
            let d = pts
                .windows(2)
                .map(|seg| segment_distance((v, w), seg[0], seg[1]))
                .fold(f64::INFINITY, f64::min);
            vertex_distance = vertex_distance.max(d);
            if i < n && j > 0 {
                interior_vertex_distance = interior_vertex_distance.max(d);
            }
        }
    }
    Ok(CurveCheck {
        unit_steps,
        no_crossings,
        fine_points: fine.len(),
        covers_all_fine_points,
        covers_medial_points,
        interior_vertex_distance,
        vertex_distance,
    })
}
