//! SVG rendering of a lattice, a fair tree, its dual tree and the Peano
//! curve between them.

use std::fmt::Write as _;

use fairpeano::peano::{DualTree, LatticeCurve};
use fairpeano::spanning::is_spanning_tree;
use fairpeano::{Choice, SquareLattice, SpanningTree};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MIN_CANVAS: u32 = 64;
/// Hue step between consecutive boundary indices, in degrees.
pub const GOLDEN_ANGLE: f64 = 137.507_764_050_037_85;

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("canvas must be at least {MIN_CANVAS} px, found {0}")]
    CanvasTooSmall(u32),
    #[error("{what} belongs to a lattice of size {found}, scene has size {expected}")]
    MismatchedLattice {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("tree is not a spanning tree of the size-{0} lattice")]
    ForeignTree(usize),
    #[error("closest_boundary_vertex coloring needs a tree")]
    ColoringWithoutTree,
    #[error("stroke width `{0}` must be positive")]
    Stroke(&'static str),
    #[error(transparent)]
    Core(#[from] fairpeano::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColorMode {
    #[default]
    Plain,
    /// tree edges colored by the bottom/right boundary vertex their
    /// right/down path reaches
    ClosestBoundaryVertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Strokes {
    pub tree: f64,
    pub dual: f64,
    pub curve: f64,
}

impl Default for Strokes {
    fn default() -> Self {
        Strokes {
            tree: 2.0,
            dual: 1.5,
            curve: 1.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RenderScene {
    pub n: usize,
    pub tree: Option<SpanningTree>,
    pub dual: Option<DualTree>,
    pub curve: Option<LatticeCurve>,
    /// draw only the first `k` curve points
    pub curve_prefix: Option<usize>,
    pub color_mode: ColorMode,
    pub strokes: Strokes,
    pub canvas: u32,
}

impl RenderScene {
    pub fn new(n: usize) -> Self {
        RenderScene {
            n,
            tree: None,
            dual: None,
            curve: None,
            curve_prefix: None,
            color_mode: ColorMode::Plain,
            strokes: Strokes::default(),
            canvas: 800,
        }
    }

    fn validate(&self, lat: &SquareLattice) -> Result<(), RenderError> {
        if self.canvas < MIN_CANVAS {
            return Err(RenderError::CanvasTooSmall(self.canvas));
        }
        for (name, w) in [
            ("tree", self.strokes.tree),
            ("dual", self.strokes.dual),
            ("curve", self.strokes.curve),
        ] {
            if !(w > 0.0 && w.is_finite()) {
                return Err(RenderError::Stroke(name));
            }
        }
        if let Some(t) = &self.tree {
            if !is_spanning_tree(lat.grid().graph(), t.edges()) {
                return Err(RenderError::ForeignTree(self.n));
            }
        }
        if let Some(d) = &self.dual {
            if d.n() != self.n {
                return Err(RenderError::MismatchedLattice {
                    what: "dual tree",
                    expected: self.n,
                    found: d.n(),
                });
            }
        }
        if let Some(c) = &self.curve {
            if c.n() != self.n {
                return Err(RenderError::MismatchedLattice {
                    what: "curve",
                    expected: self.n,
                    found: c.n(),
                });
            }
        }
        if self.color_mode == ColorMode::ClosestBoundaryVertex && self.tree.is_none() {
            return Err(RenderError::ColoringWithoutTree);
        }
        Ok(())
    }
}

/// Maps quarter units to pixels with the y axis pointing up.
struct Frame {
    margin: f64,
    scale: f64,
    canvas: f64,
}

impl Frame {
    fn new(n: usize, canvas: u32) -> Self {
        let canvas = canvas as f64;
        let margin = (canvas * 0.05).round();
        Frame {
            margin,
            scale: (canvas - 2.0 * margin) / (4.0 * n as f64),
            canvas,
        }
    }

    fn x(&self, q: i64) -> f64 {
        self.margin + q as f64 * self.scale
    }

    fn y(&self, q: i64) -> f64 {
        self.canvas - self.margin - q as f64 * self.scale
    }
}

fn hue(index: usize) -> f64 {
    (index as f64 * GOLDEN_ANGLE) % 360.0
}

/// Boundary index of a bottom/right lattice point: `(i, 0)` is `i - 1`,
/// `(n, j)` is `n - 1 + j`.
fn boundary_index(n: usize, i: usize, j: usize) -> usize {
    if j == 0 {
        i - 1
    } else {
        n - 1 + j
    }
}

/// For every grid node, the boundary index reached by following the tree's
/// right/down steps.
pub fn closest_boundary_indices(lat: &SquareLattice, t: &SpanningTree) -> Vec<usize> {
    let grid = lat.grid();
    let n = lat.n();
    let mut choice = vec![Choice::Right; grid.node_count()];
    for &e in t.edges() {
        let (v, c) = grid.owner(e);
        choice[v] = c;
    }
    let mut memo: Vec<Option<usize>> = vec![None; grid.node_count()];
    for start in 0..grid.node_count() {
        let mut path = Vec::new();
        let mut v = start;
        let idx = loop {
            if let Some(k) = memo[v] {
                break k;
            }
            path.push(v);
            let (i, j) = lat.node_lattice(v);
            let (ni, nj) = match choice[v] {
                Choice::Right => (i + 1, j),
                Choice::Down => (i, j - 1),
            };
            if ni == n || nj == 0 {
                break boundary_index(n, ni, nj);
            }
            v = grid.node(ni, nj);
        };
        for p in path {
            memo[p] = Some(idx);
        }
    }
    memo.into_iter().map(|k| k.expect("every node resolved")).collect()
}

fn line(out: &mut String, f: &Frame, a: (i64, i64), b: (i64, i64), stroke: Option<f64>) {
    let _ = write!(
        out,
        "<line x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\"",
        f.x(a.0),
        f.y(a.1),
        f.x(b.0),
        f.y(b.1)
    );
    if let Some(h) = stroke {
        let _ = write!(out, " stroke=\"hsl({h:.3},70%,45%)\"");
    }
    out.push_str("/>\n");
}

fn quarter(p: (usize, usize)) -> (i64, i64) {
    (4 * p.0 as i64, 4 * p.1 as i64)
}

/// Renders `scene` as a standalone SVG document. Output depends only on the
/// scene, so equal scenes give byte-identical text.
pub fn render_svg(scene: &RenderScene) -> Result<String, RenderError> {
    let lat = SquareLattice::new(scene.n)?;
    scene.validate(&lat)?;
    let n = scene.n;
    let f = Frame::new(n, scene.canvas);
    let size = scene.canvas;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    let px = f.scale * 4.0;
    if let Some(dual) = &scene.dual {
        let _ = writeln!(
            out,
            "<g id=\"dual\" stroke=\"#999999\" stroke-width=\"{:.3}\" stroke-linecap=\"round\">",
            scene.strokes.dual
        );
        for (a, b) in dual.segments() {
            line(&mut out, &f, a, b, None);
        }
        out.push_str("</g>\n");
    }

    if let Some(t) = &scene.tree {
        let grid = lat.grid();
        let _ = writeln!(
            out,
            "<g id=\"tree\" stroke=\"black\" stroke-width=\"{:.3}\" stroke-linecap=\"round\">",
            scene.strokes.tree
        );
        let colors = match scene.color_mode {
            ColorMode::Plain => None,
            ColorMode::ClosestBoundaryVertex => Some(closest_boundary_indices(&lat, t)),
        };
        for (a, b) in lat.boundary_edges() {
            line(&mut out, &f, quarter(a), quarter(b), None);
        }
        for &e in t.edges() {
            let (v, c) = grid.owner(e);
            let (i, j) = lat.node_lattice(v);
            let a = quarter((i, j));
            let b = match c {
                Choice::Right => (a.0 + 4, a.1),
                Choice::Down => (a.0, a.1 - 4),
            };
            line(&mut out, &f, a, b, colors.as_ref().map(|idx| hue(idx[v])));
        }
        out.push_str("</g>\n");
    }

    if let Some(c) = &scene.curve {
        let end = scene.curve_prefix.unwrap_or(c.len()).min(c.len());
        let mut pts = String::new();
        for (k, &(x, y)) in c.lattice_points()[..end].iter().enumerate() {
            if k > 0 {
                pts.push(' ');
            }
            let _ = write!(pts, "{:.3},{:.3}", f.x(x), f.y(y));
        }
        let _ = writeln!(
            out,
            "<polyline id=\"curve\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"{:.3}\" stroke-linejoin=\"round\" points=\"{pts}\"/>",
            scene.strokes.curve
        );
    }

    let r = (px * 0.08).clamp(0.5, 4.0);
    let _ = writeln!(out, "<g id=\"lattice\" fill=\"black\">");
    for j in 0..n as i64 {
        for i in 1..=n as i64 {
            let _ = writeln!(
                out,
                "<circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{r:.3}\"/>",
                f.x(4 * i),
                f.y(4 * j)
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fairpeano::peano::{dual_tree, peano_curve};
    use fairpeano::spanning::sample_fair_tree;
    use fairpeano::rng::stream;

    fn scene(n: usize, seed: u64) -> RenderScene {
        let lat = SquareLattice::new(n).unwrap();
        let t = sample_fair_tree(lat.grid(), &mut stream(seed));
        let mut s = RenderScene::new(n);
        s.dual = Some(dual_tree(&lat, &t).unwrap());
        s.curve = Some(peano_curve(&lat, &t).unwrap());
        s.tree = Some(t);
        s
    }

    #[test]
    fn lattice_only_has_dots() {
        let svg = render_svg(&RenderScene::new(3)).unwrap();
        assert_eq!(svg.matches("<circle").count(), 9);
        assert!(!svg.contains("<line"));
        assert!(!svg.contains("<polyline"));
    }

    #[test]
    fn deterministic() {
        let mut s = scene(5, 3);
        s.color_mode = ColorMode::ClosestBoundaryVertex;
        assert_eq!(render_svg(&s).unwrap(), render_svg(&s).unwrap());
    }

    #[test]
    fn y_axis_points_up() {
        let f = Frame::new(2, 100);
        assert!(f.y(0) > f.y(8));
        assert_eq!(f.y(0), 95.0);
        assert_eq!(f.x(8), 95.0);
    }

    #[test]
    fn rejects_mismatch_and_small_canvas() {
        let mut s = scene(4, 1);
        s.curve = scene(3, 1).curve;
        assert!(matches!(render_svg(&s), Err(RenderError::MismatchedLattice { .. })));
        let mut s = RenderScene::new(3);
        s.canvas = 10;
        assert!(matches!(render_svg(&s), Err(RenderError::CanvasTooSmall(10))));
    }

    #[test]
    fn boundary_indices_follow_steps() {
        // all-right tree: row j reaches the right column at (n, j)
        let lat = SquareLattice::new(4).unwrap();
        let grid = lat.grid();
        let choices = vec![Choice::Right; grid.node_count()];
        let t = fairpeano::spanning::fair_tree_from_choices(grid, &choices).unwrap();
        let idx = closest_boundary_indices(&lat, &t);
        for v in 0..grid.node_count() {
            let (_, j) = lat.node_lattice(v);
            assert_eq!(idx[v], 3 + j);
        }
    }
}
