//! Planar point sets: Hausdorff distances, the regions `Q_b`, and an exact
//! Euclidean distance transform on integer lattices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = (f64, f64);

/// Below this many points in total the scans are done pairwise.
pub const BRUTE_FORCE_POINTS: usize = 4000;

fn dist2(a: Point, b: Point) -> f64 {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    dx * dx + dy * dy
}

/// Uniform bucket grid over a point set for nearest-neighbor distance.
pub struct BucketIndex<'a> {
    points: &'a [Point],
    origin: Point,
    cell: f64,
    cols: usize,
    rows: usize,
    /// CSR layout: `start[c]..start[c+1]` indexes `order`
    start: Vec<usize>,
    order: Vec<usize>,
}

impl<'a> BucketIndex<'a> {
    pub fn new(points: &'a [Point], cell: f64) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        if !(cell > 0.0 && cell.is_finite()) {
            return Err(Error::invalid("cell", "must be positive"));
        }
        let (mut x0, mut y0, mut x1, mut y1) =
            (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &(x, y) in points {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        let cols = ((x1 - x0) / cell).floor() as usize + 1;
        let rows = ((y1 - y0) / cell).floor() as usize + 1;
        let mut index = BucketIndex {
            points,
            origin: (x0, y0),
            cell,
            cols,
            rows,
            start: vec![0; cols * rows + 1],
            order: vec![0; points.len()],
        };
        let cells: Vec<usize> = points.iter().map(|&p| index.cell_of(p)).collect();
        for &c in &cells {
            index.start[c + 1] += 1;
        }
        for c in 0..cols * rows {
            index.start[c + 1] += index.start[c];
        }
        let mut fill = index.start.clone();
        for (i, &c) in cells.iter().enumerate() {
            index.order[fill[c]] = i;
            fill[c] += 1;
        }
        Ok(index)
    }

    /// Cell size giving about one point per cell over the bounding box.
    pub fn auto_cell(points: &[Point]) -> f64 {
        let (mut x0, mut y0, mut x1, mut y1) =
            (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &(x, y) in points {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-12);
        let area = ((x1 - x0).max(span * 1e-3)) * ((y1 - y0).max(span * 1e-3));
        (area / points.len() as f64).sqrt().max(span * 1e-6)
    }

    fn coord(&self, v: f64, o: f64, limit: usize) -> usize {
        (((v - o) / self.cell).floor().max(0.0) as usize).min(limit - 1)
    }

    fn cell_of(&self, p: Point) -> usize {
        let cx = self.coord(p.0, self.origin.0, self.cols);
        let cy = self.coord(p.1, self.origin.1, self.rows);
        cy * self.cols + cx
    }

    /// Distance from `q` to the nearest indexed point.
    pub fn nearest_distance(&self, q: Point) -> f64 {
        let qx = ((q.0 - self.origin.0) / self.cell).floor();
        let qy = ((q.1 - self.origin.1) / self.cell).floor();
        // clamp the query cell into the grid; distance to the grid box is a
        // lower bound for everything inside
        let cx = qx.clamp(0.0, (self.cols - 1) as f64) as i64;
        let cy = qy.clamp(0.0, (self.rows - 1) as f64) as i64;
        let outside = {
            let bx0 = self.origin.0;
            let by0 = self.origin.1;
            let bx1 = bx0 + self.cols as f64 * self.cell;
            let by1 = by0 + self.rows as f64 * self.cell;
            let dx = (bx0 - q.0).max(q.0 - bx1).max(0.0);
            let dy = (by0 - q.1).max(q.1 - by1).max(0.0);
            (dx * dx + dy * dy).sqrt()
        };
        let max_ring = self.cols.max(self.rows) as i64;
        let mut best = f64::INFINITY;
        for ring in 0..=max_ring {
            let (x0, x1) = (cx - ring, cx + ring);
            let (y0, y1) = (cy - ring, cy + ring);
            for y in y0..=y1 {
                if y < 0 || y >= self.rows as i64 {
                    continue;
                }
                let step = if y == y0 || y == y1 { 1 } else { (x1 - x0).max(1) };
                let mut x = x0;
                while x <= x1 {
                    if x >= 0 && x < self.cols as i64 {
                        let c = y as usize * self.cols + x as usize;
                        for &i in &self.order[self.start[c]..self.start[c + 1]] {
                            best = best.min(dist2(q, self.points[i]));
                        }
                    }
                    x += step;
                }
            }
            // any point beyond ring `ring` is at least `ring * cell` from the
            // clamped query cell along one axis and `outside` from the box
            let r = ring as f64 * self.cell;
            let bound = (outside * outside + r * r).sqrt();
            if best.is_finite() && best.sqrt() <= bound {
                break;
            }
        }
        best.sqrt()
    }
}

/// `max_{p in a} min_{q in b} |p - q|`.
pub fn directed_hausdorff(a: &[Point], b: &[Point]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if a.len() + b.len() < BRUTE_FORCE_POINTS {
        return directed_hausdorff_brute(a, b);
    }
    let index = BucketIndex::new(b, BucketIndex::auto_cell(b))?;
    Ok(a.iter()
        .map(|&p| index.nearest_distance(p))
        .fold(0.0, f64::max))
}

pub fn directed_hausdorff_brute(a: &[Point], b: &[Point]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    Ok(a.iter()
        .map(|&p| b.iter().map(|&q| dist2(p, q)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
        .sqrt())
}

pub fn hausdorff_distance(a: &[Point], b: &[Point]) -> Result<f64> {
    Ok(directed_hausdorff(a, b)?.max(directed_hausdorff(b, a)?))
}

/// As [`hausdorff_distance`] with an explicit bucket size, always indexed.
pub fn hausdorff_distance_with_cell(a: &[Point], b: &[Point], cell: f64) -> Result<f64> {
    let ia = BucketIndex::new(a, cell)?;
    let ib = BucketIndex::new(b, cell)?;
    let ab = a.iter().map(|&p| ib.nearest_distance(p)).fold(0.0, f64::max);
    let ba = b.iter().map(|&p| ia.nearest_distance(p)).fold(0.0, f64::max);
    Ok(ab.max(ba))
}

pub fn hausdorff_distance_brute(a: &[Point], b: &[Point]) -> Result<f64> {
    Ok(directed_hausdorff_brute(a, b)?.max(directed_hausdorff_brute(b, a)?))
}

/// Distance from `p` to the segment `a b`.
pub fn segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return dist2(p, a).sqrt();
    }
    let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0);
    dist2(p, (a.0 + t * dx, a.1 + t * dy)).sqrt()
}

/// `Q_b = {(x, y) in [0,1]^2 : x + y <= b}` sampled on the grid
/// `(k/N, l/N)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    b: f64,
    divisions: usize,
}

/// Slack on `x + y <= b` for points computed in floating point.
pub const LEVEL_SLACK: f64 = 1e-12;

impl Region {
    pub fn new(b: f64, divisions: usize) -> Result<Self> {
        if !(0.0..=2.0).contains(&b) {
            return Err(Error::invalid("b", format!("must lie in [0, 2], found {b}")));
        }
        if divisions == 0 {
            return Err(Error::invalid("divisions", "must be positive"));
        }
        Ok(Region { b, divisions })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn divisions(&self) -> usize {
        self.divisions
    }

    pub fn contains(&self, p: Point) -> bool {
        (0.0..=1.0).contains(&p.0) && (0.0..=1.0).contains(&p.1) && p.0 + p.1 <= self.b + LEVEL_SLACK
    }

    /// Grid indices `(k, l)` with `(k + l) / N <= b`.
    pub fn sample_indices(&self) -> Vec<(usize, usize)> {
        let n = self.divisions;
        let limit = self.b * n as f64 + 1e-9;
        let mut out = Vec::new();
        for l in 0..=n {
            for k in 0..=n {
                if (k + l) as f64 <= limit {
                    out.push((k, l));
                }
            }
        }
        out
    }

    pub fn sample_points(&self) -> Vec<Point> {
        let n = self.divisions as f64;
        self.sample_indices()
            .into_iter()
            .map(|(k, l)| (k as f64 / n, l as f64 / n))
            .collect()
    }
}

/// Squared Euclidean distance from every node of the `(size+1)^2` integer
/// grid to the nearest site, by separable lower envelopes of parabolas.
/// Sites must lie in `[0, size]^2`.
pub fn distance_transform_sq(size: usize, sites: impl IntoIterator<Item = (usize, usize)>) -> Vec<f64> {
    let w = size + 1;
    let mut grid = vec![f64::INFINITY; w * w];
    for (x, y) in sites {
        grid[y * w + x] = 0.0;
    }
    let mut buf_in = vec![0.0; w];
    let mut buf_out = vec![0.0; w];
    let mut v = vec![0usize; w];
    let mut z = vec![0.0f64; w + 1];
    // columns
    for x in 0..w {
        for y in 0..w {
            buf_in[y] = grid[y * w + x];
        }
        envelope(&buf_in, &mut buf_out, &mut v, &mut z);
        for y in 0..w {
            grid[y * w + x] = buf_out[y];
        }
    }
    // rows
    for y in 0..w {
        buf_in.copy_from_slice(&grid[y * w..(y + 1) * w]);
        envelope(&buf_in, &mut buf_out, &mut v, &mut z);
        grid[y * w..(y + 1) * w].copy_from_slice(&buf_out);
    }
    grid
}

/// One-dimensional squared distance transform of `f`.
fn envelope(f: &[f64], out: &mut [f64], v: &mut [usize], z: &mut [f64]) {
    let n = f.len();
    let mut k: usize = 0;
    let mut any = false;
    for q in 0..n {
        if f[q].is_infinite() {
            continue;
        }
        if !any {
            any = true;
            v[0] = q;
            z[0] = f64::NEG_INFINITY;
            z[1] = f64::INFINITY;
            continue;
        }
        loop {
            let p = v[k];
            let s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64));
            if s <= z[k] && k > 0 {
                k -= 1;
                continue;
            }
            if s <= z[k] {
                // k == 0 and the new parabola dominates everywhere
                v[0] = q;
                z[0] = f64::NEG_INFINITY;
                z[1] = f64::INFINITY;
                break;
            }
            k += 1;
            v[k] = q;
            z[k] = s;
            z[k + 1] = f64::INFINITY;
            break;
        }
    }
    if !any {
        out.iter_mut().for_each(|o| *o = f64::INFINITY);
        return;
    }
    let mut j = 0;
    for (q, o) in out.iter_mut().enumerate() {
        while z[j + 1] < q as f64 {
            j += 1;
        }
        let p = v[j];
        let d = q as f64 - p as f64;
        *o = d * d + f[p];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hausdorff_examples() {
        let a = vec![(0.0, 0.0), (1.0, 2.0)];
        assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
        assert_eq!(hausdorff_distance(&[(0.0, 0.0)], &[(1.0, 0.0)]).unwrap(), 1.0);
        let seg: Vec<Point> = (0..=1000).map(|k| (k as f64 * 1e-3, 0.0)).collect();
        let d = hausdorff_distance(&seg, &[(0.0, 1.0)]).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 2e-3);
        assert!(matches!(hausdorff_distance(&[], &a), Err(Error::EmptyPointSet)));
    }

    #[test]
    fn bucket_matches_brute() {
        let a: Vec<Point> = (0..3000).map(|k| ((k as f64 * 0.618).fract(), (k as f64 * 0.377).fract())).collect();
        let b: Vec<Point> = (0..2500).map(|k| ((k as f64 * 0.291).fract() * 0.5, (k as f64 * 0.733).fract())).collect();
        let fast = hausdorff_distance_with_cell(&a, &b, 0.01).unwrap();
        let slow = hausdorff_distance_brute(&a, &b).unwrap();
        assert!((fast - slow).abs() < 1e-12);
        let auto = hausdorff_distance(&a, &b).unwrap();
        assert!((auto - slow).abs() < 1e-12);
    }

    #[test]
    fn far_queries_are_exact() {
        let b = vec![(0.0, 0.0), (0.01, 0.0)];
        let index = BucketIndex::new(&b, 0.001).unwrap();
        assert!((index.nearest_distance((5.0, 0.0)) - 4.99).abs() < 1e-12);
        assert!((index.nearest_distance((0.005, -3.0)) - (9.0f64 + 0.005 * 0.005).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn region_monotone() {
        let small = Region::new(0.5, 8).unwrap().sample_points();
        let big = Region::new(1.0, 8).unwrap().sample_points();
        assert!(small.iter().all(|p| big.contains(p)));
        assert_eq!(Region::new(0.0, 8).unwrap().sample_points(), vec![(0.0, 0.0)]);
        assert_eq!(Region::new(2.0, 8).unwrap().sample_points().len(), 81);
        assert!(Region::new(2.5, 8).is_err());
    }

    #[test]
    fn distance_transform_matches_brute() {
        let sites = vec![(0, 0), (7, 3), (2, 9), (9, 9), (5, 5)];
        let d = distance_transform_sq(9, sites.iter().copied());
        for y in 0..10 {
            for x in 0..10 {
                let want = sites
                    .iter()
                    .map(|&(a, b)| {
                        let dx = x as f64 - a as f64;
                        let dy = y as f64 - b as f64;
                        dx * dx + dy * dy
                    })
                    .fold(f64::INFINITY, f64::min);
                assert_eq!(d[y * 10 + x], want, "({x}, {y})");
            }
        }
    }

    #[test]
    fn segment_distance_examples() {
        assert_eq!(segment_distance((0.5, 1.0), (0.0, 0.0), (1.0, 0.0)), 1.0);
        assert_eq!(segment_distance((2.0, 0.0), (0.0, 0.0), (1.0, 0.0)), 1.0);
    }
}
