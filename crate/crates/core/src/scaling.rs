//! Monte Carlo experiments: branch diagonality, Hausdorff convergence of
//! Peano-curve prefixes, and the running maximum of a simple random walk.

use std::path::PathBuf;
use std::time::Instant;

use rand::RngCore;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{hausdorff_distance, Point, Region};
use crate::graph::{Choice, SquareLattice};
use crate::io::write_atomic;
use crate::peano::{coverage_radius, peano_curve, stopping_index};
use crate::rng::{derive_seed, stream};
use crate::spanning::{sample_fair_tree, SpanningTree};

/// Branch paths from anchors on the left column and top row, following the
/// tree's right/down steps to the bottom or right side.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchBundle {
    pub n: usize,
    /// anchors requested (the integer part of `m`)
    pub requested: usize,
    /// distinct anchors in clockwise order, as lattice coordinates `(i, j)`
    pub anchors: Vec<(usize, usize)>,
    /// per anchor, the lattice vertices visited, anchor first
    pub paths: Vec<Vec<(usize, usize)>>,
}

impl BranchBundle {
    pub fn anchor_points(&self) -> Vec<Point> {
        let s = self.n as f64;
        self.anchors
            .iter()
            .map(|&(i, j)| (i as f64 / s, j as f64 / s))
            .collect()
    }

    /// Path vertices and points along each path edge at spacing at most
    /// `resolution`.
    pub fn sample_points(&self, resolution: f64) -> Result<Vec<Point>> {
        check_resolution(resolution)?;
        let s = self.n as f64;
        let pieces = ((1.0 / s) / resolution).ceil().max(1.0) as usize;
        let mut out = Vec::new();
        for path in &self.paths {
            let (i0, j0) = path[0];
            out.push((i0 as f64 / s, j0 as f64 / s));
            for w in path.windows(2) {
                let a = (w[0].0 as f64 / s, w[0].1 as f64 / s);
                let b = (w[1].0 as f64 / s, w[1].1 as f64 / s);
                for k in 1..=pieces {
                    let t = k as f64 / pieces as f64;
                    out.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
                }
            }
        }
        Ok(out)
    }

    /// No vertex is shared by two paths.
    pub fn pairwise_disjoint(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.paths
            .iter()
            .all(|p| p.iter().all(|v| seen.insert(*v)))
    }
}

fn check_resolution(resolution: f64) -> Result<()> {
    if !(resolution > 0.0 && resolution.is_finite()) {
        return Err(Error::invalid("resolution", "must be positive"));
    }
    Ok(())
}

/// Largest integer `m` with `m^4 <= n`.
pub fn fourth_root_floor(n: usize) -> usize {
    let mut m = (n as f64).powf(0.25).round() as usize;
    while m.pow(4) > n {
        m -= 1;
    }
    while (m + 1).pow(4) <= n {
        m += 1;
    }
    m
}

/// Interior vertices of the left column and top row in clockwise order:
/// `(1, 1), ..., (1, n-1), (2, n-1), ..., (n-1, n-1)`.
fn anchor_slots(n: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (1..n).map(|j| (1, j)).collect();
    out.extend((2..n).map(|i| (i, n - 1)));
    out
}

/// Branch bundle of `floor(m)` anchors. Anchor `k` sits at the slot closest
/// to the fraction `k/(m+1)` of the clockwise arc length of the slots, ties
/// toward the earlier slot; duplicates collapse when `m` exceeds the slot
/// count.
pub fn branch_paths(lat: &SquareLattice, t: &SpanningTree, m: f64) -> Result<BranchBundle> {
    if !(m >= 1.0) || !m.is_finite() {
        return Err(Error::invalid("m", format!("must be at least 1, found {m}")));
    }
    let grid = lat.grid();
    if !crate::feu::is_fair_tree(grid, t)? {
        return Err(Error::Curve("tree is not fair".into()));
    }
    let requested = m.floor() as usize;
    let n = lat.n();
    let slots = anchor_slots(n);
    let span = (slots.len() - 1) as f64;
    let mut picked: Vec<usize> = (1..=requested)
        .map(|k| {
            let target = k as f64 * span / (requested + 1) as f64;
            let lo = target.floor();
            // ties go to the earlier slot
            let idx = if target - lo <= 0.5 { lo } else { lo + 1.0 };
            (idx as usize).min(slots.len() - 1)
        })
        .collect();
    picked.dedup();
    let mut choice = vec![Choice::Right; grid.node_count()];
    for &e in t.edges() {
        let (v, c) = grid.owner(e);
        choice[v] = c;
    }
    let anchors: Vec<(usize, usize)> = picked.into_iter().map(|k| slots[k]).collect();
    let paths = anchors
        .iter()
        .map(|&(i0, j0)| {
            let (mut i, mut j) = (i0, j0);
            let mut path = vec![(i, j)];
            while i < n && j > 0 {
                match choice[grid.node(i, j)] {
                    Choice::Right => i += 1,
                    Choice::Down => j -= 1,
                }
                path.push((i, j));
            }
            path
        })
        .collect();
    Ok(BranchBundle {
        n,
        requested,
        anchors,
        paths,
    })
}

/// Anti-diagonal segments `x + y = level` clipped to the unit square.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalLines {
    pub levels: Vec<f64>,
    pub resolution: f64,
}

impl DiagonalLines {
    pub fn new(anchors: &[Point], resolution: f64) -> Result<Self> {
        check_resolution(resolution)?;
        Ok(DiagonalLines {
            levels: anchors.iter().map(|p| p.0 + p.1).collect(),
            resolution,
        })
    }

    pub fn endpoints(level: f64) -> (Point, Point) {
        if level <= 1.0 {
            ((0.0, level), (level, 0.0))
        } else {
            ((level - 1.0, 1.0), (1.0, level - 1.0))
        }
    }

    pub fn sample_points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for &s in &self.levels {
            let (a, b) = Self::endpoints(s);
            let len = ((b.0 - a.0).powi(2) + (b.1 - a.1).powi(2)).sqrt();
            let pieces = (len / self.resolution).ceil().max(1.0) as usize;
            for k in 0..=pieces {
                let t = k as f64 / pieces as f64;
                out.push((a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1)));
            }
        }
        out
    }
}

pub fn diagonal_lines(anchors: &[Point], resolution: f64) -> Result<DiagonalLines> {
    DiagonalLines::new(anchors, resolution)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalityOutcome {
    pub statistic: f64,
    pub branches: usize,
    pub disjoint: bool,
}

fn check_n(n: usize) -> Result<()> {
    if n < 16 {
        return Err(Error::invalid("n", format!("must be at least 16, found {n}")));
    }
    Ok(())
}

/// Hausdorff distance between the branch bundle with `m = n^{1/4}` and its
/// diagonal lines, both sampled at spacing `1/(2n)`, for one fair tree.
pub fn diagonality_trial<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Result<DiagonalityOutcome> {
    check_n(n)?;
    let lat = SquareLattice::new(n)?;
    let t = sample_fair_tree(lat.grid(), rng);
    diagonality_of(&lat, &t)
}

pub fn diagonality_of(lat: &SquareLattice, t: &SpanningTree) -> Result<DiagonalityOutcome> {
    let n = lat.n();
    let m = fourth_root_floor(n).max(1);
    let bundle = branch_paths(lat, t, m as f64)?;
    let res = 1.0 / (2.0 * n as f64);
    let lines = diagonal_lines(&bundle.anchor_points(), res)?;
    let statistic = hausdorff_distance(&bundle.sample_points(res)?, &lines.sample_points())?;
    Ok(DiagonalityOutcome {
        statistic,
        branches: bundle.anchors.len(),
        disjoint: bundle.pairwise_disjoint(),
    })
}

/// `b` values `0, 2/(k-1), ..., 2`.
pub fn default_b_grid(k: usize) -> Vec<f64> {
    match k {
        0 => Vec::new(),
        1 => vec![2.0],
        _ => (0..k).map(|i| 2.0 * i as f64 / (k - 1) as f64).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceOutcome {
    pub radii: Vec<f64>,
    pub sup: f64,
}

/// Coverage radius of the curve prefix up to the exit time of `Q_b`, for
/// each `b`, sampling `Q_b` at spacing `1/(2n)`.
pub fn convergence_trial<R: rand::Rng + ?Sized>(
    n: usize,
    b_grid: &[f64],
    rng: &mut R,
) -> Result<ConvergenceOutcome> {
    check_n(n)?;
    let lat = SquareLattice::new(n)?;
    let t = sample_fair_tree(lat.grid(), rng);
    let curve = peano_curve(&lat, &t)?;
    let radii = b_grid
        .iter()
        .map(|&b| {
            let region = Region::new(b, 2 * n)?;
            coverage_radius(&curve, stopping_index(&curve, b), &region)
        })
        .collect::<Result<Vec<f64>>>()?;
    let sup = radii.iter().copied().fold(0.0, f64::max);
    Ok(ConvergenceOutcome { radii, sup })
}

/// `M_k / sqrt(2 k log log k)` for a simple random walk of `k` steps,
/// `M_k = max_{j <= k} |S_j|`. Steps come from the bits of 64-bit draws.
pub fn rw_max_ratio<R: RngCore + ?Sized>(k: usize, rng: &mut R) -> Result<f64> {
    if k < 16 {
        return Err(Error::invalid("k", format!("must be at least 16, found {k}")));
    }
    let mut s: i64 = 0;
    let mut max: i64 = 0;
    let mut left = k;
    while left > 0 {
        let bits = rng.next_u64();
        let take = left.min(64);
        for b in 0..take {
            s += if bits >> b & 1 == 1 { 1 } else { -1 };
            max = max.max(s.abs());
        }
        left -= take;
    }
    Ok(lil_ratio(max as f64, k))
}

/// `M_k / sqrt(2 k log log k)` for an explicit walk given by its steps.
pub fn rw_max_ratio_of_steps(steps: &[i8]) -> Result<f64> {
    let k = steps.len();
    if k < 16 {
        return Err(Error::invalid("k", format!("must be at least 16, found {k}")));
    }
    if let Some(i) = steps.iter().position(|d| d.abs() != 1) {
        return Err(Error::invalid(format!("steps[{i}]"), "steps must be +1 or -1"));
    }
    let mut s: i64 = 0;
    let mut max: i64 = 0;
    for &d in steps {
        s += d as i64;
        max = max.max(s.abs());
    }
    Ok(lil_ratio(max as f64, k))
}

fn lil_ratio(max: f64, k: usize) -> f64 {
    let k = k as f64;
    max / (2.0 * k * k.ln().ln()).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Diagonality,
    Convergence,
    RwMax,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Diagonality => "diagonality",
            ExperimentKind::Convergence => "convergence",
            ExperimentKind::RwMax => "rw_max",
        }
    }

    /// Constant `c` in the pass threshold: `c n^{-1/4}` for diagonality,
    /// `c n^{-1/4} + sqrt(2)/(2n)` for convergence, `c` for the walk ratio.
    pub fn default_threshold_constant(self) -> f64 {
        match self {
            ExperimentKind::Diagonality => 0.5,
            ExperimentKind::Convergence => 3.0,
            ExperimentKind::RwMax => 1.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    /// lattice sizes, or walk lengths for `rw_max`
    pub n_list: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub threshold_constant: f64,
    /// required pass fraction at the largest `n`, recorded with the report
    pub required_pass_fraction: Option<f64>,
    pub b_grid: Vec<f64>,
    pub csv: Option<PathBuf>,
    /// worker cap; falls back to `FAIRPEANO_THREADS`, then all cores
    pub threads: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind, n_list: Vec<usize>, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            kind,
            n_list,
            trials,
            seed,
            threshold_constant: kind.default_threshold_constant(),
            required_pass_fraction: match kind {
                ExperimentKind::Convergence => Some(0.8),
                _ => None,
            },
            b_grid: default_b_grid(21),
            csv: None,
            threads: None,
        }
    }

    pub fn threshold(&self, n: usize) -> f64 {
        let c = self.threshold_constant;
        let nf = n as f64;
        match self.kind {
            ExperimentKind::Diagonality => c * nf.powf(-0.25),
            ExperimentKind::Convergence => c * nf.powf(-0.25) + 2f64.sqrt() / (2.0 * nf),
            ExperimentKind::RwMax => c,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_list.is_empty() {
            return Err(Error::invalid("n_list", "must not be empty"));
        }
        if let Some(&n) = self.n_list.iter().find(|&&n| n < 16) {
            return Err(Error::invalid("n_list", format!("every entry must be at least 16, found {n}")));
        }
        if !(self.threshold_constant > 0.0 && self.threshold_constant.is_finite()) {
            return Err(Error::invalid("threshold_constant", "must be positive"));
        }
        if let Some(p) = self.required_pass_fraction {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid("required_pass_fraction", "must lie in [0, 1]"));
            }
        }
        if self.kind == ExperimentKind::Convergence {
            if self.b_grid.is_empty() {
                return Err(Error::invalid("b_grid", "must not be empty"));
            }
            if let Some(b) = self.b_grid.iter().find(|b| !(0.0..=2.0).contains(*b)) {
                return Err(Error::invalid("b_grid", format!("values must lie in [0, 2], found {b}")));
            }
        }
        if self.threads == Some(0) {
            return Err(Error::invalid("threads", "must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub statistic: f64,
    pub threshold: f64,
    pub pass: bool,
    /// extra per-trial detail: branch disjointness for diagonality
    pub disjoint: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub n: usize,
    pub count: usize,
    pub median: f64,
    /// nearest-rank 90th percentile
    pub p90: f64,
    pub max: f64,
    pub pass_fraction: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub records: Vec<TrialRecord>,
    pub aggregates: Vec<Aggregate>,
    pub elapsed_seconds: f64,
}

impl ExperimentReport {
    pub fn aggregate(&self, n: usize) -> Option<&Aggregate> {
        self.aggregates.iter().find(|a| a.n == n)
    }

    /// CSV rows followed by `#` aggregate lines.
    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["experiment", "n", "trial", "seed", "statistic", "threshold", "pass"])?;
        let name = self.config.kind.name();
        for r in &self.records {
            w.write_record([
                name.to_string(),
                r.n.to_string(),
                r.trial.to_string(),
                r.seed.to_string(),
                r.statistic.to_string(),
                r.threshold.to_string(),
                r.pass.to_string(),
            ])?;
        }
        let mut out = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        for a in &self.aggregates {
            out.extend_from_slice(
                format!(
                    "# n={} median={} p90={} max={} pass_fraction={}\n",
                    a.n, a.median, a.p90, a.max, a.pass_fraction
                )
                .as_bytes(),
            );
        }
        Ok(out)
    }
}

pub fn aggregate(n: usize, records: &[TrialRecord]) -> Aggregate {
    let mut values: Vec<f64> = records.iter().map(|r| r.statistic).collect();
    values.sort_by(f64::total_cmp);
    let count = values.len();
    if count == 0 {
        return Aggregate {
            n,
            count,
            median: f64::NAN,
            p90: f64::NAN,
            max: f64::NAN,
            pass_fraction: f64::NAN,
        };
    }
    let median = if count % 2 == 1 {
        values[count / 2]
    } else {
        0.5 * (values[count / 2 - 1] + values[count / 2])
    };
    let rank = ((0.9 * count as f64).ceil() as usize).clamp(1, count);
    Aggregate {
        n,
        count,
        median,
        p90: values[rank - 1],
        max: values[count - 1],
        pass_fraction: records.iter().filter(|r| r.pass).count() as f64 / count as f64,
    }
}

fn thread_cap(config: &ExperimentConfig) -> Option<usize> {
    config.threads.or_else(|| {
        std::env::var("FAIRPEANO_THREADS")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&t| t > 0)
    })
}

fn run_trial(config: &ExperimentConfig, n: usize, trial: usize, seed: u64) -> Result<TrialRecord> {
    let mut rng = stream(seed);
    let threshold = config.threshold(n);
    let (statistic, disjoint) = match config.kind {
        ExperimentKind::Diagonality => {
            let o = diagonality_trial(n, &mut rng)?;
            (o.statistic, Some(o.disjoint))
        }
        ExperimentKind::Convergence => (convergence_trial(n, &config.b_grid, &mut rng)?.sup, None),
        ExperimentKind::RwMax => (rw_max_ratio(n, &mut rng)?, None),
    };
    Ok(TrialRecord {
        n,
        trial,
        seed,
        statistic,
        threshold,
        pass: statistic <= threshold,
        disjoint,
    })
}

/// Runs every trial (in parallel; trial `i` at position `p` of `n_list` uses
/// seed `seed ^ (p * trials + i)`), aggregates per `n`, and writes the CSV
/// when a path is configured.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let start = Instant::now();
    if config.trials == 0 {
        log::warn!("experiment has zero trials; writing an empty report");
    }
    let tasks: Vec<(usize, usize, u64)> = config
        .n_list
        .iter()
        .enumerate()
        .flat_map(|(p, &n)| {
            (0..config.trials).map(move |i| (n, i, derive_seed(config.seed, (p * config.trials + i) as u64)))
        })
        .collect();
    let work = || -> Result<Vec<TrialRecord>> {
        tasks
            .par_iter()
            .map(|&(n, i, seed)| run_trial(config, n, i, seed))
            .collect()
    };
    let records = match thread_cap(config) {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::invalid("threads", e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    let mut aggregates = Vec::new();
    for &n in &config.n_list {
        let rs: Vec<TrialRecord> = records.iter().filter(|r| r.n == n).cloned().collect();
        if !rs.is_empty() {
            aggregates.push(aggregate(n, &rs));
        }
    }
    let report = ExperimentReport {
        config: config.clone(),
        records,
        aggregates,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    };
    if let Some(path) = &config.csv {
        write_atomic(path, &report.to_csv()?).map_err(|e| match e {
            Error::Io(io) => Error::invalid("csv", format!("{}: {io}", path.display())),
            other => other,
        })?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spanning::fair_tree_from_choices;

    #[test]
    fn fourth_roots() {
        assert_eq!(fourth_root_floor(16), 2);
        assert_eq!(fourth_root_floor(81), 3);
        assert_eq!(fourth_root_floor(80), 2);
        assert_eq!(fourth_root_floor(256), 4);
        assert_eq!(fourth_root_floor(1024), 5);
    }

    #[test]
    fn single_branch_starts_at_w() {
        let lat = SquareLattice::new(8).unwrap();
        let t = sample_fair_tree(lat.grid(), &mut stream(1));
        let b = branch_paths(&lat, &t, 1.7).unwrap();
        assert_eq!(b.requested, 1);
        assert_eq!(b.anchors, vec![(1, 7)]);
        assert!(branch_paths(&lat, &t, 0.5).is_err());
    }

    #[test]
    fn anchors_clamp() {
        let lat = SquareLattice::new(4).unwrap();
        let t = sample_fair_tree(lat.grid(), &mut stream(1));
        let b = branch_paths(&lat, &t, 50.0).unwrap();
        assert_eq!(b.requested, 50);
        assert_eq!(b.anchors.len(), 5);
        assert_eq!(b.anchors, anchor_slots(4));
    }

    #[test]
    fn paths_follow_choices() {
        let lat = SquareLattice::new(3).unwrap();
        let t = fair_tree_from_choices(lat.grid(), &[Choice::Right; 4]).unwrap();
        let b = branch_paths(&lat, &t, 1.0).unwrap();
        assert_eq!(b.paths, vec![vec![(1, 2), (2, 2), (3, 2)]]);
        let t = fair_tree_from_choices(lat.grid(), &[Choice::Down; 4]).unwrap();
        let b = branch_paths(&lat, &t, 1.0).unwrap();
        assert_eq!(b.paths, vec![vec![(1, 2), (1, 1), (1, 0)]]);
    }

    #[test]
    fn diagonal_line_endpoints() {
        assert_eq!(DiagonalLines::endpoints(1.0), ((0.0, 1.0), (1.0, 0.0)));
        assert_eq!(DiagonalLines::endpoints(0.5), ((0.0, 0.5), (0.5, 0.0)));
        assert_eq!(DiagonalLines::endpoints(1.5), ((0.5, 1.0), (1.0, 0.5)));
        assert!(diagonal_lines(&[(0.1, 0.2)], 0.0).is_err());
    }

    #[test]
    fn lines_against_themselves() {
        let lines = diagonal_lines(&[(0.25, 0.5), (0.5, 0.75)], 1e-3).unwrap();
        let pts = lines.sample_points();
        assert_eq!(hausdorff_distance(&pts, &pts).unwrap(), 0.0);
    }

    #[test]
    fn walk_ratio_closed_form() {
        let steps = vec![1i8; 100];
        let want = 100.0 / (200.0 * 100f64.ln().ln()).sqrt();
        assert!((rw_max_ratio_of_steps(&steps).unwrap() - want).abs() < 1e-12);
        let r = rw_max_ratio(16, &mut stream(3)).unwrap();
        assert!(r.is_finite() && r > 0.0);
        assert!(rw_max_ratio(15, &mut stream(3)).is_err());
    }

    #[test]
    fn aggregates_nearest_rank() {
        let rs: Vec<TrialRecord> = (1..=10)
            .map(|k| TrialRecord {
                n: 1,
                trial: k,
                seed: 0,
                statistic: k as f64,
                threshold: 5.0,
                pass: k <= 5,
                disjoint: None,
            })
            .collect();
        let a = aggregate(1, &rs);
        assert_eq!((a.median, a.p90, a.max, a.pass_fraction), (5.5, 9.0, 10.0, 0.5));
    }

    #[test]
    fn config_errors_name_fields() {
        let mut c = ExperimentConfig::new(ExperimentKind::Diagonality, vec![8], 1, 0);
        assert!(c.validate().unwrap_err().to_string().contains("n_list"));
        c.n_list = vec![16];
        c.threads = Some(0);
        assert!(c.validate().unwrap_err().to_string().contains("threads"));
        let mut c = ExperimentConfig::new(ExperimentKind::Convergence, vec![16], 1, 0);
        c.b_grid = vec![3.0];
        assert!(c.validate().unwrap_err().to_string().contains("b_grid"));
    }

    #[test]
    fn zero_trials_is_empty() {
        let c = ExperimentConfig::new(ExperimentKind::RwMax, vec![100], 0, 5);
        let r = run_experiment(&c).unwrap();
        assert!(r.records.is_empty() && r.aggregates.is_empty());
    }
}
