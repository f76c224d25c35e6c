//! Argument parsing and the subcommand handlers.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use fairpeano::feu::{
    classify, deflate, densest_subgraphs, one_density, solve_feu_exact, solve_feu_frank_wolfe,
    uniformize, Density, FeuSolution,
};
use fairpeano::io::{parse_weights, read_graph, write_atomic, GraphFile};
use fairpeano::peano::{dual_tree, peano_curve, stopping_index};
use fairpeano::rng::stream;
use fairpeano::scaling::{default_b_grid, run_experiment, ExperimentConfig, ExperimentKind};
use fairpeano::spanning::{
    kirchhoff_edge_probabilities, sample_fair_tree, sample_wust, EdgeWeights, WustAlgorithm,
};
use fairpeano::{Graph, ModifiedGrid, SquareLattice};
use serde_json::{json, Value};

use crate::render::{render_svg, ColorMode, RenderScene, Strokes};
use crate::tree_file::{TreeFile, TreeHost};
use crate::{CliError, EXIT_INPUT, EXIT_OK};

#[derive(Debug, Parser)]
#[command(name = "fairpeano", version, about = "Fair spanning trees, fairest edge usage and Peano curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a fair tree or a weighted uniform spanning tree
    Sample(SampleArgs),
    /// Draw a lattice tree, its dual and its Peano curve as SVG
    Render(RenderArgs),
    /// Edge probabilities of the weighted uniform spanning tree
    Probs(ProbsArgs),
    /// Solve the fairest-edge-usage problem
    Feu(FeuArgs),
    /// Classify a graph as strictly 1-dense, homogeneous or inhomogeneous
    Classify(GraphArgs),
    /// Contract minimal cores until one vertex remains
    Deflate(GraphArgs),
    /// Find weights giving every edge the same tree probability
    Uniformize(UniformizeArgs),
    /// Run a seeded scaling experiment
    Experiment(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Fair,
    Wilson,
    AldousBroder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Walk {
    Wilson,
    AldousBroder,
}

impl From<Walk> for WustAlgorithm {
    fn from(w: Walk) -> Self {
        match w {
            Walk::Wilson => WustAlgorithm::Wilson,
            Walk::AldousBroder => WustAlgorithm::AldousBroder,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Solver {
    Exact,
    FrankWolfe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Diagonality,
    Convergence,
    RwMax,
}

impl From<Kind> for ExperimentKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Diagonality => ExperimentKind::Diagonality,
            Kind::Convergence => ExperimentKind::Convergence,
            Kind::RwMax => ExperimentKind::RwMax,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColorArg {
    Plain,
    ClosestBoundaryVertex,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected M,N, found `{s}`"))?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    Ok((p(a)?, p(b)?))
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("host").required(true).args(["n", "grid", "graph"])))]
pub struct SampleArgs {
    /// Lattice size; samples on the modified grid (n-1, n-1)
    #[arg(long)]
    pub n: Option<usize>,
    /// Modified grid dimensions as M,N
    #[arg(long, value_parser = parse_pair)]
    pub grid: Option<(usize, usize)>,
    /// Graph file (weighted uniform spanning tree only)
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Edge weights file (walk algorithms only)
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Defaults to `fair` on lattices and grids, `wilson` on graph files
    #[arg(long, value_enum)]
    pub algorithm: Option<Algorithm>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["tree", "n"])))]
pub struct RenderArgs {
    /// Tree file of a lattice
    #[arg(long)]
    pub tree: Option<PathBuf>,
    /// Draw the bare lattice of this size
    #[arg(long)]
    pub n: Option<usize>,
    /// Draw the dual tree
    #[arg(long, requires = "tree")]
    pub dual: bool,
    /// Draw the Peano curve
    #[arg(long, requires = "tree")]
    pub curve: bool,
    /// Draw the curve only until it first leaves {x + y <= B}
    #[arg(long, value_name = "B", requires = "curve")]
    pub curve_level: Option<f64>,
    #[arg(long, value_enum, default_value = "plain")]
    pub color_mode: ColorArg,
    #[arg(long, default_value_t = 800)]
    pub canvas: u32,
    #[arg(long, default_value_t = Strokes::default().tree)]
    pub tree_stroke: f64,
    #[arg(long, default_value_t = Strokes::default().dual)]
    pub dual_stroke: f64,
    #[arg(long, default_value_t = Strokes::default().curve)]
    pub curve_stroke: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("method").required(true).args(["exact", "mc"])))]
pub struct ProbsArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Overrides weights stored in the graph file
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Exact probabilities from effective resistances
    #[arg(long)]
    pub exact: bool,
    /// Monte Carlo estimate from this many sampled trees
    #[arg(long, value_name = "TRIALS")]
    pub mc: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "wilson")]
    pub algorithm: Walk,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FeuArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum, default_value = "exact")]
    pub solver: Solver,
    /// Stopping bound on the Frank-Wolfe gap of the variance
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Iteration cap for the Frank-Wolfe solver
    #[arg(long, default_value_t = 1_000_000)]
    pub max_iter: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct UniformizeArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 10_000)]
    pub max_iter: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Comma-separated lattice sizes (walk lengths for rw-max)
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Worker threads; defaults to FAIRPEANO_THREADS, then all cores
    #[arg(long)]
    pub threads: Option<usize>,
    /// Constant in the pass threshold
    #[arg(long)]
    pub threshold_constant: Option<f64>,
    /// Number of b values in [0, 2] for the convergence experiment
    #[arg(long, default_value_t = 21)]
    pub b_points: usize,
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Sample(a) => sample(a),
        Command::Render(a) => render(a),
        Command::Probs(a) => probs(a),
        Command::Feu(a) => feu(a),
        Command::Classify(a) => classify_cmd(a),
        Command::Deflate(a) => deflate_cmd(a),
        Command::Uniformize(a) => uniformize_cmd(a),
        Command::Experiment(a) => experiment(a),
    }
}

fn file_err(path: &Path) -> impl FnOnce(fairpeano::Error) -> CliError + '_ {
    move |source| CliError::File {
        path: path.to_path_buf(),
        source,
    }
}

fn load_graph(path: &Path) -> Result<(Graph, Option<EdgeWeights>), CliError> {
    read_graph(path).map_err(file_err(path))
}

fn load_weights(path: &Path, g: &Graph) -> Result<EdgeWeights, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| file_err(path)(e.into()))?;
    parse_weights(&text, g).map_err(file_err(path))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()).map_err(file_err(p)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Core(e.into()))
        }
    }
}

fn emit_json(out: Option<&Path>, value: &Value) -> Result<(), CliError> {
    let mut s = serde_json::to_string_pretty(value).expect("json value serializes");
    s.push('\n');
    emit(out, &s)
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn sample(a: SampleArgs) -> Result<(), CliError> {
    let mut rng = stream(a.seed);
    let (host, g, grid) = if let Some(n) = a.n {
        let lat = SquareLattice::new(n)?;
        let g = lat.grid().graph().clone();
        (TreeHost::Lattice(n), g, Some(lat.grid().clone()))
    } else if let Some((m, n)) = a.grid {
        let grid = ModifiedGrid::new(m, n)?;
        (TreeHost::Grid(m, n), grid.graph().clone(), Some(grid))
    } else {
        let path = a.graph.as_deref().expect("clap requires a host");
        let (g, w) = load_graph(path)?;
        let file = GraphFile {
            vertex_count: g.vertex_count(),
            edges: g.edges().to_vec(),
            weights: w.map(|w| w.as_slice().to_vec()),
        };
        (TreeHost::Graph(file), g, None)
    };
    let algorithm = a.algorithm.unwrap_or(if grid.is_some() {
        Algorithm::Fair
    } else {
        Algorithm::Wilson
    });
    let tree = match algorithm {
        Algorithm::Fair => {
            let grid = grid.ok_or_else(|| usage("--algorithm fair needs --n or --grid"))?;
            if a.weights.is_some() {
                return Err(usage("--weights applies to the wilson and aldous-broder algorithms"));
            }
            sample_fair_tree(&grid, &mut rng)
        }
        Algorithm::Wilson | Algorithm::AldousBroder => {
            let w = match (&a.weights, &host) {
                (Some(p), _) => load_weights(p, &g)?,
                (None, TreeHost::Graph(f)) => match &f.weights {
                    Some(w) => EdgeWeights::new(w.clone())?,
                    None => EdgeWeights::unit(g.edge_count()),
                },
                (None, _) => EdgeWeights::unit(g.edge_count()),
            };
            let walk = if algorithm == Algorithm::Wilson {
                WustAlgorithm::Wilson
            } else {
                WustAlgorithm::AldousBroder
            };
            sample_wust(&g, &w, &mut rng, walk)?
        }
    };
    emit(a.out.as_deref(), &TreeFile { host, tree }.to_json())
}

fn render(a: RenderArgs) -> Result<(), CliError> {
    let (n, tree) = match (&a.tree, a.n) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| file_err(path)(e.into()))?;
            let file = TreeFile::parse(&text).map_err(|e| match e {
                CliError::Format { field, message } => CliError::Format {
                    field: format!("{}: {field}", path.display()),
                    message,
                },
                other => other,
            })?;
            let n = match file.host {
                TreeHost::Lattice(n) => n,
                TreeHost::Grid(m, k) if m == k => m + 1,
                _ => {
                    return Err(CliError::Format {
                        field: format!("{}: n", path.display()),
                        message: "render needs a lattice tree (`n`, or a square `grid`)".into(),
                    })
                }
            };
            (n, Some(file.tree))
        }
        (None, Some(n)) => (n, None),
        (None, None) => unreachable!("clap requires a source"),
    };
    let lat = SquareLattice::new(n)?;
    let mut scene = RenderScene::new(n);
    scene.canvas = a.canvas;
    scene.color_mode = match a.color_mode {
        ColorArg::Plain => ColorMode::Plain,
        ColorArg::ClosestBoundaryVertex => ColorMode::ClosestBoundaryVertex,
    };
    scene.strokes = Strokes {
        tree: a.tree_stroke,
        dual: a.dual_stroke,
        curve: a.curve_stroke,
    };
    if let Some(t) = &tree {
        if a.dual {
            scene.dual = Some(dual_tree(&lat, t)?);
        }
        if a.curve {
            let c = peano_curve(&lat, t)?;
            if let Some(b) = a.curve_level {
                if !(0.0..=2.0).contains(&b) {
                    return Err(usage(format!("--curve-level must lie in [0, 2], found {b}")));
                }
                scene.curve_prefix = Some(stopping_index(&c, b));
            }
            scene.curve = Some(c);
        }
    }
    scene.tree = tree;
    emit(a.out.as_deref(), &render_svg(&scene)?)
}

fn probs(a: ProbsArgs) -> Result<(), CliError> {
    let (g, stored) = load_graph(&a.graph)?;
    let w = match &a.weights {
        Some(p) => load_weights(p, &g)?,
        None => stored.unwrap_or_else(|| EdgeWeights::unit(g.edge_count())),
    };
    let value = if a.exact {
        json!({
            "method": "exact",
            "probabilities": kirchhoff_edge_probabilities(&g, &w)?,
        })
    } else {
        let trials = a.mc.expect("clap requires a method");
        if trials == 0 {
            return Err(usage("--mc needs at least one trial"));
        }
        let mut rng = stream(a.seed);
        let mut counts = vec![0usize; g.edge_count()];
        for _ in 0..trials {
            for &e in sample_wust(&g, &w, &mut rng, a.algorithm.into())?.edges() {
                counts[e] += 1;
            }
        }
        let p: Vec<f64> = counts.iter().map(|&c| c as f64 / trials as f64).collect();
        let se: Vec<f64> = p
            .iter()
            .map(|&x| (x * (1.0 - x) / trials as f64).sqrt())
            .collect();
        json!({
            "method": "monte_carlo",
            "algorithm": WustAlgorithm::from(a.algorithm),
            "trials": trials,
            "seed": a.seed,
            "probabilities": p,
            "standard_errors": se,
        })
    };
    emit_json(a.out.as_deref(), &value)
}

fn solution_json(solver: &str, s: &FeuSolution) -> Value {
    json!({
        "solver": solver,
        "eta": s.eta,
        "variance": s.variance,
        "homogeneous": s.homogeneous,
        "converged": s.converged,
        "iterations": s.iterations,
        "gap": s.gap,
        "distance_bound": s.distance_bound(),
        "support_size": s.witness.len(),
    })
}

fn feu(a: FeuArgs) -> Result<(), CliError> {
    let (g, _) = load_graph(&a.graph)?;
    let (name, s) = match a.solver {
        Solver::Exact => ("exact", solve_feu_exact(&g, a.tol)?),
        Solver::FrankWolfe => ("frank_wolfe", solve_feu_frank_wolfe(&g, a.tol, a.max_iter)?),
    };
    emit_json(a.out.as_deref(), &solution_json(name, &s))?;
    if !s.converged {
        return Err(CliError::NotConverged(format!(
            "{name} solver stopped after {} iterations with gap {:e}",
            s.iterations, s.gap
        )));
    }
    Ok(())
}

fn ratio(d: &Density) -> String {
    let (p, q) = d.reduced();
    format!("{p}/{q}")
}

fn classify_cmd(a: GraphArgs) -> Result<(), CliError> {
    let (g, _) = load_graph(&a.graph)?;
    let class = classify(&g)?;
    let scan = densest_subgraphs(&g)?;
    let cores: Vec<&Vec<usize>> = scan.minimal_cores().map(|c| &c.vertices).collect();
    emit_json(
        a.out.as_deref(),
        &json!({
            "classification": class.to_string(),
            "theta": ratio(&one_density(&g)?),
            "max_density": ratio(&scan.max_density),
            "max_proper_density": scan.max_proper_density.as_ref().map(ratio),
            "minimal_cores": cores,
        }),
    )
}

fn deflate_cmd(a: GraphArgs) -> Result<(), CliError> {
    let (g, _) = load_graph(&a.graph)?;
    let seq = deflate(&g)?;
    let stages: Vec<Value> = seq
        .stages
        .iter()
        .map(|s| {
            json!({
                "vertex_count": s.graph.vertex_count(),
                "edge_count": s.graph.edge_count(),
                "core_vertices": s.core_vertices,
                "core_original_edges": s.core_original_edges,
                "density": ratio(&s.density),
            })
        })
        .collect();
    emit_json(
        a.out.as_deref(),
        &json!({ "stage_count": seq.len(), "stages": stages }),
    )
}

fn uniformize_cmd(a: UniformizeArgs) -> Result<(), CliError> {
    let (g, _) = load_graph(&a.graph)?;
    let u = uniformize(&g, a.tol, a.max_iter)?;
    emit_json(
        a.out.as_deref(),
        &json!({
            "weights": u.weights,
            "probabilities": u.probabilities,
            "residual": u.residual,
            "iterations": u.iterations,
        }),
    )
}

fn experiment(a: ExperimentArgs) -> Result<(), CliError> {
    let kind = ExperimentKind::from(a.kind);
    let mut config = ExperimentConfig::new(kind, a.n_list, a.trials, a.seed);
    config.csv = a.csv;
    config.threads = a.threads;
    config.b_grid = default_b_grid(a.b_points);
    if let Some(c) = a.threshold_constant {
        config.threshold_constant = c;
    }
    let report = run_experiment(&config)?;
    log::info!("experiment finished in {:.2} s", report.elapsed_seconds);
    let mut text = String::new();
    for agg in &report.aggregates {
        text.push_str(&format!(
            "# n={} median={} p90={} max={} pass_fraction={}\n",
            agg.n, agg.median, agg.p90, agg.max, agg.pass_fraction
        ));
    }
    emit(None, &text)
}
