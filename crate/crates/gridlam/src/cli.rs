//! Command-line interface.
//!
//! Exit codes: 0 on success (JSON written when `--json` is given), 1 on an
//! infeasible or failed instance, 2 on bad arguments.
//!
//! Graph arguments accept either a path to an edge-list file (`N` on the
//! first line, then 1-based `u v` pairs) or a generator expression:
//! `path:N`, `cycle:N`, `hypercube:N`, `k:n1,n2,...`, `prop9`, `prop10`,
//! and Cartesian products joined with `*`, e.g. `cycle:3*path:3`.

use std::ffi::OsString;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::cache::{cache_lookup_update, CacheKey, InstanceKey, Objective, RunRecord};
use crate::graphs::{self, Graph, PartitionSpec};
use crate::grid::GridSpec;
use crate::int_connectivity::{
    cartesian_drawing, hypercube_drawing, lambda2_int, min_p_sum, prop7_bound, LineDrawing,
    PNorm, DEFAULT_BIJECTION_LIMIT,
};
use crate::lambda::{
    lambda_closed_form, lambda_raw, lambda_string, Coloring, Lambda,
};
use crate::maximize::{anneal, lloyd_refine, voronoi_check, AnnealConfig, Direction};
use crate::minimize::{exact_min_search, ring_construction, zero_sum_construction, MinMethod};
use crate::oracle;
use crate::spectral::{laplacian_spectrum, multipartite_eigenvalues_exact};
use crate::svg::render_coloring_svg_bytes;

#[derive(Parser)]
#[command(
    name = "gridlam",
    version,
    about = "Optimal grid drawings of complete multipartite graphs and the integer algebraic connectivity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a lambda-minimizing drawing (ring / zero-sum / exact)
    MinDraw(MinDrawArgs),
    /// Search for a lambda-maximizing drawing (annealing or exact)
    MaxDraw(MaxDrawArgs),
    /// Evaluate lambda of a coloring JSON document
    Lambda(LambdaArgs),
    /// Laplacian spectrum: closed form for class sizes, Jacobi for graphs
    Spectrum(SpectrumArgs),
    /// Exact integer algebraic connectivity of a small graph
    Intconn(IntconnArgs),
    /// Exact minimum-p-sum of a small graph
    Minpsum(MinpsumArgs),
    /// Exhaustive enumeration statistics over colorings or drawings
    Brute(BruteArgs),
    /// Block drawing of a Cartesian product from optimal factor drawings
    CartesianDraw(CartesianDrawArgs),
    /// Recursive optimal hypercube drawing
    HypercubeDraw(HypercubeDrawArgs),
    /// Render a coloring JSON document as SVG
    Render(RenderArgs),
    /// Run the verification suite (all analytic claims, oracle-checked)
    VerifyPaper(VerifyPaperArgs),
}

#[derive(Args)]
struct GridInstance {
    /// Grid dimension d
    #[arg(long, default_value_t = 1)]
    dim: u32,
    /// Grid half-width M
    #[arg(long)]
    half_width: u32,
    /// Comma-separated class sizes n1,n2,...
    #[arg(long, value_delimiter = ',', required = true)]
    classes: Vec<usize>,
}

impl GridInstance {
    fn parse(&self) -> Result<(GridSpec, PartitionSpec), String> {
        let grid = GridSpec::new(self.dim, self.half_width).map_err(|e| e.to_string())?;
        let spec = PartitionSpec::new(self.classes.clone()).map_err(|e| e.to_string())?;
        Ok((grid, spec))
    }

    fn describe(&self, spec: &PartitionSpec) -> String {
        format!("{spec} on d={} M={}", self.dim, self.half_width)
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Write the result as JSON to this path, or `-` for stdout
    #[arg(long)]
    json: Option<String>,
    /// Render the resulting drawing as SVG to this path (d = 2 only)
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Best-known-solution cache (JSON lines) to consult and update
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct MinDrawArgs {
    #[command(flatten)]
    instance: GridInstance,
    /// Construction to use: auto picks zero-sum for equal sizes, else ring
    #[arg(long, default_value = "auto")]
    method: String,
    /// State cap for exact search
    #[arg(long, default_value_t = 10_000_000)]
    limit: u128,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MaxDrawArgs {
    #[command(flatten)]
    instance: GridInstance,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of independent annealing chains
    #[arg(long, default_value_t = 4)]
    chains: usize,
    /// Steps per temperature level (default 200 * |P|)
    #[arg(long)]
    steps: Option<usize>,
    /// Initial temperature
    #[arg(long, default_value_t = 1.0)]
    t0: f64,
    /// Geometric cooling factor in (0,1)
    #[arg(long, default_value_t = 0.995)]
    cooling: f64,
    /// Final temperature
    #[arg(long, default_value_t = 1e-4)]
    tmin: f64,
    /// Lloyd refinement rounds applied to the annealed drawing
    #[arg(long, default_value_t = 0)]
    lloyd: usize,
    /// Use exhaustive search instead of annealing
    #[arg(long, default_value_t = false)]
    exact: bool,
    /// State cap for exhaustive search
    #[arg(long, default_value_t = 10_000_000)]
    limit: u128,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct LambdaArgs {
    /// Coloring JSON document (path or `-` for stdin)
    #[arg(long)]
    coloring: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Class sizes of a complete multipartite graph (closed-form spectrum)
    #[arg(long, value_delimiter = ',')]
    classes: Option<Vec<usize>>,
    /// Arbitrary graph (Jacobi eigensolver)
    #[arg(long)]
    graph: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct IntconnArgs {
    /// Graph: edge-list file or generator expression
    #[arg(long)]
    graph: String,
    /// State cap (bijections modulo negation)
    #[arg(long, default_value_t = DEFAULT_BIJECTION_LIMIT)]
    limit: u128,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct MinpsumArgs {
    /// Graph: edge-list file or generator expression
    #[arg(long)]
    graph: String,
    /// Exponent p (a positive number, or `inf` for bandwidth)
    #[arg(long, default_value = "2")]
    p: String,
    #[arg(long, default_value_t = DEFAULT_BIJECTION_LIMIT)]
    limit: u128,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BruteArgs {
    /// Grid dimension d (coloring mode)
    #[arg(long, default_value_t = 1)]
    dim: u32,
    /// Grid half-width M (coloring mode)
    #[arg(long)]
    half_width: Option<u32>,
    /// Class sizes (coloring mode)
    #[arg(long, value_delimiter = ',')]
    classes: Option<Vec<usize>>,
    /// Graph to sweep over line drawings (bijection mode)
    #[arg(long)]
    graph: Option<String>,
    /// Disable negation-symmetry pruning in bijection mode
    #[arg(long, default_value_t = false)]
    no_symmetry: bool,
    #[arg(long, default_value_t = 10_000_000)]
    limit: u128,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CartesianDrawArgs {
    /// Left factor G (edge-list file or generator expression)
    #[arg(long)]
    left: String,
    /// Right factor H (edge-list file or generator expression)
    #[arg(long)]
    right: String,
    #[arg(long, default_value_t = DEFAULT_BIJECTION_LIMIT)]
    limit: u128,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct HypercubeDrawArgs {
    /// Hypercube order exponent: draws Q_{2^k}
    #[arg(long)]
    k: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct RenderArgs {
    /// Coloring JSON document (path or `-` for stdin)
    #[arg(long)]
    coloring: String,
    /// Output SVG path
    #[arg(long)]
    svg: PathBuf,
}

#[derive(Args)]
struct VerifyPaperArgs {
    /// Also run the figure-scale annealing reproductions
    #[arg(long, default_value_t = false)]
    figures: bool,
    /// Directory for figure SVGs
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for the figure runs
    #[arg(long, default_value_t = 20)]
    seed: u64,
}

/// Parses argv and runs the selected subcommand; returns the process exit
/// code.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn run(command: Command) -> Result<(), String> {
    match command {
        Command::MinDraw(args) => run_min_draw(args),
        Command::MaxDraw(args) => run_max_draw(args),
        Command::Lambda(args) => run_lambda(args),
        Command::Spectrum(args) => run_spectrum(args),
        Command::Intconn(args) => run_intconn(args),
        Command::Minpsum(args) => run_minpsum(args),
        Command::Brute(args) => run_brute(args),
        Command::CartesianDraw(args) => run_cartesian_draw(args),
        Command::HypercubeDraw(args) => run_hypercube_draw(args),
        Command::Render(args) => run_render(args),
        Command::VerifyPaper(args) => run_verify_paper(args),
    }
}

/// Parses a graph argument: an edge-list file if the path exists, otherwise a
/// generator expression with `*` for Cartesian products.
pub fn parse_graph_arg(arg: &str) -> Result<Graph, String> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?;
        return Graph::from_edge_list_text(&text).map_err(|e| e.to_string());
    }
    let mut product: Option<Graph> = None;
    for atom in arg.split('*') {
        let g = parse_graph_atom(atom.trim())?;
        product = Some(match product {
            None => g,
            Some(acc) => graphs::cartesian_product(&acc, &g),
        });
    }
    product.ok_or_else(|| "empty graph expression".to_string())
}

fn parse_graph_atom(atom: &str) -> Result<Graph, String> {
    match atom {
        "prop9" => return Ok(graphs::prop9_graph()),
        "prop10" => return Ok(graphs::prop10_candidate_graph()),
        _ => {}
    }
    let (kind, rest) = atom
        .split_once(':')
        .ok_or_else(|| format!("unknown graph {atom:?} (no such file, not a generator)"))?;
    let parse_n = |s: &str| {
        s.parse::<usize>()
            .map_err(|e| format!("bad vertex count in {atom:?}: {e}"))
    };
    match kind {
        "path" => graphs::path(parse_n(rest)?).map_err(|e| e.to_string()),
        "cycle" => graphs::cycle(parse_n(rest)?).map_err(|e| e.to_string()),
        "hypercube" | "q" => graphs::hypercube(parse_n(rest)?).map_err(|e| e.to_string()),
        "k" => {
            let sizes: Result<Vec<usize>, _> = rest.split(',').map(|s| s.trim().parse()).collect();
            let sizes = sizes.map_err(|e| format!("bad class sizes in {atom:?}: {e}"))?;
            let spec = PartitionSpec::new(sizes).map_err(|e| e.to_string())?;
            Ok(graphs::complete_multipartite(&spec))
        }
        _ => Err(format!("unknown generator {kind:?} in {atom:?}")),
    }
}

fn read_coloring(arg: &str) -> Result<Coloring, String> {
    let text = if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| e.to_string())?;
        buf
    } else {
        std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?
    };
    serde_json::from_str(&text).map_err(|e| format!("invalid coloring JSON: {e}"))
}

fn emit_json(target: &Option<String>, value: &serde_json::Value) -> Result<(), String> {
    let Some(target) = target else {
        return Ok(());
    };
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    if target == "-" {
        println!("{text}");
    } else {
        std::fs::write(target, text + "\n").map_err(|e| format!("{target}: {e}"))?;
    }
    Ok(())
}

fn emit_svg(target: &Option<PathBuf>, coloring: &Coloring) -> Result<(), String> {
    let Some(path) = target else {
        return Ok(());
    };
    let bytes = render_coloring_svg_bytes(coloring).map_err(|e| e.to_string())?;
    std::fs::write(path, bytes).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(())
}

fn update_cache(
    cache: &Option<PathBuf>,
    grid: &GridSpec,
    spec: &PartitionSpec,
    objective: Objective,
    record: &RunRecord,
) -> Result<Option<RunRecord>, String> {
    let Some(path) = cache else {
        return Ok(None);
    };
    let key = CacheKey {
        instance: InstanceKey::Multipartite {
            dim: grid.dim,
            half_width: grid.half_width,
            class_sizes: spec.class_sizes().to_vec(),
        },
        objective,
    };
    cache_lookup_update(path, &key, Some(record)).map_err(|e| e.to_string())
}

fn run_min_draw(args: MinDrawArgs) -> Result<(), String> {
    let start = Instant::now();
    let (grid, spec) = args.instance.parse()?;
    let result = match args.method.as_str() {
        "ring" => ring_construction(&spec, &grid),
        "zero-sum" => zero_sum_construction(&spec, &grid),
        "exact" => exact_min_search(&spec, &grid, args.limit),
        "auto" => {
            if spec.all_equal() {
                zero_sum_construction(&spec, &grid)
            } else {
                ring_construction(&spec, &grid)
            }
        }
        other => return Err(format!("unknown method {other:?} (ring, zero-sum, exact, auto)")),
    }
    .map_err(|e| e.to_string())?;
    let wall = start.elapsed().as_millis() as u64;
    let method = match result.method {
        MinMethod::RingHeuristic => "ring_heuristic",
        MinMethod::ZeroSumConstruction => "zero_sum_construction",
        MinMethod::ExactSearch => "exact_search",
    };
    let value = json!({
        "command": "min-draw",
        "instance": args.instance.describe(&spec),
        "method": method,
        "lambda": lambda_string(&result.lambda),
        "certificate": result.certificate,
        "witness": result.coloring,
        "wall_time_ms": wall,
    });
    let record = RunRecord::new(
        "min-draw",
        json!({"method": method, "limit": args.limit.to_string()}),
        args.instance.describe(&spec),
        &result.lambda,
        serde_json::to_value(&result.coloring).unwrap(),
        wall,
    );
    update_cache(&args.output.cache, &grid, &spec, Objective::Min, &record)?;
    println!(
        "{}: lambda = {} via {method}{}",
        args.instance.describe(&spec),
        lambda_string(&result.lambda),
        result
            .certificate
            .as_deref()
            .map(|c| format!(" [{c}]"))
            .unwrap_or_default()
    );
    emit_svg(&args.output.svg, &result.coloring)?;
    emit_json(&args.output.json, &value)
}

fn run_max_draw(args: MaxDrawArgs) -> Result<(), String> {
    let start = Instant::now();
    let (grid, spec) = args.instance.parse()?;
    let mut cfg = AnnealConfig::calibrated(grid.point_count(), args.seed);
    cfg.chains = args.chains;
    cfg.initial_temperature = args.t0;
    cfg.cooling_factor = args.cooling;
    cfg.minimum_temperature = args.tmin;
    if let Some(steps) = args.steps {
        cfg.steps_per_temperature = steps;
    }
    let (coloring, lambda, method) = if args.exact {
        let (c, l) = crate::maximize::exact_max_search(&spec, &grid, args.limit)
            .map_err(|e| e.to_string())?;
        (c, l, "exact_search")
    } else {
        let outcome =
            anneal(&spec, &grid, &cfg, Direction::Maximize).map_err(|e| e.to_string())?;
        let mut coloring = outcome.coloring;
        let mut lambda = outcome.lambda;
        if args.lloyd > 0 {
            coloring = lloyd_refine(&coloring, args.lloyd).map_err(|e| e.to_string())?;
            lambda = lambda_raw(&coloring).map_err(|e| e.to_string())?;
        }
        (coloring, lambda, "simulated_annealing")
    };
    let report = voronoi_check(&coloring).map_err(|e| e.to_string())?;
    let wall = start.elapsed().as_millis() as u64;
    let value = json!({
        "command": "max-draw",
        "instance": args.instance.describe(&spec),
        "method": method,
        "lambda": lambda_string(&lambda),
        "voronoi_violations": report.violations.len(),
        "decomposition_holds": report.decomposition_holds,
        "config": if args.exact { json!(null) } else { serde_json::to_value(&cfg).unwrap() },
        "witness": coloring,
        "wall_time_ms": wall,
    });
    let record = RunRecord::new(
        "max-draw",
        if args.exact {
            json!({"exact": true, "limit": args.limit.to_string()})
        } else {
            serde_json::to_value(&cfg).unwrap()
        },
        args.instance.describe(&spec),
        &lambda,
        serde_json::to_value(&coloring).unwrap(),
        wall,
    );
    update_cache(&args.output.cache, &grid, &spec, Objective::Max, &record)?;
    println!(
        "{}: lambda = {} via {method}, {} Voronoi violations",
        args.instance.describe(&spec),
        lambda_string(&lambda),
        report.violations.len()
    );
    emit_svg(&args.output.svg, &coloring)?;
    emit_json(&args.output.json, &value)
}

fn run_lambda(args: LambdaArgs) -> Result<(), String> {
    let coloring = read_coloring(&args.coloring)?;
    let raw = lambda_raw(&coloring).map_err(|e| e.to_string())?;
    let closed = lambda_closed_form(&coloring).map_err(|e| e.to_string())?;
    if raw != closed {
        return Err(format!(
            "internal inconsistency: raw {raw} != closed form {closed}"
        ));
    }
    let spec = coloring.partition();
    let n = spec.total() as i64;
    let value = json!({
        "command": "lambda",
        "instance": format!("{spec} on d={} M={}", coloring.grid().dim, coloring.grid().half_width),
        "lambda": lambda_string(&raw),
        "energy": raw.numer() * (coloring.grid().second_moment() / raw.denom()),
        "second_moment": coloring.grid().second_moment(),
        "bounds": {
            "lower": n - spec.largest() as i64,
            "upper": n,
        },
    });
    println!("lambda = {}", lambda_string(&raw));
    emit_json(&args.output.json, &value)
}

fn run_spectrum(args: SpectrumArgs) -> Result<(), String> {
    let value = match (&args.classes, &args.graph) {
        (Some(sizes), None) => {
            let spec = PartitionSpec::new(sizes.clone()).map_err(|e| e.to_string())?;
            let eigs = multipartite_eigenvalues_exact(&spec);
            println!("{spec}: eigenvalues {eigs:?}");
            json!({
                "command": "spectrum",
                "instance": spec.to_string(),
                "method": "closed_form",
                "eigenvalues": eigs,
                "lambda2": eigs[1],
                "lambda_max": eigs[eigs.len() - 1],
            })
        }
        (None, Some(graph)) => {
            let g = parse_graph_arg(graph)?;
            let s = laplacian_spectrum(&g).map_err(|e| e.to_string())?;
            println!(
                "{}: eigenvalues {:?}",
                g.label().unwrap_or("graph"),
                s.eigenvalues
            );
            json!({
                "command": "spectrum",
                "instance": g.label().unwrap_or("graph"),
                "method": "jacobi",
                "eigenvalues": s.eigenvalues,
                "lambda2": s.lambda2(),
                "lambda_max": s.lambda_max(),
            })
        }
        _ => return Err("pass exactly one of --classes or --graph".to_string()),
    };
    emit_json(&args.output.json, &value)
}

fn line_drawing_json(d: &LineDrawing) -> serde_json::Value {
    json!({
        "positions": d.positions(),
        "energy": d.energy(),
        "second_moment": d.second_moment(),
        "lambda": lambda_string(&d.lambda()),
    })
}

fn run_intconn(args: IntconnArgs) -> Result<(), String> {
    let start = Instant::now();
    let g = parse_graph_arg(&args.graph)?;
    let (lambda, witness) = lambda2_int(&g, args.limit).map_err(|e| e.to_string())?;
    let spectrum = laplacian_spectrum(&g).map_err(|e| e.to_string())?;
    let value = json!({
        "command": "intconn",
        "instance": g.label().unwrap_or(&args.graph),
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "lambda2_int": lambda_string(&lambda),
        "energy": witness.energy(),
        "second_moment": witness.second_moment(),
        "lambda2": spectrum.lambda2(),
        "witness": line_drawing_json(&witness),
        "wall_time_ms": start.elapsed().as_millis() as u64,
    });
    println!(
        "lambda_2^I = {} (= {}/{}), algebraic connectivity {:.6}",
        lambda_string(&lambda),
        witness.energy(),
        witness.second_moment(),
        spectrum.lambda2()
    );
    emit_json(&args.output.json, &value)
}

fn run_minpsum(args: MinpsumArgs) -> Result<(), String> {
    let g = parse_graph_arg(&args.graph)?;
    let p = match args.p.as_str() {
        "inf" | "infinity" => PNorm::Infinity,
        other => {
            let e: f64 = other
                .parse()
                .map_err(|err| format!("bad exponent {other:?}: {err}"))?;
            if e <= 0.0 {
                return Err("exponent must be positive".to_string());
            }
            PNorm::Finite(e)
        }
    };
    let res = min_p_sum(&g, p, args.limit).map_err(|e| e.to_string())?;
    let value = json!({
        "command": "minpsum",
        "instance": g.label().unwrap_or(&args.graph),
        "p": args.p,
        "sigma_p": res.value,
        "sigma2_squared": res.sigma2_squared,
        "mapping": res.mapping,
    });
    match res.sigma2_squared {
        Some(sq) => println!("sigma_p = {} (sigma_2^2 = {sq})", res.value),
        None => println!("sigma_p = {}", res.value),
    }
    emit_json(&args.output.json, &value)
}

fn run_brute(args: BruteArgs) -> Result<(), String> {
    let value = match (&args.classes, &args.graph) {
        (Some(sizes), None) => {
            let m = args
                .half_width
                .ok_or_else(|| "--half-width is required for coloring sweeps".to_string())?;
            let grid = GridSpec::new(args.dim, m).map_err(|e| e.to_string())?;
            let spec = PartitionSpec::new(sizes.clone()).map_err(|e| e.to_string())?;
            let stats = oracle::enumerate_colorings(&spec, &grid, args.limit, |_, _| {})
                .map_err(|e| e.to_string())?;
            println!(
                "{spec} on d={} M={m}: {} colorings, lambda in [{}, {}]",
                args.dim,
                stats.visited,
                lambda_string(&stats.min.unwrap()),
                lambda_string(&stats.max.unwrap()),
            );
            json!({
                "command": "brute",
                "kind": "colorings",
                "instance": format!("{spec} on d={} M={m}", args.dim),
                "visited": stats.visited,
                "min_lambda": lambda_string(&stats.min.unwrap()),
                "max_lambda": lambda_string(&stats.max.unwrap()),
                "min_count": stats.min_count,
                "max_count": stats.max_count,
            })
        }
        (None, Some(graph)) => {
            let g = parse_graph_arg(graph)?;
            let n = g.vertex_count();
            let points = crate::int_connectivity::line_grid_points(n);
            let s: i64 = points.iter().map(|p| p * p).sum();
            let edges = g.edges().to_vec();
            let stats = oracle::enumerate_bijections(n, &points, !args.no_symmetry, args.limit, |pos| {
                edges
                    .iter()
                    .map(|&(u, v)| {
                        let d = pos[u] - pos[v];
                        d * d
                    })
                    .sum::<i64>()
            })
            .map_err(|e| e.to_string())?;
            let min = Lambda::new(stats.min.unwrap(), s);
            let max = Lambda::new(stats.max.unwrap(), s);
            println!(
                "{}: {} drawings, lambda in [{}, {}]",
                g.label().unwrap_or("graph"),
                stats.visited,
                lambda_string(&min),
                lambda_string(&max),
            );
            json!({
                "command": "brute",
                "kind": "bijections",
                "instance": g.label().unwrap_or("graph"),
                "visited": stats.visited,
                "symmetry_pruning": !args.no_symmetry,
                "min_lambda": lambda_string(&min),
                "max_lambda": lambda_string(&max),
                "min_count": stats.min_count,
                "max_count": stats.max_count,
            })
        }
        _ => return Err("pass exactly one of --classes or --graph".to_string()),
    };
    emit_json(&args.output.json, &value)
}

fn run_cartesian_draw(args: CartesianDrawArgs) -> Result<(), String> {
    let g = parse_graph_arg(&args.left)?;
    let h = parse_graph_arg(&args.right)?;
    let (lg, g_opt) = lambda2_int(&g, args.limit).map_err(|e| e.to_string())?;
    let (lh, h_opt) = lambda2_int(&h, args.limit).map_err(|e| e.to_string())?;
    let drawing = cartesian_drawing(&g_opt, &h_opt).map_err(|e| e.to_string())?;
    let bound = prop7_bound(lg, lh, g.vertex_count(), h.vertex_count());
    let value = json!({
        "command": "cartesian-draw",
        "left": { "instance": g.label().unwrap_or(&args.left), "lambda2_int": lambda_string(&lg) },
        "right": { "instance": h.label().unwrap_or(&args.right), "lambda2_int": lambda_string(&lh) },
        "bound": lambda_string(&bound),
        "drawing": line_drawing_json(&drawing),
    });
    println!(
        "block drawing lambda = {} (bound {})",
        lambda_string(&drawing.lambda()),
        lambda_string(&bound)
    );
    emit_json(&args.output.json, &value)
}

fn run_hypercube_draw(args: HypercubeDrawArgs) -> Result<(), String> {
    let drawing = hypercube_drawing(args.k).map_err(|e| e.to_string())?;
    let value = json!({
        "command": "hypercube-draw",
        "instance": format!("Q_{}", 1u32 << args.k),
        "drawing": line_drawing_json(&drawing),
    });
    println!(
        "Q_{} drawing lambda = {}",
        1u32 << args.k,
        lambda_string(&drawing.lambda())
    );
    emit_json(&args.output.json, &value)
}

fn run_render(args: RenderArgs) -> Result<(), String> {
    let coloring = read_coloring(&args.coloring)?;
    let bytes = render_coloring_svg_bytes(&coloring).map_err(|e| e.to_string())?;
    std::fs::write(&args.svg, bytes).map_err(|e| format!("{}: {e}", args.svg.display()))?;
    println!("wrote {}", args.svg.display());
    Ok(())
}

fn run_verify_paper(args: VerifyPaperArgs) -> Result<(), String> {
    let mut outcomes = crate::verify::run_all();
    if args.figures {
        outcomes.extend(crate::figures::verify_figures(
            args.seed,
            args.out.as_deref(),
        ));
    }
    let mut failed = 0;
    for o in &outcomes {
        println!("{}", o.line());
        if !o.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(format!("{failed} verification check(s) failed"));
    }
    println!("all {} checks passed", outcomes.len());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_expression_parsing() {
        assert_eq!(parse_graph_arg("path:5").unwrap().vertex_count(), 5);
        assert_eq!(parse_graph_arg("cycle:6").unwrap().edge_count(), 6);
        assert_eq!(parse_graph_arg("hypercube:8").unwrap().edge_count(), 12);
        assert_eq!(parse_graph_arg("prop9").unwrap().vertex_count(), 5);
        assert_eq!(parse_graph_arg("k:1,2,2").unwrap().edge_count(), 8);
        let prod = parse_graph_arg("cycle:3*path:3").unwrap();
        assert_eq!(prod.vertex_count(), 9);
        assert_eq!(prod.edge_count(), 15);
        assert!(parse_graph_arg("nonsense").is_err());
        assert!(parse_graph_arg("path:x").is_err());
    }

    #[test]
    fn dispatch_exit_codes() {
        // bad arguments
        assert_eq!(dispatch(["gridlam", "min-draw"]), 2);
        assert_eq!(dispatch(["gridlam", "no-such-command"]), 2);
        // infeasible instance: sizes do not cover the grid
        assert_eq!(
            dispatch([
                "gridlam", "min-draw", "--dim", "1", "--half-width", "2", "--classes", "1,2"
            ]),
            1
        );
        // success
        assert_eq!(
            dispatch([
                "gridlam", "min-draw", "--dim", "1", "--half-width", "2", "--classes", "1,4"
            ]),
            0
        );
    }
}
