//! Command-line front end: one subcommand per library capability, writing
//! deterministic CSV/JSON artifacts that embed the resolved configuration.

use std::fmt::Write as _;
use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use ricci_core::baselines::{baseline_core, centrality, CentralityMethod};
use ricci_core::curvature::all_edge_curvatures;
use ricci_core::experiments::{
    alpha_sweep, compare_methods, robustness_deletion, ExperimentConfig,
};
use ricci_core::extract::{ExtractionConfig, TiePolicy};
use ricci_core::flow::{run_flow, FlowConfig};
use ricci_core::graph::{graph_stats, graph_to_json, load_edge_list, WeightedDigraph};
use ricci_core::metrics::evaluate_core_with;
use ricci_core::{augment_to_strong, default_artificial_weight, run_pipeline, CoreResult};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "ricci", version, about = "Core subgraph extraction on directed graphs via curvature flow")]
struct Cli {
    /// TOML or JSON file with experiment settings; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for output files (created if missing).
    #[arg(long, global = true, default_value = ".")]
    output_dir: PathBuf,
    /// Seed for randomized experiments.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker thread cap (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct FlowArgs {
    /// Laziness of the out-measures, in [0, 1].
    #[arg(long)]
    alpha: Option<f64>,
    /// Flow step size, in (0, 1).
    #[arg(long)]
    step_size: Option<f64>,
    /// Number of flow steps.
    #[arg(long)]
    iterations: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct ExtractArgs {
    #[command(flatten)]
    flow: FlowArgs,
    /// Fraction of surviving edges to cut, heaviest first, in (0, 1).
    #[arg(long)]
    tau: Option<f64>,
    /// Weight for artificial connectivity edges.
    #[arg(long)]
    artificial_weight: Option<f64>,
    /// Tie handling for equally large components: keep-all or single.
    #[arg(long)]
    tie_policy: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Node/edge counts, average degree, diameter, and density.
    Stats {
        #[arg(long)]
        input: PathBuf,
    },
    /// Add minimum artificial edges until the graph is strongly connected.
    Augment {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        artificial_weight: Option<f64>,
    },
    /// Per-edge curvature of the (strongly connected) input graph.
    Curvature {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Evolve edge weights under the curvature flow, augmenting first if
    /// needed, and record every step.
    Flow {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        flow: FlowArgs,
        #[arg(long)]
        artificial_weight: Option<f64>,
    },
    /// Full pipeline: augment, flow, cut, largest strongly connected core.
    ExtractCore {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        extract: ExtractArgs,
    },
    /// Evaluate a given core (node and edge lists) against a graph.
    Metrics {
        #[arg(long)]
        graph: PathBuf,
        /// File with one core node label per line.
        #[arg(long)]
        core_nodes: PathBuf,
        /// File with one `src dst` core edge per line.
        #[arg(long)]
        core_edges: PathBuf,
    },
    /// Centrality scores and the top-k core for one baseline method.
    Baseline {
        #[arg(long)]
        input: PathBuf,
        /// degree | betweenness | closeness | pagerank
        #[arg(long)]
        method: String,
        #[arg(long)]
        k: usize,
    },
    /// Run the pipeline across a grid of alpha values.
    AlphaSweep {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated alpha grid, e.g. 0.0,0.1,0.2.
        #[arg(long)]
        alphas: Option<String>,
        #[command(flatten)]
        extract: ExtractArgs,
    },
    /// Compare the flow core with all baselines at equal core size.
    Compare {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        extract: ExtractArgs,
    },
    /// Metric stability under random deletion of core edges.
    Robustness {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated deletion ratios, e.g. 0.1,0.2.
        #[arg(long)]
        ratios: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
        #[command(flatten)]
        extract: ExtractArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: failed to configure thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

type AnyError = Box<dyn std::error::Error>;

fn read_to_string(path: &Path) -> Result<String, AnyError> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()).into())
}

fn load_graph(path: &Path) -> Result<WeightedDigraph, AnyError> {
    let file = fs::File::open(path)
        .map_err(|e| format!("cannot open input file {}: {e}", path.display()))?;
    let (g, report) = load_edge_list(BufReader::new(file))?;
    if report.self_loops_dropped > 0 || report.duplicates_dropped > 0 {
        eprintln!(
            "note: dropped {} self-loops and {} duplicate edges while loading {}",
            report.self_loops_dropped,
            report.duplicates_dropped,
            path.display()
        );
    }
    Ok(g)
}

/// Base experiment settings: the --config file if given, defaults otherwise.
fn base_config(cli: &Cli) -> Result<ExperimentConfig, AnyError> {
    let mut config = match &cli.config {
        Some(path) => {
            let text = read_to_string(path)?;
            if path.extension().is_some_and(|e| e == "json") {
                serde_json::from_str(&text)
                    .map_err(|e| format!("invalid config {}: {e}", path.display()))?
            } else {
                toml::from_str(&text)
                    .map_err(|e| format!("invalid config {}: {e}", path.display()))?
            }
        }
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.rng_seed = seed;
    }
    Ok(config)
}

fn parse_tie_policy(s: &str) -> Result<TiePolicy, AnyError> {
    match s {
        "keep-all" => Ok(TiePolicy::KeepAllMaximal),
        "single" => Ok(TiePolicy::SingleLargest),
        other => Err(format!("unknown tie policy {other:?} (expected keep-all or single)").into()),
    }
}

fn apply_flow_args(config: &mut FlowConfig, args: &FlowArgs) {
    if let Some(alpha) = args.alpha {
        config.alpha = alpha;
    }
    if let Some(s) = args.step_size {
        config.step_size = s;
    }
    if let Some(n) = args.iterations {
        config.iterations = n;
    }
}

fn apply_extract_args(config: &mut ExtractionConfig, args: &ExtractArgs) -> Result<(), AnyError> {
    apply_flow_args(&mut config.flow, &args.flow);
    if let Some(tau) = args.tau {
        config.tau = tau;
    }
    if args.artificial_weight.is_some() {
        config.artificial_weight = args.artificial_weight;
    }
    if let Some(policy) = &args.tie_policy {
        config.tie_policy = parse_tie_policy(policy)?;
    }
    Ok(())
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>, AnyError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| format!("invalid number {t:?}: {e}").into())
        })
        .collect()
}

fn write_output(dir: &Path, name: &str, contents: &str) -> Result<(), AnyError> {
    fs::create_dir_all(dir)
        .map_err(|e| format!("cannot create output dir {}: {e}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents)
        .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn write_json(dir: &Path, name: &str, value: &serde_json::Value) -> Result<(), AnyError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_output(dir, name, &text)
}

/// CSV header: a version line and the resolved config as one JSON comment.
fn csv_preamble<C: Serialize>(config: &C) -> String {
    let config = serde_json::to_string(config).expect("config serializes");
    format!("# version={VERSION}\n# config={config}\n")
}

fn tagged<C: Serialize, V: Serialize>(config: &C, payload: V) -> serde_json::Value {
    json!({
        "version": VERSION,
        "config": config,
        "result": payload,
    })
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_owned(), |x| x.to_string())
}

#[derive(Serialize, Deserialize)]
struct CoreFile {
    nodes: Vec<String>,
    edges: Vec<(String, String)>,
    retained_edges: Vec<(String, String)>,
    is_single_scc: bool,
    degenerate: bool,
}

fn core_to_file(g: &WeightedDigraph, core: &CoreResult) -> CoreFile {
    let edge_pair = |ei: &usize| {
        let e = g.edge(*ei);
        (g.label(e.src).to_owned(), g.label(e.dst).to_owned())
    };
    CoreFile {
        nodes: core.core_nodes.iter().map(|&u| g.label(u).to_owned()).collect(),
        edges: core.core_edges.iter().map(edge_pair).collect(),
        retained_edges: core.retained_edges.iter().map(edge_pair).collect(),
        is_single_scc: core.is_single_scc,
        degenerate: core.degenerate,
    }
}

fn run(cli: &Cli) -> Result<(), AnyError> {
    let out = &cli.output_dir;
    match &cli.command {
        Command::Stats { input } => {
            let g = load_graph(input)?;
            let stats = graph_stats(&g);
            let config = json!({ "input": input.display().to_string() });
            write_json(out, "stats.json", &tagged(&config, stats))?;
        }
        Command::Augment {
            input,
            artificial_weight,
        } => {
            let g = load_graph(input)?;
            let a = artificial_weight.unwrap_or_else(|| default_artificial_weight(&g));
            let res = augment_to_strong(&g, a)?;
            let added: Vec<(String, String)> = res
                .added_edges
                .iter()
                .map(|e| (g.label(e.src).to_owned(), g.label(e.dst).to_owned()))
                .collect();
            let config = json!({
                "input": input.display().to_string(),
                "artificial_weight": a,
            });
            let payload = json!({
                "added_edges": added,
                "graph": graph_to_json(&res.graph),
            });
            write_json(out, "augmented.json", &tagged(&config, payload))?;
        }
        Command::Curvature { input, alpha } => {
            let g = load_graph(input)?;
            let alpha = alpha.unwrap_or(0.1);
            let curvatures = all_edge_curvatures(&g, alpha)?;
            let config = json!({
                "input": input.display().to_string(),
                "alpha": alpha,
            });
            let mut csv = csv_preamble(&config);
            csv.push_str("src,dst,weight,rho,wasserstein,kappa\n");
            for (ei, c) in curvatures.iter().enumerate() {
                writeln!(
                    csv,
                    "{},{},{},{},{},{}",
                    g.label(c.edge.src),
                    g.label(c.edge.dst),
                    g.weight(ei),
                    c.rho,
                    c.wasserstein,
                    c.kappa
                )?;
            }
            write_output(out, "curvature.csv", &csv)?;
        }
        Command::Flow {
            input,
            flow,
            artificial_weight,
        } => {
            let g = load_graph(input)?;
            let mut config = base_config(cli)?;
            apply_flow_args(&mut config.extraction.flow, flow);
            let a = artificial_weight.unwrap_or_else(|| default_artificial_weight(&g));
            let augmented = augment_to_strong(&g, a)?;
            let trace = run_flow(&augmented.graph, &config.extraction.flow)?;
            let cfg = json!({
                "input": input.display().to_string(),
                "artificial_weight": a,
                "flow": config.extraction.flow,
            });
            let mut csv = csv_preamble(&cfg);
            csv.push_str("step,src,dst,artificial,weight\n");
            for (step, weights) in trace.weights_per_step.iter().enumerate() {
                for (ei, w) in weights.iter().enumerate() {
                    let e = augmented.graph.edge(ei);
                    writeln!(
                        csv,
                        "{step},{},{},{},{w}",
                        augmented.graph.label(e.src),
                        augmented.graph.label(e.dst),
                        augmented.graph.is_artificial(ei)
                    )?;
                }
            }
            write_output(out, "flow.csv", &csv)?;
            write_json(out, "flow.json", &tagged(&cfg, &trace))?;
        }
        Command::ExtractCore { input, extract } => {
            let g = load_graph(input)?;
            let mut config = base_config(cli)?;
            apply_extract_args(&mut config.extraction, extract)?;
            let res = run_pipeline(&g, &config.extraction)?;
            let metrics =
                evaluate_core_with(&res.base, &res.core, config.pair_orientation)?;
            let cfg = json!({
                "input": input.display().to_string(),
                "extraction": config.extraction,
                "pair_orientation": config.pair_orientation,
            });
            write_json(
                out,
                "core.json",
                &tagged(&cfg, core_to_file(&res.base, &res.core)),
            )?;
            let mut csv = csv_preamble(&cfg);
            csv.push_str("node,label,is_core\n");
            let mut in_core = vec![false; res.base.node_count()];
            for &u in &res.core.core_nodes {
                in_core[u] = true;
            }
            for u in 0..res.base.node_count() {
                writeln!(csv, "{u},{},{}", res.base.label(u), in_core[u])?;
            }
            write_output(out, "core_nodes.csv", &csv)?;
            write_json(out, "metrics.json", &tagged(&cfg, metrics))?;
        }
        Command::Metrics {
            graph,
            core_nodes,
            core_edges,
        } => {
            let g = load_graph(graph)?;
            let node_text = read_to_string(core_nodes)?;
            let mut nodes = Vec::new();
            for label in node_text.split_whitespace() {
                nodes.push(
                    g.node_by_label(label)
                        .ok_or_else(|| format!("unknown core node label {label:?}"))?,
                );
            }
            let edge_text = read_to_string(core_edges)?;
            let mut edges = Vec::new();
            for line in edge_text.lines() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let mut parts = line.split_whitespace();
                let (src, dst) = (
                    parts.next().ok_or("core edge line missing source")?,
                    parts.next().ok_or("core edge line missing target")?,
                );
                let s = g
                    .node_by_label(src)
                    .ok_or_else(|| format!("unknown core edge label {src:?}"))?;
                let d = g
                    .node_by_label(dst)
                    .ok_or_else(|| format!("unknown core edge label {dst:?}"))?;
                edges.push(
                    g.edge_between(s, d)
                        .ok_or_else(|| format!("core edge {src} -> {dst} not in graph"))?,
                );
            }
            let core = CoreResult {
                core_nodes: nodes,
                core_edges: edges,
                retained_edges: Vec::new(),
                is_single_scc: true,
                degenerate: false,
            };
            let config = base_config(cli)?;
            let report = evaluate_core_with(&g, &core, config.pair_orientation)?;
            let cfg = json!({
                "graph": graph.display().to_string(),
                "core_nodes": core_nodes.display().to_string(),
                "core_edges": core_edges.display().to_string(),
                "pair_orientation": config.pair_orientation,
            });
            write_json(out, "metrics.json", &tagged(&cfg, report))?;
        }
        Command::Baseline { input, method, k } => {
            let g = load_graph(input)?;
            let method: CentralityMethod = method.parse()?;
            let config = base_config(cli)?;
            let scores = centrality(&g, method)?;
            let core = baseline_core(&g, method, *k, config.extraction.tie_policy)?;
            let report = evaluate_core_with(&g, &core, config.pair_orientation)?;
            let cfg = json!({
                "input": input.display().to_string(),
                "method": method.to_string(),
                "k": k,
                "tie_policy": config.extraction.tie_policy,
                "pair_orientation": config.pair_orientation,
            });
            let mut csv = csv_preamble(&cfg);
            csv.push_str("node,label,score\n");
            for (u, s) in scores.scores.iter().enumerate() {
                writeln!(csv, "{u},{},{s}", g.label(u))?;
            }
            write_output(out, "baseline_scores.csv", &csv)?;
            let payload = json!({
                "core": core_to_file(&g, &core),
                "metrics": report,
            });
            write_json(out, "baseline_core.json", &tagged(&cfg, payload))?;
        }
        Command::AlphaSweep {
            input,
            alphas,
            extract,
        } => {
            let g = load_graph(input)?;
            let mut config = base_config(cli)?;
            apply_extract_args(&mut config.extraction, extract)?;
            if let Some(alphas) = alphas {
                config.alpha_grid = parse_f64_list(alphas)?;
            }
            let rows = alpha_sweep(&g, &config)?;
            let cfg = json!({
                "input": input.display().to_string(),
                "experiment": config,
            });
            let mut csv = csv_preamble(&cfg);
            csv.push_str("alpha,core_nodes,core_edges,r_d_in,r_d_out,r_s,xi\n");
            for row in &rows {
                writeln!(
                    csv,
                    "{},{},{},{},{},{},{}",
                    row.alpha,
                    row.core_node_count,
                    row.core_edge_count,
                    row.metrics.r_d_in,
                    row.metrics.r_d_out,
                    fmt_opt(row.metrics.r_s),
                    row.metrics.xi
                )?;
            }
            write_output(out, "alpha_sweep.csv", &csv)?;
        }
        Command::Compare { input, extract } => {
            let g = load_graph(input)?;
            let mut config = base_config(cli)?;
            apply_extract_args(&mut config.extraction, extract)?;
            let (_, rows) = compare_methods(&g, &config)?;
            let cfg = json!({
                "input": input.display().to_string(),
                "experiment": config,
            });
            let mut csv = csv_preamble(&cfg);
            csv.push_str("method,core_nodes,core_edges,r_d_in,r_d_out,r_s\n");
            for row in &rows {
                writeln!(
                    csv,
                    "{},{},{},{},{},{}",
                    row.method,
                    row.core_node_count,
                    row.core_edge_count,
                    row.metrics.r_d_in,
                    row.metrics.r_d_out,
                    fmt_opt(row.metrics.r_s)
                )?;
            }
            write_output(out, "compare.csv", &csv)?;
            write_json(out, "compare.json", &tagged(&cfg, rows))?;
        }
        Command::Robustness {
            input,
            ratios,
            trials,
            extract,
        } => {
            let g = load_graph(input)?;
            let mut config = base_config(cli)?;
            apply_extract_args(&mut config.extraction, extract)?;
            if let Some(ratios) = ratios {
                config.deletion_ratios = parse_f64_list(ratios)?;
            }
            if let Some(trials) = trials {
                config.trials = *trials;
            }
            let rows = robustness_deletion(&g, &config)?;
            let cfg = json!({
                "input": input.display().to_string(),
                "experiment": config,
            });
            let mut csv = csv_preamble(&cfg);
            csv.push_str("method,ratio,deleted_edges,trials,r_d_in,r_d_out,r_s\n");
            for row in &rows {
                writeln!(
                    csv,
                    "{},{},{},{},{},{},{}",
                    row.method,
                    row.ratio,
                    row.deleted_edges,
                    row.trials,
                    row.r_d_in,
                    row.r_d_out,
                    fmt_opt(row.r_s)
                )?;
            }
            write_output(out, "robustness.csv", &csv)?;
        }
    }
    Ok(())
}
