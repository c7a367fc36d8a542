//! Command-line interface: coloring, verification, exact chromatic index,
//! coefficient certificates, instance generation, and the benchmark
//! harness.
//!
//! Exit codes: 0 success, 2 parse error, 3 precondition violation,
//! 4 coloring/verification failure.

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use strongce::coloring::{verify_strong_complete, ListAssignment, Verification};
use strongce::engine;
use strongce::gen;
use strongce::graph::MultiGraph;
use strongce::io::{
    parse_coloring, parse_lists, serialize_coloring, serialize_lists, GraphFile,
};
use strongce::nullstellensatz::{expand_product, paper_certificate};
use strongce::oracle;

const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_FAILURE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "strongce",
    about = "Strong list edge-coloring of maximum-degree-4 multigraphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color a graph from per-edge lists (or uniform lists).
    Color {
        graph: PathBuf,
        /// Lists file; mutually exclusive with --uniform.
        #[arg(long, conflicts_with = "uniform")]
        lists: Option<PathBuf>,
        /// Use the identical list {0..k-1} on every edge.
        #[arg(long)]
        uniform: Option<u32>,
        /// Write the coloring here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the engine's step-by-step trace.
        #[arg(long)]
        trace: bool,
        /// Seed recorded for reproducibility (overridden by STRONGCE_SEED).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Accept lists shorter than 22 and solve by exact search only.
        #[arg(long)]
        allow_short: bool,
    },
    /// Check a coloring against a graph and lists.
    Verify {
        graph: PathBuf,
        lists: PathBuf,
        coloring: PathBuf,
    },
    /// Exact strong chromatic index by branch and bound.
    Chis {
        graph: PathBuf,
        /// Search node limit.
        #[arg(long, default_value_t = 50_000_000)]
        limit: u64,
    },
    /// Coefficient of a monomial in a product of (x_i - x_j) factors.
    Coeff {
        /// The built-in 29-factor five-cycle product (prints -1).
        #[arg(long, conflicts_with_all = ["factors", "monomial"])]
        paper: bool,
        /// File of factor lines `i j` (1-based variable indices).
        #[arg(long, requires = "monomial")]
        factors: Option<PathBuf>,
        /// Monomial such as "x1^2 x3" (omitted exponent means 1).
        #[arg(long)]
        monomial: Option<String>,
    },
    /// Generate a graph (and optionally lists).
    Gen {
        /// Vertex count (models; ignored by fixtures, selects the cage).
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// regular4 | random-maxdeg4 | cage | fixture:<name>
        #[arg(long)]
        model: String,
        /// Minimum girth for regular4 (4, 5, or 6).
        #[arg(long)]
        girth: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// uniform:<k> or random:<k>:<palette>
        #[arg(long)]
        lists: Option<String>,
        /// Graph output path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Lists output path (defaults to <out>.lists).
        #[arg(long)]
        lists_out: Option<PathBuf>,
    },
    /// Run the engine over a corpus directory of .graph/.lists files.
    Bench {
        corpus_dir: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write a JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

type CmdResult = Result<(), (u8, String)>;

fn effective_seed(flag_seed: u64) -> u64 {
    match std::env::var("STRONGCE_SEED") {
        Ok(s) => s.parse().unwrap_or(flag_seed),
        Err(_) => flag_seed,
    }
}

fn read_file(path: &Path) -> Result<String, (u8, String)> {
    std::fs::read_to_string(path)
        .map_err(|e| (EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<MultiGraph, (u8, String)> {
    let text = read_file(path)?;
    GraphFile::parse(&text)
        .and_then(|gf| gf.to_graph())
        .map_err(|e| (EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Color {
            graph,
            lists,
            uniform,
            out,
            trace,
            seed,
            allow_short,
        } => cmd_color(&graph, lists.as_deref(), uniform, out.as_deref(), trace, seed, allow_short),
        Command::Verify {
            graph,
            lists,
            coloring,
        } => cmd_verify(&graph, &lists, &coloring),
        Command::Chis { graph, limit } => cmd_chis(&graph, limit),
        Command::Coeff {
            paper,
            factors,
            monomial,
        } => cmd_coeff(paper, factors.as_deref(), monomial.as_deref()),
        Command::Gen {
            n,
            model,
            girth,
            seed,
            lists,
            out,
            lists_out,
        } => cmd_gen(n, &model, girth, seed, lists.as_deref(), out.as_deref(), lists_out),
        Command::Bench {
            corpus_dir,
            seed,
            out,
        } => cmd_bench(&corpus_dir, seed, out.as_deref()),
    }
}

fn cmd_color(
    graph_path: &Path,
    lists_path: Option<&Path>,
    uniform: Option<u32>,
    out: Option<&Path>,
    trace: bool,
    seed: u64,
    allow_short: bool,
) -> CmdResult {
    let _ = effective_seed(seed); // coloring is deterministic; seed kept for interface symmetry
    let g = load_graph(graph_path)?;
    let lists = match (lists_path, uniform) {
        (Some(p), None) => {
            let text = read_file(p)?;
            parse_lists(&text, g.edge_count())
                .map_err(|e| (EXIT_PARSE, format!("{}: {e}", p.display())))?
        }
        (None, k) => ListAssignment::uniform(g.edge_count(), k.unwrap_or(22)),
        (Some(_), Some(_)) => unreachable!("clap forbids both"),
    };

    let max_deg = if g.edge_count() == 0 {
        0
    } else {
        g.max_degree().map_err(|e| (EXIT_PRECONDITION, e.to_string()))?
    };
    if max_deg > 4 {
        return Err((
            EXIT_PRECONDITION,
            format!("maximum degree {max_deg} exceeds 4"),
        ));
    }
    if lists.min_list_len() < 22 && g.edge_count() > 0 && !allow_short {
        return Err((
            EXIT_PRECONDITION,
            format!(
                "every list needs at least 22 colors (smallest has {}); pass --allow-short for exact-search mode",
                lists.min_list_len()
            ),
        ));
    }

    let (colors, summary) = if allow_short && lists.min_list_len() < 22 {
        let found = oracle::list_colorable(&g, &lists, oracle::SearchConfig::default())
            .map_err(|e| (EXIT_FAILURE, e.to_string()))?
            .ok_or((EXIT_FAILURE, "no coloring exists for these lists".to_string()))?;
        (found, "handler=exact-search fallback_depth=2".to_string())
    } else {
        let outcome =
            engine::strong_list_color(&g, &lists).map_err(|e| match e {
                engine::EngineError::Precondition(m) => (EXIT_PRECONDITION, m),
                other => (EXIT_FAILURE, other.to_string()),
            })?;
        if trace {
            for line in &outcome.trace {
                eprintln!("trace: {line}");
            }
        }
        let summary = format!(
            "handler={} fallback_depth={}",
            outcome.handler_summary(),
            outcome.fallback_depth
        );
        (outcome.colors, summary)
    };

    let text = serialize_coloring(&colors);
    match out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| (EXIT_FAILURE, format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    println!("{summary}");
    Ok(())
}

fn cmd_verify(graph_path: &Path, lists_path: &Path, coloring_path: &Path) -> CmdResult {
    let g = load_graph(graph_path)?;
    let lists_text = read_file(lists_path)?;
    let lists = parse_lists(&lists_text, g.edge_count())
        .map_err(|e| (EXIT_PARSE, format!("{}: {e}", lists_path.display())))?;
    let coloring_text = read_file(coloring_path)?;
    let colors = parse_coloring(&coloring_text, g.edge_count())
        .map_err(|e| (EXIT_PARSE, format!("{}: {e}", coloring_path.display())))?;
    match verify_strong_complete(&g, &lists, &colors) {
        Verification::Ok => {
            println!("OK");
            Ok(())
        }
        Verification::Conflict { e1, e2, color } => {
            println!("CONFLICT {e1} {e2} {color}");
            Err((EXIT_FAILURE, "coloring has a conflict".into()))
        }
        Verification::ListViolation { edge, color } => {
            println!("LIST {edge} {color}");
            Err((EXIT_FAILURE, "color outside its list".into()))
        }
        Verification::Uncolored { edge } => {
            println!("UNCOLORED {edge}");
            Err((EXIT_FAILURE, "missing color".into()))
        }
    }
}

fn cmd_chis(graph_path: &Path, limit: u64) -> CmdResult {
    let g = load_graph(graph_path)?;
    let cfg = oracle::SearchConfig {
        node_limit: limit,
        ..oracle::SearchConfig::default()
    };
    let chi = oracle::exact_strong_chromatic_index(&g, cfg)
        .map_err(|e| (EXIT_FAILURE, e.to_string()))?;
    println!("{chi}");
    Ok(())
}

fn cmd_coeff(paper: bool, factors: Option<&Path>, monomial: Option<&str>) -> CmdResult {
    if paper {
        let c = paper_certificate().map_err(|e| (EXIT_FAILURE, e.to_string()))?;
        println!("{c}");
        return Ok(());
    }
    let (factors_path, monomial_spec) = match (factors, monomial) {
        (Some(f), Some(m)) => (f, m),
        _ => {
            return Err((
                EXIT_PARSE,
                "need --paper, or both --factors and --monomial".into(),
            ))
        }
    };
    let text = read_file(factors_path)?;
    let mut pairs = Vec::new();
    let mut max_var = 0usize;
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| (EXIT_PARSE, format!("factors line {}: {e}", ln + 1)))?;
        if nums.len() != 2 || nums[0] == 0 || nums[1] == 0 {
            return Err((
                EXIT_PARSE,
                format!("factors line {}: expected two 1-based indices", ln + 1),
            ));
        }
        max_var = max_var.max(nums[0]).max(nums[1]);
        pairs.push((nums[0] - 1, nums[1] - 1));
    }
    let exponents = parse_monomial(monomial_spec, &mut max_var)
        .map_err(|e| (EXIT_PARSE, e))?;
    let mut caps = vec![0u16; max_var];
    for (v, k) in exponents {
        caps[v] = k;
    }
    let p = expand_product(max_var, &pairs, &caps).map_err(|e| (EXIT_FAILURE, e.to_string()))?;
    println!("{}", p.coefficient_of(&caps));
    Ok(())
}

/// Parses "x1^3 x2 x5^2" into (0-based variable, exponent) pairs, growing
/// `max_var` as needed.
fn parse_monomial(spec: &str, max_var: &mut usize) -> Result<Vec<(usize, u16)>, String> {
    let mut out = Vec::new();
    for term in spec.split_whitespace() {
        let body = term
            .strip_prefix('x')
            .ok_or_else(|| format!("monomial term `{term}` must start with x"))?;
        let (var, exp) = match body.split_once('^') {
            Some((v, e)) => (v, e.parse::<u16>().map_err(|err| format!("`{term}`: {err}"))?),
            None => (body, 1),
        };
        let var: usize = var.parse().map_err(|err| format!("`{term}`: {err}"))?;
        if var == 0 {
            return Err(format!("`{term}`: variables are 1-based"));
        }
        *max_var = (*max_var).max(var);
        out.push((var - 1, exp));
    }
    Ok(out)
}

fn cmd_gen(
    n: usize,
    model: &str,
    girth: Option<usize>,
    seed: u64,
    lists_spec: Option<&str>,
    out: Option<&Path>,
    lists_out: Option<PathBuf>,
) -> CmdResult {
    let seed = effective_seed(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = match model {
        "regular4" => match girth {
            None => gen::random_regular4(n, &mut rng),
            Some(t) => gen::regular4_girth(n, t, &mut rng),
        },
        "random-maxdeg4" => gen::random_maxdeg4(n, &mut rng),
        "cage" => match n {
            19 => Ok(gen::cage_4_5()),
            26 => Ok(gen::cage_4_6()),
            other => Err(gen::GenError::BadParameters(format!(
                "no built-in 4-regular cage with {other} vertices (19 or 26)"
            ))),
        },
        other => match other.strip_prefix("fixture:") {
            Some(name) => gen::fixture(name),
            None => Err(gen::GenError::BadParameters(format!(
                "unknown model `{other}`"
            ))),
        },
    }
    .map_err(|e| (EXIT_PRECONDITION, e.to_string()))?;

    let graph_text = GraphFile::from_graph(&g).serialize();
    match out {
        Some(p) => std::fs::write(p, &graph_text)
            .map_err(|e| (EXIT_FAILURE, format!("{}: {e}", p.display())))?,
        None => print!("{graph_text}"),
    }

    if let Some(spec) = lists_spec {
        let lists = parse_lists_spec(spec, g.edge_count(), &mut rng)
            .map_err(|e| (EXIT_PRECONDITION, e))?;
        let text = serialize_lists(&lists);
        let target = match (lists_out, out) {
            (Some(p), _) => Some(p),
            (None, Some(p)) => {
                let mut p = p.as_os_str().to_owned();
                p.push(".lists");
                Some(PathBuf::from(p))
            }
            (None, None) => None,
        };
        match target {
            Some(p) => std::fs::write(&p, text)
                .map_err(|e| (EXIT_FAILURE, format!("{}: {e}", p.display())))?,
            None => print!("{text}"),
        }
    }
    Ok(())
}

fn parse_lists_spec(
    spec: &str,
    edge_count: usize,
    rng: &mut ChaCha8Rng,
) -> Result<ListAssignment, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["uniform", k] => {
            let k: u32 = k.parse().map_err(|e| format!("bad list size: {e}"))?;
            Ok(ListAssignment::uniform(edge_count, k))
        }
        ["random", k, palette] => {
            let k: u32 = k.parse().map_err(|e| format!("bad list size: {e}"))?;
            let palette: u32 = palette.parse().map_err(|e| format!("bad palette: {e}"))?;
            gen::random_lists(edge_count, k, palette, rng).map_err(|e| e.to_string())
        }
        _ => Err(format!(
            "list spec `{spec}` must be uniform:<k> or random:<k>:<palette>"
        )),
    }
}

#[derive(Serialize)]
struct BenchEntry {
    name: String,
    edges: usize,
    handler: String,
    fallback_depth: u8,
    runtime_ms: u128,
    success: bool,
    error: Option<String>,
}

#[derive(Serialize)]
struct BenchReport {
    instances: Vec<BenchEntry>,
    total: usize,
    succeeded: usize,
    parse_failures: usize,
    success_rate: f64,
}

fn cmd_bench(corpus_dir: &Path, seed: u64, out: Option<&Path>) -> CmdResult {
    let _ = effective_seed(seed);
    let mut graph_paths: Vec<PathBuf> = std::fs::read_dir(corpus_dir)
        .map_err(|e| (EXIT_PARSE, format!("{}: {e}", corpus_dir.display())))?
        .filter_map(|entry| entry.ok().map(|d| d.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "graph"))
        .collect();
    graph_paths.sort();

    let mut entries = Vec::new();
    let mut parse_failures = 0usize;
    for path in &graph_paths {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let start = std::time::Instant::now();
        let result = bench_one(path);
        let runtime_ms = start.elapsed().as_millis();
        match result {
            Ok((edges, handler, fallback_depth)) => entries.push(BenchEntry {
                name,
                edges,
                handler,
                fallback_depth,
                runtime_ms,
                success: true,
                error: None,
            }),
            Err((is_parse, msg)) => {
                if is_parse {
                    parse_failures += 1;
                }
                entries.push(BenchEntry {
                    name,
                    edges: 0,
                    handler: String::new(),
                    fallback_depth: 0,
                    runtime_ms,
                    success: false,
                    error: Some(msg),
                });
            }
        }
    }

    let total = entries.len();
    let succeeded = entries.iter().filter(|e| e.success).count();
    let report = BenchReport {
        total,
        succeeded,
        parse_failures,
        success_rate: if total == 0 {
            1.0
        } else {
            succeeded as f64 / total as f64
        },
        instances: entries,
    };

    for e in &report.instances {
        println!(
            "{:<30} {:>5} edges  {:<14} depth {}  {:>6} ms  {}",
            e.name,
            e.edges,
            if e.handler.is_empty() { "-" } else { &e.handler },
            e.fallback_depth,
            e.runtime_ms,
            if e.success { "ok" } else { "FAILED" }
        );
    }
    println!(
        "total {} succeeded {} ({:.1}%)",
        report.total,
        report.succeeded,
        report.success_rate * 100.0
    );

    if let Some(p) = out {
        let json = serde_json::to_string_pretty(&report)
            .map_err(|e| (EXIT_FAILURE, e.to_string()))?;
        std::fs::write(p, json).map_err(|e| (EXIT_FAILURE, format!("{}: {e}", p.display())))?;
    }
    if parse_failures > 0 {
        return Err((EXIT_PARSE, format!("{parse_failures} instances failed to parse")));
    }
    if succeeded < total {
        return Err((EXIT_FAILURE, "some instances failed to color".into()));
    }
    Ok(())
}

/// Colors one corpus instance: `<name>.graph` plus optional `<name>.lists`
/// (uniform 22-lists otherwise). Returns (edges, handler, fallback_depth).
fn bench_one(graph_path: &Path) -> Result<(usize, String, u8), (bool, String)> {
    let text = std::fs::read_to_string(graph_path)
        .map_err(|e| (true, format!("{}: {e}", graph_path.display())))?;
    let g = GraphFile::parse(&text)
        .and_then(|gf| gf.to_graph())
        .map_err(|e| (true, e.to_string()))?;
    let lists_path = graph_path.with_extension("lists");
    let lists = if lists_path.exists() {
        let ltext = std::fs::read_to_string(&lists_path)
            .map_err(|e| (true, format!("{}: {e}", lists_path.display())))?;
        parse_lists(&ltext, g.edge_count()).map_err(|e| (true, e.to_string()))?
    } else {
        ListAssignment::uniform(g.edge_count(), 22)
    };
    let outcome = engine::strong_list_color(&g, &lists).map_err(|e| (false, e.to_string()))?;
    debug_assert!(verify_strong_complete(&g, &lists, &outcome.colors).is_ok());
    Ok((
        g.edge_count(),
        outcome.handler_summary(),
        outcome.fallback_depth,
    ))
}
