//! `maxbp`: top-K maximum k-biplex search from the command line.
//!
//! Exit codes: 0 success, 1 other failure, 2 unreadable input or bad
//! arguments, 3 time limit hit (the partial report is still written).

mod bench;
mod report;

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use maxbp::graph::{edges_for_density, generate_er, load_edge_list, EdgeListFormat};
use maxbp::oracle::enumerate_all_mbps;
use maxbp::search::gamma_k;
use maxbp::{solve, BipartiteGraph, Framework, Kernel, SearchParams, SolveOptions};

pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_TIMEOUT: u8 = 3;

#[derive(Parser)]
#[command(name = "maxbp", version, about = "Top-K maximum k-biplex search on bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search an edge-list file for its top-K maximum k-biplexes.
    Search(SearchArgs),
    /// Write a random bipartite edge list.
    Generate(GenerateArgs),
    /// Run a key=value grid of searches on generated graphs, one JSON line per run.
    Bench(BenchArgs),
    /// Print γ_k, the base of the FastBB running-time bound.
    Gamma(GammaArgs),
    /// Exhaustively enumerate the maximal k-biplexes of a small graph.
    Oracle(OracleArgs),
}

#[derive(Args, Clone)]
struct ProblemArgs {
    /// Edge list: one `<left> <right>` pair per line, `%` or `#` comments.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    topk: usize,
    /// Defaults to 2k+1.
    #[arg(long)]
    theta_l: Option<usize>,
    /// Defaults to 2k+1.
    #[arg(long)]
    theta_r: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl ProblemArgs {
    fn thetas(&self) -> (usize, usize) {
        let d = 2 * self.k + 1;
        (self.theta_l.unwrap_or(d), self.theta_r.unwrap_or(d))
    }
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    #[arg(long, default_value = "fast")]
    kernel: Kernel,
    #[arg(long, default_value = "pbie")]
    framework: Framework,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Wall-clock limit in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Include elapsed milliseconds in the statistics.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    left: usize,
    #[arg(long)]
    right: usize,
    /// Exact edge count.
    #[arg(long, conflicts_with = "density", required_unless_present = "density")]
    edges: Option<usize>,
    /// 2|E| / (|L| + |R|).
    #[arg(long)]
    density: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Grid file of `key = value[,value...]` lines; see the README.
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GammaArgs {
    /// Values of k (each at least 1).
    #[arg(default_values_t = [1u32, 2, 3], value_parser = clap::value_parser!(u32).range(1..))]
    k: Vec<u32>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    problem: ProblemArgs,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<maxbp::Error>() {
            Some(maxbp::Error::Parse { .. } | maxbp::Error::InvalidArgument(_)) => EXIT_PARSE,
            _ => EXIT_FAILURE,
        };
        Failure { code, error }
    }
}

impl From<maxbp::Error> for Failure {
    fn from(e: maxbp::Error) -> Self {
        anyhow::Error::new(e).into()
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        anyhow::Error::new(e).into()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Search(a) => cmd_search(&a),
        Command::Generate(a) => cmd_generate(&a).map(|()| 0),
        Command::Bench(a) => bench::cmd_bench(&a.config, a.output.as_deref()).map(|()| 0),
        Command::Gamma(a) => cmd_gamma(&a).map(|()| 0),
        Command::Oracle(a) => cmd_oracle(&a).map(|()| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("maxbp: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn load_graph(path: &Path) -> Result<BipartiteGraph, Failure> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    load_edge_list(BufReader::new(file), EdgeListFormat::Whitespace2Col).map_err(|e| {
        let code = if matches!(e, maxbp::Error::Io(_)) { EXIT_FAILURE } else { EXIT_PARSE };
        Failure { code, error: anyhow::Error::new(e).context(format!("reading {}", path.display())) }
    })
}

/// Stdout or a created file.
fn sink(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit_json(path: Option<&Path>, value: &serde_json::Value) -> anyhow::Result<()> {
    let mut out = sink(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn cmd_search(a: &SearchArgs) -> Result<u8, Failure> {
    let pa = &a.problem;
    let (theta_l, theta_r) = pa.thetas();
    let params = SearchParams::new(pa.k, pa.topk, theta_l, theta_r)?;
    let time_limit = match a.time_limit {
        Some(s) if !(s.is_finite() && s >= 0.0) => {
            return Err(maxbp::Error::InvalidArgument(format!("time limit {s} is not a duration")).into())
        }
        s => s.map(Duration::from_secs_f64),
    };
    let g = load_graph(&pa.input)?;
    let opts = SolveOptions { kernel: a.kernel, framework: a.framework, workers: a.workers, time_limit };
    let sol = solve(&g, &params, &opts)?;
    let value = report::search_report(&g, &params, &opts, &sol, a.timing)?;
    emit_json(pa.output.as_deref(), &value)?;
    Ok(if sol.timed_out { EXIT_TIMEOUT } else { 0 })
}

fn cmd_oracle(a: &OracleArgs) -> Result<(), Failure> {
    let pa = &a.problem;
    let (theta_l, theta_r) = pa.thetas();
    let params = SearchParams::new(pa.k, pa.topk, theta_l, theta_r)?;
    let g = load_graph(&pa.input)?;
    let res = enumerate_all_mbps(&g, &params)?;
    emit_json(pa.output.as_deref(), &report::oracle_report(&g, &params, &res)?)?;
    Ok(())
}

fn cmd_generate(a: &GenerateArgs) -> Result<(), Failure> {
    let edges = match (a.edges, a.density) {
        (Some(m), _) => m,
        (None, Some(d)) if d.is_finite() && d >= 0.0 => edges_for_density(a.left, a.right, d),
        (None, d) => return Err(maxbp::Error::InvalidArgument(format!("invalid density {d:?}")).into()),
    };
    let g = generate_er(a.left, a.right, edges, a.seed)?;
    let mut out = sink(a.output.as_deref())?;
    writeln!(out, "% maxbp generate left={} right={} edges={} seed={}", a.left, a.right, edges, a.seed)?;
    for (v, u) in g.edges() {
        writeln!(out, "{v} {u}")?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_gamma(a: &GammaArgs) -> Result<(), Failure> {
    let rows: Vec<serde_json::Value> =
        a.k.iter().map(|&k| serde_json::json!({ "k": k, "gamma": gamma_k(k, 1e-9) })).collect();
    emit_json(None, &serde_json::Value::Array(rows))?;
    Ok(())
}

/// Lines of a text file with `#` comments and blank lines removed.
pub fn config_lines(path: &Path) -> anyhow::Result<Vec<(usize, String)>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let t = line.split('#').next().unwrap_or("").trim();
        if !t.is_empty() {
            out.push((i + 1, t.to_owned()));
        }
    }
    Ok(out)
}
