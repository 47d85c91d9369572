//! `bench`: a grid of searches on generated graphs.
//!
//! The grid file holds `key = value[,value...]` lines. Integer keys also take
//! `a..b` ranges (end exclusive). Keys and defaults:
//!
//! | key        | default       |
//! |------------|---------------|
//! | left       | 200           |
//! | right      | same as left  |
//! | density    | 8             |
//! | seeds      | 0             |
//! | k          | 1             |
//! | topk       | 1             |
//! | theta      | 2k+1          |
//! | kernels    | fast          |
//! | frameworks | pbie          |
//! | workers    | 1             |
//! | time_limit | 60 (seconds)  |

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::time::Duration;

use anyhow::Context;
use maxbp::graph::{edges_for_density, generate_er};
use maxbp::{solve, Framework, Kernel, SearchParams, SolveOptions};
use serde_json::{json, Value};

use crate::{config_lines, sink, Failure};

const KEYS: [&str; 11] =
    ["left", "right", "density", "seeds", "k", "topk", "theta", "kernels", "frameworks", "workers", "time_limit"];

#[derive(Debug, PartialEq)]
pub struct Grid {
    /// (left, right) pairs.
    pub sizes: Vec<(usize, usize)>,
    pub densities: Vec<f64>,
    pub seeds: Vec<u64>,
    pub ks: Vec<usize>,
    pub topks: Vec<usize>,
    /// `None` runs at 2k+1.
    pub thetas: Option<Vec<usize>>,
    pub kernels: Vec<Kernel>,
    pub frameworks: Vec<Framework>,
    pub workers: usize,
    pub time_limit: Duration,
}

fn bad(line: usize, msg: impl std::fmt::Display) -> anyhow::Error {
    maxbp::Error::InvalidArgument(format!("grid line {line}: {msg}")).into()
}

fn parse_list<T: FromStr>(line: usize, key: &str, raw: &str) -> anyhow::Result<Vec<T>> {
    raw.split(',')
        .map(|t| t.trim().parse().map_err(|_| bad(line, format!("bad value {t:?} for {key}"))))
        .collect()
}

fn parse_ints<T>(line: usize, key: &str, raw: &str) -> anyhow::Result<Vec<T>>
where
    T: FromStr + TryFrom<u64>,
{
    let mut out = Vec::new();
    for part in raw.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once("..") {
            let [a, b]: [u64; 2] = parse_list::<u64>(line, key, &format!("{a},{b}"))?.try_into().expect("two bounds");
            for x in a..b {
                out.push(T::try_from(x).map_err(|_| bad(line, format!("{x} out of range for {key}")))?);
            }
        } else {
            out.extend(parse_list::<T>(line, key, part)?);
        }
    }
    if out.is_empty() {
        return Err(bad(line, format!("{key} is empty")));
    }
    Ok(out)
}

impl Grid {
    pub fn parse(lines: &[(usize, String)]) -> anyhow::Result<Grid> {
        let mut raw: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        for (n, text) in lines {
            let (key, value) = text.split_once('=').ok_or_else(|| bad(*n, "expected key = value"))?;
            let key = KEYS.iter().find(|k| **k == key.trim()).ok_or_else(|| bad(*n, format!("unknown key {:?}", key.trim())))?;
            if raw.insert(key, (*n, value.trim())).is_some() {
                return Err(bad(*n, format!("{key} given twice")));
            }
        }
        let get = |key: &str, default: &'static str| raw.get(key).copied().unwrap_or((0, default));
        let ints = |key: &str, default: &'static str| -> anyhow::Result<Vec<usize>> {
            let (n, v) = get(key, default);
            parse_ints(n, key, v)
        };
        let lefts = ints("left", "200")?;
        let sizes = match raw.get("right") {
            None => lefts.iter().map(|&l| (l, l)).collect(),
            Some(&(n, v)) => {
                let rights: Vec<usize> = parse_ints(n, "right", v)?;
                lefts.iter().flat_map(|&l| rights.iter().map(move |&r| (l, r))).collect()
            }
        };
        let (n, v) = get("density", "8");
        let densities: Vec<f64> = parse_list(n, "density", v)?;
        if let Some(d) = densities.iter().find(|d| !(d.is_finite() && **d >= 0.0)) {
            return Err(bad(n, format!("invalid density {d}")));
        }
        let (n, v) = get("seeds", "0");
        let seeds = parse_ints(n, "seeds", v)?;
        let thetas = raw.get("theta").map(|&(n, v)| parse_ints(n, "theta", v)).transpose()?;
        let (n, v) = get("kernels", "fast");
        let kernels = parse_list(n, "kernels", v)?;
        let (n, v) = get("frameworks", "pbie");
        let frameworks = parse_list(n, "frameworks", v)?;
        let (n, v) = get("workers", "1");
        let workers = v.parse().ok().filter(|&w| w > 0).ok_or_else(|| bad(n, "workers must be a positive integer"))?;
        let (n, v) = get("time_limit", "60");
        let time_limit = v
            .parse::<f64>()
            .ok()
            .filter(|s| s.is_finite() && *s > 0.0)
            .map(Duration::from_secs_f64)
            .ok_or_else(|| bad(n, "time_limit must be a positive number of seconds"))?;
        Ok(Grid {
            sizes,
            densities,
            seeds,
            ks: ints("k", "1")?,
            topks: ints("topk", "1")?,
            thetas,
            kernels,
            frameworks,
            workers,
            time_limit,
        })
    }
}

pub fn cmd_bench(config: &Path, output: Option<&Path>) -> Result<(), Failure> {
    let grid = Grid::parse(&config_lines(config)?).with_context(|| format!("reading {}", config.display()))?;
    let mut out = sink(output)?;
    for &(l, r) in &grid.sizes {
        for &density in &grid.densities {
            for &seed in &grid.seeds {
                let edges = edges_for_density(l, r, density);
                let g = generate_er(l, r, edges, seed)?;
                let instance = json!({ "left": l, "right": r, "density": density, "edges": edges, "seed": seed });
                for &k in &grid.ks {
                    let thetas = grid.thetas.clone().unwrap_or_else(|| vec![2 * k + 1]);
                    for &topk in &grid.topks {
                        for &theta in &thetas {
                            for &kernel in &grid.kernels {
                                for &framework in &grid.frameworks {
                                    let mut row = instance.clone();
                                    row["k"] = json!(k);
                                    row["topk"] = json!(topk);
                                    row["theta"] = json!(theta);
                                    row["kernel"] = json!(kernel);
                                    row["framework"] = json!(framework);
                                    run_one(&mut row, &g, k, topk, theta, kernel, framework, &grid);
                                    serde_json::to_writer(&mut out, &row).context("writing a bench row")?;
                                    writeln!(out)?;
                                    out.flush()?;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Fills `row` with the outcome of one search. Invalid parameters are
/// recorded as skipped so the sweep continues.
#[allow(clippy::too_many_arguments)]
fn run_one(
    row: &mut Value,
    g: &maxbp::BipartiteGraph,
    k: usize,
    topk: usize,
    theta: usize,
    kernel: Kernel,
    framework: Framework,
    grid: &Grid,
) {
    let opts = SolveOptions { kernel, framework, workers: grid.workers, time_limit: Some(grid.time_limit) };
    let outcome = SearchParams::new(k, topk, theta, theta).and_then(|p| solve(g, &p, &opts));
    match outcome {
        Err(e) => {
            row["status"] = json!("skipped");
            row["reason"] = json!(e.to_string());
        }
        Ok(sol) => {
            row["status"] = json!(if sol.timed_out { "timeout" } else { "ok" });
            row["top"] = sol.results.iter().map(|h| json!([h.vertex_count(), h.edges])).collect();
            if let Value::Object(stats) = serde_json::to_value(&sol.stats).expect("stats serialize") {
                for (key, v) in stats {
                    row[key] = v;
                }
            }
            row["duplicates"] = json!(sol.duplicates);
        }
    }
}
