//! Frameworks that split one search into several smaller kernel runs:
//! progressive side-size bounds (PB), a per-left-vertex decomposition (IE),
//! and PB with IE inside every iteration (PBIE).

mod ie;
mod pb;
mod pbie;

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::biplex::{Branch, FoundBiplex, ResultPool, SearchParams};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::search::{run_kernel, with_search_stack, Kernel, Limits, SearchStats, Target};

pub use ie::{ie_decompose, ie_run, IeDecomposer, Subproblem};
pub use pb::{pb_run, pb_schedule, PbSchedule, PbWindow};
pub use pbie::pbie_run;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Framework {
    None,
    Pb,
    Ie,
    #[default]
    Pbie,
}

impl Framework {
    pub const ALL: [Framework; 4] = [Framework::None, Framework::Pb, Framework::Ie, Framework::Pbie];
}

impl fmt::Display for Framework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Framework::None => "none",
            Framework::Pb => "pb",
            Framework::Ie => "ie",
            Framework::Pbie => "pbie",
        })
    }
}

impl FromStr for Framework {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Framework::None),
            "pb" => Ok(Framework::Pb),
            "ie" => Ok(Framework::Ie),
            "pbie" => Ok(Framework::Pbie),
            other => Err(Error::InvalidArgument(format!("unknown framework {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub kernel: Kernel,
    pub framework: Framework,
    /// Concurrent kernel runs for IE and PBIE. Other frameworks use one.
    pub workers: usize,
    pub time_limit: Option<Duration>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { kernel: Kernel::Fast, framework: Framework::Pbie, workers: 1, time_limit: None }
    }
}

#[derive(Clone, Debug)]
pub struct Solution {
    /// Results in canonical order.
    pub results: Vec<FoundBiplex>,
    pub stats: SearchStats,
    pub timed_out: bool,
    /// Offers of a vertex set the pool already held.
    pub duplicates: u64,
}

/// Execution settings shared by the framework runners.
#[derive(Clone, Copy, Debug)]
pub struct Exec<'a> {
    pub workers: usize,
    pub limits: &'a Limits,
}

impl<'a> Exec<'a> {
    pub fn serial(limits: &'a Limits) -> Self {
        Exec { workers: 1, limits }
    }
}

/// Finds the top-K maximal k-biplexes of `g` under `p`.
pub fn solve(g: &BipartiteGraph, p: &SearchParams, opts: &SolveOptions) -> Result<Solution> {
    p.validate()?;
    if opts.workers == 0 {
        return Err(Error::InvalidArgument("workers must be positive".into()));
    }
    let pool = ResultPool::new(p.topk);
    let limits = opts.time_limit.map_or_else(Limits::none, Limits::with_time_limit);
    let exec = Exec { workers: opts.workers, limits: &limits };
    let t0 = Instant::now();
    let mut stats = match opts.framework {
        Framework::None => plain_run(g, p, &pool, opts.kernel, exec),
        Framework::Pb => pb::pb_run_with(g, p, &pool, opts.kernel, exec),
        Framework::Ie => ie::ie_run_with(g, p, &pool, opts.kernel, exec),
        Framework::Pbie => pbie::pbie_run_with(g, p, &pool, opts.kernel, exec),
    };
    stats.elapsed = t0.elapsed();
    stats.timed_out |= limits.is_cancelled();
    Ok(Solution {
        results: pool.entries(),
        timed_out: stats.timed_out,
        duplicates: pool.duplicates(),
        stats,
    })
}

fn plain_run(
    g: &BipartiteGraph,
    p: &SearchParams,
    pool: &ResultPool,
    kernel: Kernel,
    exec: Exec<'_>,
) -> SearchStats {
    with_search_stack(|| {
        let mut b = Branch::root(g, p.k);
        run_kernel(kernel, &mut b, Target::identity(g), p, pool, exec.limits)
    })
}

/// Runs `job(i)` for every `i < n` on up to `workers` big-stack threads.
/// Each worker owns a state built by `init`; jobs are handed out in index
/// order.
pub(crate) fn dispatch<S, I, J>(n: usize, workers: usize, limits: &Limits, init: I, job: J) -> SearchStats
where
    I: Fn() -> S + Sync,
    J: Fn(&mut S, usize) -> SearchStats + Sync,
{
    let next = AtomicUsize::new(0);
    let worker = || {
        let mut state = init();
        let mut stats = SearchStats::default();
        loop {
            let i = next.fetch_add(1, Ordering::Relaxed);
            if i >= n || limits.is_cancelled() {
                break;
            }
            stats.absorb(&job(&mut state, i));
        }
        stats
    };
    let workers = workers.clamp(1, n.max(1));
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                std::thread::Builder::new()
                    .stack_size(crate::search::SEARCH_STACK_BYTES)
                    .spawn_scoped(s, worker)
                    .expect("spawn search worker")
            })
            .collect();
        let mut total = SearchStats::default();
        for h in handles {
            let st = h.join().unwrap_or_else(|e| std::panic::resume_unwind(e));
            total.absorb(&st);
        }
        total
    })
}
