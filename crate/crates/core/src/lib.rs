//! Exact search for the top-K maximal k-biplexes with the most edges in a
//! bipartite graph.
//!
//! A k-biplex is an induced bipartite subgraph in which every vertex misses
//! at most `k` vertices of the other side. Two branch-and-bound kernels
//! ([`search::basic_bb`], [`search::fast_bb`]) enumerate the search space;
//! the [`frameworks`] module shrinks it with progressive side-size bounds
//! (PB), a per-vertex decomposition (IE), or both (PBIE). [`oracle`] is an
//! exhaustive reference for small graphs.

pub mod biplex;
pub mod error;
pub mod frameworks;
pub mod graph;
pub mod oracle;
pub mod search;

pub use biplex::{FoundBiplex, ResultPool, SearchParams};
pub use error::{Error, Result};
pub use frameworks::{solve, Framework, SolveOptions, Solution};
pub use graph::{BipartiteGraph, Side, VertexRef};
pub use search::{Kernel, Limits, SearchStats};
