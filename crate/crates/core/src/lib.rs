//! Unfriendly partitions of graphs.
//!
//! A two-coloring of the vertices is *unfriendly* when every vertex has at
//! least as many neighbors of the opposite color as of its own. This crate
//! provides:
//!
//! * [`graph`]: finite graphs, lazily presented countable graphs, generators,
//!   truncation to finite balls and connected components;
//! * [`coloring`]: partial colorings, neighbor tallies and the two
//!   unfriendliness predicates (total, and extension-stable partial);
//! * [`closure`]: the closure operator on partial colorings;
//! * [`solve`]: exact and local-search solvers for finite graphs and the
//!   compactness-style limit extractor for locally finite lazy graphs;
//! * [`layered`]: degree classes, the maximal bipartite pair and the layered
//!   coloring heuristic;
//! * [`filter`]: chains of finite partial colorings meeting a fair schedule of
//!   dense requirements on graphs whose degrees are all infinite;
//! * [`cli`]: the `unfriendly` command-line tool.

pub mod cli;
pub mod closure;
pub mod coloring;
pub mod error;
pub mod filter;
pub mod graph;
pub mod layered;
pub mod solve;

pub use closure::{close, is_closed, ClosureTrace};
pub use coloring::{
    cross_edge_count, is_safe_unfriendly_at, is_unfriendly_total, tally, Color, NeighborTally,
    PartialColoring, TotalVerdict,
};
pub use error::{Error, Result};
pub use graph::{FiniteGraph, LazyGraph, Vertex};
pub use solve::{solve_exact, solve_local, FlipPolicy, Method, SolveReport};
