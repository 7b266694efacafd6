//! Unfriendly partitions of finite graphs.
//!
//! A coloring maximizing the number of cross edges is unfriendly: if some
//! vertex had more same-colored than opposite-colored neighbors, flipping it
//! would cut strictly more edges. [`solve_exact`] finds such a maximizer by
//! enumeration; [`solve_local`] runs the flip argument as an algorithm.

pub mod limit;

pub use limit::{limit_partition, LevelTower, LimitConfig, TowerLevel};

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{cross_edges_dense, violators_dense, Color, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::FiniteGraph;

/// Default largest vertex count for [`solve_exact`].
pub const DEFAULT_EXHAUSTIVE_BOUND: usize = 20;

/// Hard ceiling for the exhaustive bound (colorings are `u64` bitmasks).
pub const MAX_EXHAUSTIVE_BOUND: usize = 40;

/// Order in which local search picks among flippable vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FlipPolicy {
    #[default]
    LowestIndexFirst,
    SeededRandom(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exact,
    Local(FlipPolicy),
    Layered,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Local(_) => "local",
            Method::Layered => "layered",
        })
    }
}

/// Outcome of a solver run.
///
/// `work` counts enumerated colorings for the exact solver, flips for local
/// search and iterations for the layered heuristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub coloring: PartialColoring,
    pub cross_edges: usize,
    pub method: Method,
    pub work: u64,
    pub verified: bool,
}

impl SolveReport {
    /// `method cross_edges work verified`
    pub fn stats_line(&self) -> String {
        format!(
            "{} {} {} {}",
            self.method, self.cross_edges, self.work, self.verified
        )
    }

    pub(crate) fn from_dense(g: &FiniteGraph, colors: &[Color], method: Method, work: u64) -> Self {
        SolveReport {
            coloring: PartialColoring::from_total(colors),
            cross_edges: cross_edges_dense(g, colors),
            method,
            work,
            verified: violators_dense(g, colors).is_empty(),
        }
    }
}

/// Maximum-cut coloring by enumeration, with the default bound.
pub fn solve_exact(g: &FiniteGraph) -> Result<SolveReport> {
    solve_exact_bounded(g, DEFAULT_EXHAUSTIVE_BOUND)
}

/// Maximum-cut coloring by enumerating the `2^(n-1)` colorings with vertex 0
/// colored 0. Ties go to the lexicographically least color vector.
pub fn solve_exact_bounded(g: &FiniteGraph, bound: usize) -> Result<SolveReport> {
    let n = g.vertex_count();
    let bound = bound.min(MAX_EXHAUSTIVE_BOUND);
    if n > bound {
        return Err(Error::ExhaustiveBound { n, bound });
    }
    if n == 0 {
        return Ok(SolveReport::from_dense(g, &[], Method::Exact, 0));
    }
    let adjacency: Vec<u64> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let everyone = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };

    // `mask` bit n-1-i holds the color of vertex i >= 1, so increasing masks
    // visit color vectors in lexicographic order.
    let mut best_cut = 0;
    let mut best_mask = 0u64;
    let count = 1u64 << (n - 1);
    for mask in 0..count {
        let mut ones = 0u64;
        for i in 1..n {
            ones |= (mask >> (n - 1 - i) & 1) << i;
        }
        let twice_cut: u32 = adjacency
            .iter()
            .enumerate()
            .map(|(v, &adj)| {
                let other = if ones >> v & 1 == 1 {
                    everyone & !ones
                } else {
                    ones
                };
                (adj & other).count_ones()
            })
            .sum();
        let cut = (twice_cut / 2) as usize;
        if cut > best_cut {
            best_cut = cut;
            best_mask = mask;
        }
    }
    let colors: Vec<Color> = (0..n)
        .map(|i| Color::from_bit(i > 0 && best_mask >> (n - 1 - i) & 1 == 1))
        .collect();
    Ok(SolveReport::from_dense(g, &colors, Method::Exact, count))
}

/// Local search from a total coloring: while some vertex has more
/// same-colored than opposite-colored neighbors, flip one. Each flip raises
/// the cross-edge count, so at most `|E|` flips happen.
pub fn solve_local(
    g: &FiniteGraph,
    start: &PartialColoring,
    policy: FlipPolicy,
) -> Result<SolveReport> {
    let n = g.vertex_count();
    let mut colors = start.to_total(n)?;
    if start.len() != n {
        let extra = start.domain().find(|&v| v >= n).expect("domain exceeds n");
        return Err(Error::VertexOutOfRange { vertex: extra, n });
    }
    let mut same: Vec<usize> = g
        .vertices()
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| colors[w] == colors[v])
                .count()
        })
        .collect();
    let mut rng = match policy {
        FlipPolicy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        FlipPolicy::LowestIndexFirst => None,
    };
    let flippable = |same: &[usize], v: usize| 2 * same[v] > g.degree(v);

    let mut flips = 0u64;
    loop {
        let v = match rng.as_mut() {
            None => match g.vertices().find(|&v| flippable(&same, v)) {
                Some(v) => v,
                None => break,
            },
            Some(rng) => {
                let candidates: Vec<usize> =
                    g.vertices().filter(|&v| flippable(&same, v)).collect();
                if candidates.is_empty() {
                    break;
                }
                candidates[rng.gen_range(0..candidates.len())]
            }
        };
        let old = colors[v];
        for &w in g.neighbors(v) {
            if colors[w] == old {
                same[w] -= 1;
            } else {
                same[w] += 1;
            }
        }
        same[v] = g.degree(v) - same[v];
        colors[v] = old.flip();
        flips += 1;
    }
    Ok(SolveReport::from_dense(
        g,
        &colors,
        Method::Local(policy),
        flips,
    ))
}
