//! Graph representations.
//!
//! [`FiniteGraph`] is an immutable simple undirected graph over dense vertex
//! indices `0..n`. [`LazyGraph`] presents a countably infinite graph through
//! replayable neighbor enumerators; [`truncate`] cuts a finite [`Ball`] out of
//! one.

mod components;
mod enumerate;
mod generate;
mod lazy;

pub use components::{components, Component};
pub use enumerate::{all_labeled_graphs, nonisomorphic_graphs};
pub use generate::{generate, random_gnp, Family, Generated};
pub use lazy::{
    scan_neighbors, truncate, Ball, CompleteBipartiteInfinite, DegreeKind, FiniteAsLazy, Grid,
    LazyGraph, LazyRandom, Ray, DEFAULT_BUDGET,
};

use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};

/// Vertex identifier. Finite graphs use dense indices; lazy graphs use naturals.
pub type Vertex = usize;

/// Immutable simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGraph {
    adjacency: Vec<Vec<Vertex>>,
    edges: usize,
}

impl FiniteGraph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        FiniteGraph {
            adjacency: vec![Vec::new(); n],
            edges: 0,
        }
    }

    /// Builds a graph from an edge list. Endpoints may come in either order;
    /// loops, duplicates and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut count = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            count += 1;
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        Ok(FiniteGraph {
            adjacency,
            edges: count,
        })
    }

    /// Builds a graph from adjacency lists that are already known to be
    /// symmetric, sorted and loop-free.
    pub(crate) fn from_sorted_adjacency(adjacency: Vec<Vec<Vertex>>) -> Self {
        let edges = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        let g = FiniteGraph { adjacency, edges };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adjacency.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v < self.adjacency.len()
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            })
        }
    }

    /// Sorted neighbor list of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|list| list.binary_search(&v).is_ok())
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Induced subgraph on `vertices` (in the given order). Vertex `i` of the
    /// result is `vertices[i]` of `self`.
    pub fn induced(&self, vertices: &[Vertex]) -> FiniteGraph {
        let mut local = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let adjacency = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<Vertex> = self.adjacency[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        FiniteGraph::from_sorted_adjacency(adjacency)
    }

    /// Checks symmetry, loop-freeness, sortedness and absence of duplicates.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.vertex_count();
        for (u, list) in self.adjacency.iter().enumerate() {
            for w in list.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
                }
                if w[0] > w[1] {
                    return Err(Error::BadParameter(format!(
                        "adjacency of {u} is not sorted"
                    )));
                }
            }
            for &v in list {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if v == u {
                    return Err(Error::SelfLoop(u));
                }
                if self.adjacency[v].binary_search(&u).is_err() {
                    return Err(Error::BadParameter(format!(
                        "edge {u} {v} is not symmetric"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Serializes to the edge-list text format: `n m`, then one `u v` line
    /// per edge with `u < v`, edges in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parses the edge-list text format. Blank lines are ignored; the edge
    /// count in the header must match the number of edge lines.
    pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields = parse_naturals(trimmed, lineno)?;
            if fields.len() != 2 {
                return Err(Error::parse(lineno, "expected two integers"));
            }
            let (a, b) = (fields[0], fields[1]);
            match header {
                None => header = Some((a, b)),
                Some((n, _)) => {
                    if a == b {
                        return Err(Error::SelfLoop(a));
                    }
                    if a.max(b) >= n {
                        return Err(Error::parse(
                            lineno,
                            format!("vertex {} out of range for n = {n}", a.max(b)),
                        ));
                    }
                    edges.push((a, b));
                }
            }
        }
        let (n, m) = header.ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
        if edges.len() != m {
            return Err(Error::parse(
                0,
                format!("header declares {m} edges but {} were listed", edges.len()),
            ));
        }
        FiniteGraph::from_edges(n, edges)
    }
}

pub(crate) fn parse_naturals(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::parse(lineno, format!("`{tok}` is not a natural number")))
        })
        .collect()
}
