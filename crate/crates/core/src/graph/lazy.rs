//! Lazily presented countable graphs and their finite truncations.

use std::collections::{BTreeSet, HashMap};

use super::{FiniteGraph, Vertex};
use crate::error::{Error, Result};

/// Default per-vertex enumeration budget.
pub const DEFAULT_BUDGET: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeKind {
    Finite(usize),
    Infinite,
}

/// A countable graph presented by enumerators.
///
/// Vertex ids are naturals produced by [`LazyGraph::vertices`] in increasing
/// order. [`LazyGraph::neighbors`] must be deterministic: every call replays
/// the same sequence, and that sequence is the fixed enumeration of the
/// neighborhood used by the filter engine. A vertex reporting
/// `DegreeKind::Finite(d)` yields exactly `d` neighbors.
pub trait LazyGraph: Send + Sync {
    fn vertices(&self) -> Box<dyn Iterator<Item = Vertex> + '_>;
    fn contains(&self, v: Vertex) -> bool;
    fn neighbors(&self, v: Vertex) -> Box<dyn Iterator<Item = Vertex> + '_>;
    fn degree_kind(&self, v: Vertex) -> DegreeKind;
    fn adjacent(&self, u: Vertex, v: Vertex) -> bool;
}

/// Budgeted scan over a neighbor enumeration, yielding `(position, vertex)`.
///
/// Yields `Err(BudgetExhausted)` if the enumeration has more than `budget`
/// items and `Err(MalformedLazy)` if a finite-degree vertex yields a different
/// number of neighbors than it declares. Either error ends the scan.
pub fn scan_neighbors<G: LazyGraph + ?Sized>(g: &G, v: Vertex, budget: usize) -> NeighborScan<'_> {
    let declared = match g.degree_kind(v) {
        DegreeKind::Finite(d) => Some(d),
        DegreeKind::Infinite => None,
    };
    NeighborScan {
        inner: g.neighbors(v),
        vertex: v,
        budget,
        taken: 0,
        declared,
        done: false,
    }
}

pub struct NeighborScan<'g> {
    inner: Box<dyn Iterator<Item = Vertex> + 'g>,
    vertex: Vertex,
    budget: usize,
    taken: usize,
    declared: Option<usize>,
    done: bool,
}

impl Iterator for NeighborScan<'_> {
    type Item = Result<(usize, Vertex)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let next = self.inner.next();
        let Some(w) = next else {
            self.done = true;
            return match self.declared {
                Some(d) if d != self.taken => Some(Err(Error::MalformedLazy {
                    vertex: self.vertex,
                    message: format!("declared degree {d} but enumerated {}", self.taken),
                })),
                _ => None,
            };
        };
        if self.declared == Some(self.taken) {
            self.done = true;
            return Some(Err(Error::MalformedLazy {
                vertex: self.vertex,
                message: format!("enumerated more than the declared degree {}", self.taken),
            }));
        }
        if self.taken == self.budget {
            self.done = true;
            return Some(Err(Error::BudgetExhausted {
                vertex: self.vertex,
                budget: self.budget,
            }));
        }
        self.taken += 1;
        Some(Ok((self.taken - 1, w)))
    }
}

/// The one-way infinite path `0 - 1 - 2 - ...`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Ray;

impl LazyGraph for Ray {
    fn vertices(&self) -> Box<dyn Iterator<Item = Vertex> + '_> {
        Box::new(0..)
    }

    fn contains(&self, _v: Vertex) -> bool {
        true
    }

    fn neighbors(&self, v: Vertex) -> Box<dyn Iterator<Item = Vertex> + '_> {
        if v == 0 {
            Box::new(std::iter::once(1))
        } else {
            Box::new([v - 1, v + 1].into_iter())
        }
    }

    fn degree_kind(&self, v: Vertex) -> DegreeKind {
        DegreeKind::Finite(if v == 0 { 1 } else { 2 })
    }

    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u.abs_diff(v) == 1
    }
}

/// The square lattice on `Z x Z`.
///
/// Coordinates are mapped to naturals by zigzag-encoding each axis and then
/// applying the Cantor pairing, so the origin is vertex 0. Neighbors are
/// enumerated as `(x+1, y), (x-1, y), (x, y+1), (x, y-1)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Grid;

impl Grid {
    pub fn id(x: i64, y: i64) -> Vertex {
        let a = zigzag(x);
        let b = zigzag(y);
        ((a + b) * (a + b + 1) / 2 + b) as Vertex
    }

    pub fn coords(v: Vertex) -> (i64, i64) {
        let z = v as u64;
        // largest w with w(w+1)/2 <= z
        let mut w = (((8.0 * z as f64 + 1.0).sqrt() - 1.0) / 2.0) as u64;
        while w * (w + 1) / 2 > z {
            w -= 1;
        }
        while (w + 1) * (w + 2) / 2 <= z {
            w += 1;
        }
        let b = z - w * (w + 1) / 2;
        let a = w - b;
        (unzigzag(a), unzigzag(b))
    }
}

fn zigzag(x: i64) -> u64 {
    if x >= 0 {
        2 * x as u64
    } else {
        (-2 * x - 1) as u64
    }
}

fn unzigzag(z: u64) -> i64 {
    if z.is_multiple_of(2) {
        (z / 2) as i64
    } else {
        -(z.div_ceil(2) as i64)
    }
}

impl LazyGraph for Grid {
    fn vertices(&self) -> Box<dyn Iterator<Item = Vertex> + '_> {
        Box::new(0..)
    }

    fn contains(&self, _v: Vertex) -> bool {
        true
    }

    fn neighbors(&self, v: Vertex) -> Box<dyn Iterator<Item = Vertex> + '_> {
        let (x, y) = Grid::coords(v);
        Box::new(
            [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)]
                .into_iter()
                .map(|(x, y)| Grid::id(x, y)),
        )
    }

    fn degree_kind(&self, _v: Vertex) -> DegreeKind {
        DegreeKind::Finite(4)
    }

    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = (Grid::coords(u), Grid::coords(v));
        a.0.abs_diff(b.0) + a.1.abs_diff(b.1) == 1
    }
}

/// The complete bipartite graph with two countably infinite sides.
///
/// Side `A` holds the even ids (`a_i = 2i`), side `B` the odd ids
/// (`b_i = 2i + 1`). Each vertex enumerates the other side in increasing
/// order, so `a_0` sees `b_0, b_1, b_2, ...`.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompleteBipartiteInfinite;

impl CompleteBipartiteInfinite {
    pub fn a(i: usize) -> Vertex {
        2 * i
    }

    pub fn b(i: usize) -> Vertex {
        2 * i + 1
    }
}

impl LazyGraph for CompleteBipartiteInfinite {
    fn vertices(&self) -> Box<dyn Iterator<Item = Vertex> + '_> {
        Box::new(0..)
    }

    fn contains(&self, _v: Vertex) -> bool {
        true
    }

    fn neighbors(&self, v: Vertex) -> Box<dyn Iterator<Item = Vertex> + '_> {
        let start = 1 - v % 2;
        Box::new((start..).step_by(2))
    }

    fn degree_kind(&self, _v: Vertex) -> DegreeKind {
        DegreeKind::Infinite
    }

    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u % 2 != v % 2
    }
}

/// Seeded random countable graph in which every vertex has infinite degree.
///
/// `u ~ v` iff `|u - v|` is a power of two (a deterministic backbone that
/// makes every degree infinite) or a seeded hash of `{u, v}` falls below `p`.
#[derive(Clone, Copy, Debug)]
pub struct LazyRandom {
    p: f64,
    seed: u64,
}

impl LazyRandom {
    pub fn new(p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::BadParameter(format!(
                "edge probability {p} not in [0, 1]"
            )));
        }
        Ok(LazyRandom { p, seed })
    }

    fn random_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (lo, hi) = (u.min(v) as u64, u.max(v) as u64);
        let h = splitmix64(splitmix64(self.seed ^ lo.wrapping_mul(0x9E37_79B9_7F4A_7C15)) ^ hi);
        // 53 uniform bits
        ((h >> 11) as f64) / ((1u64 << 53) as f64) < self.p
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl LazyGraph for LazyRandom {
    fn vertices(&self) -> Box<dyn Iterator<Item = Vertex> + '_> {
        Box::new(0..)
    }

    fn contains(&self, _v: Vertex) -> bool {
        true
    }

    fn neighbors(&self, v: Vertex) -> Box<dyn Iterator<Item = Vertex> + '_> {
        Box::new((0..).filter(move |&w| self.adjacent(v, w)))
    }

    fn degree_kind(&self, _v: Vertex) -> DegreeKind {
        DegreeKind::Infinite
    }

    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u != v && (u.abs_diff(v).is_power_of_two() || self.random_edge(u, v))
    }
}

/// A finite graph viewed through the lazy interface.
#[derive(Clone, Debug)]
pub struct FiniteAsLazy(pub FiniteGraph);

impl LazyGraph for FiniteAsLazy {
    fn vertices(&self) -> Box<dyn Iterator<Item = Vertex> + '_> {
        Box::new(self.0.vertices())
    }

    fn contains(&self, v: Vertex) -> bool {
        self.0.contains(v)
    }

    fn neighbors(&self, v: Vertex) -> Box<dyn Iterator<Item = Vertex> + '_> {
        Box::new(self.0.neighbors(v).iter().copied())
    }

    fn degree_kind(&self, v: Vertex) -> DegreeKind {
        DegreeKind::Finite(self.0.degree(v))
    }

    fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.0.has_edge(u, v)
    }
}

/// Finite ball cut out of a lazy graph around a root.
///
/// Local vertex `i` of [`Ball::graph`] is the lazy vertex `vertices[i]`;
/// vertices are listed in breadth-first discovery order, so the root is
/// local vertex 0.
#[derive(Clone, Debug)]
pub struct Ball {
    pub root: Vertex,
    pub radius: usize,
    pub vertices: Vec<Vertex>,
    pub distance: Vec<usize>,
    pub graph: FiniteGraph,
    /// Lazy ids of vertices at distance `radius` or whose neighbor enumerator
    /// was cut off by the budget.
    pub boundary: BTreeSet<Vertex>,
    index: HashMap<Vertex, usize>,
}

impl Ball {
    pub fn local(&self, v: Vertex) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn is_interior(&self, v: Vertex) -> bool {
        self.index.contains_key(&v) && !self.boundary.contains(&v)
    }

    /// Local indices of interior vertices, ascending.
    pub fn interior_locals(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&i| !self.boundary.contains(&self.vertices[i]))
            .collect()
    }
}

/// Breadth-first ball of the given radius around `root`.
///
/// Finite-degree vertices are enumerated completely (an enumeration longer
/// than `budget` is an error); infinite-degree vertices contribute their first
/// `budget` neighbors and are placed on the boundary.
pub fn truncate<G: LazyGraph + ?Sized>(
    g: &G,
    root: Vertex,
    radius: usize,
    budget: usize,
) -> Result<Ball> {
    if !g.contains(root) {
        return Err(Error::BadParameter(format!("root {root} is not a vertex")));
    }
    let mut order = vec![root];
    let mut distance = vec![0usize];
    let mut index = HashMap::from([(root, 0usize)]);
    let mut boundary = BTreeSet::new();
    let mut found: Vec<Vec<Vertex>> = Vec::new();

    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        let d = distance[i];
        let list: Vec<Vertex> = match g.degree_kind(v) {
            DegreeKind::Finite(_) => scan_neighbors(g, v, budget)
                .map(|r| r.map(|(_, w)| w))
                .collect::<Result<_>>()?,
            DegreeKind::Infinite => {
                boundary.insert(v);
                g.neighbors(v).take(budget).collect()
            }
        };
        if d == radius {
            boundary.insert(v);
        } else {
            for &w in &list {
                if let std::collections::hash_map::Entry::Vacant(e) = index.entry(w) {
                    e.insert(order.len());
                    order.push(w);
                    distance.push(d + 1);
                }
            }
        }
        found.push(list);
        i += 1;
    }

    let mut adjacency: Vec<Vec<Vertex>> = vec![Vec::new(); order.len()];
    for (i, list) in found.iter().enumerate() {
        for w in list {
            if let Some(&j) = index.get(w) {
                if i == j {
                    return Err(Error::MalformedLazy {
                        vertex: order[i],
                        message: "self-loop".into(),
                    });
                }
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
    }

    Ok(Ball {
        root,
        radius,
        vertices: order,
        distance,
        graph: FiniteGraph::from_sorted_adjacency(adjacency),
        boundary,
        index,
    })
}
