//! Partial colorings and unfriendliness predicates.
//!
//! For a coloring `c` and a vertex `v`, [`tally`] splits the neighborhood of
//! `v` into neighbors colored like a reference color, neighbors colored the
//! other way, and uncolored neighbors. A total coloring is unfriendly when
//! `opposite >= same` everywhere. A partial coloring is *safely* unfriendly
//! at a colored vertex when `opposite >= same + uncolored`: no way of
//! coloring the remaining neighbors can then break the inequality.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::{parse_naturals, FiniteGraph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Zero,
    One,
}

impl Color {
    pub const BOTH: [Color; 2] = [Color::Zero, Color::One];

    pub fn flip(self) -> Color {
        match self {
            Color::Zero => Color::One,
            Color::One => Color::Zero,
        }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn from_bit(bit: bool) -> Color {
        if bit {
            Color::One
        } else {
            Color::Zero
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// A two-coloring of some subset `D` (the domain) of the vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PartialColoring {
    colors: BTreeMap<Vertex, Color>,
}

impl PartialColoring {
    pub fn new() -> Self {
        Self::default()
    }

    /// Total coloring of `0..colors.len()`.
    pub fn from_total(colors: &[Color]) -> Self {
        colors.iter().copied().enumerate().collect()
    }

    pub fn uniform(n: usize, color: Color) -> Self {
        (0..n).map(|v| (v, color)).collect()
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.colors.get(&v).copied()
    }

    /// Assigns `color` to `v`, returning the previous color.
    pub fn set(&mut self, v: Vertex, color: Color) -> Option<Color> {
        self.colors.insert(v, color)
    }

    pub fn remove(&mut self, v: Vertex) -> Option<Color> {
        self.colors.remove(&v)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.colors.contains_key(&v)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.colors.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Color)> + '_ {
        self.colors.iter().map(|(&v, &c)| (v, c))
    }

    /// True iff `self` agrees with `other` on all of `other`'s domain.
    pub fn extends(&self, other: &PartialColoring) -> bool {
        other.iter().all(|(v, c)| self.get(v) == Some(c))
    }

    pub fn restrict(&self, vertices: impl IntoIterator<Item = Vertex>) -> PartialColoring {
        vertices
            .into_iter()
            .filter_map(|v| self.get(v).map(|c| (v, c)))
            .collect()
    }

    /// Least vertex of `0..n` outside the domain.
    pub fn first_uncolored(&self, n: usize) -> Option<Vertex> {
        (0..n).find(|v| !self.contains(*v))
    }

    pub fn is_total(&self, n: usize) -> bool {
        self.len() == n && self.colors.keys().next_back().is_none_or(|&v| v < n)
    }

    /// Dense color vector for a total coloring of `0..n`.
    pub fn to_total(&self, n: usize) -> Result<Vec<Color>> {
        (0..n)
            .map(|v| self.get(v).ok_or(Error::NotTotal(v)))
            .collect()
    }

    /// Text form: one `v c` line per colored vertex, ascending.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, c) in self.iter() {
            let _ = writeln!(out, "{v} {c}");
        }
        out
    }

    pub fn parse_text<R: BufRead>(reader: R) -> Result<Self> {
        let mut coloring = PartialColoring::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields = parse_naturals(trimmed, lineno)?;
            let [v, c] = fields[..] else {
                return Err(Error::parse(lineno, "expected `vertex color`"));
            };
            let color = match c {
                0 => Color::Zero,
                1 => Color::One,
                _ => return Err(Error::parse(lineno, format!("color {c} is not 0 or 1"))),
            };
            if coloring.set(v, color).is_some() {
                return Err(Error::parse(lineno, format!("vertex {v} colored twice")));
            }
        }
        Ok(coloring)
    }

    fn check_within(&self, g: &FiniteGraph) -> Result<()> {
        match self.colors.keys().next_back() {
            Some(&v) if !g.contains(v) => Err(Error::VertexOutOfRange {
                vertex: v,
                n: g.vertex_count(),
            }),
            _ => Ok(()),
        }
    }

    fn check_total(&self, g: &FiniteGraph) -> Result<()> {
        self.check_within(g)?;
        match self.first_uncolored(g.vertex_count()) {
            Some(v) => Err(Error::NotTotal(v)),
            None => Ok(()),
        }
    }
}

impl FromIterator<(Vertex, Color)> for PartialColoring {
    fn from_iter<I: IntoIterator<Item = (Vertex, Color)>>(iter: I) -> Self {
        PartialColoring {
            colors: iter.into_iter().collect(),
        }
    }
}

impl Extend<(Vertex, Color)> for PartialColoring {
    fn extend<I: IntoIterator<Item = (Vertex, Color)>>(&mut self, iter: I) {
        self.colors.extend(iter)
    }
}

/// Neighbors of a vertex split by their status relative to a reference color.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NeighborTally {
    pub same: usize,
    pub opposite: usize,
    pub uncolored: usize,
}

impl NeighborTally {
    pub fn total(&self) -> usize {
        self.same + self.opposite + self.uncolored
    }

    /// `opposite >= same + uncolored`.
    pub fn is_safe(&self) -> bool {
        self.opposite >= self.same + self.uncolored
    }
}

/// Counts the neighbors of `v` by status relative to `color`. `v` itself
/// need not be colored.
pub fn tally(
    g: &FiniteGraph,
    c: &PartialColoring,
    v: Vertex,
    color: Color,
) -> Result<NeighborTally> {
    g.check_vertex(v)?;
    Ok(tally_unchecked(g, c, v, color))
}

pub(crate) fn tally_unchecked(
    g: &FiniteGraph,
    c: &PartialColoring,
    v: Vertex,
    color: Color,
) -> NeighborTally {
    let mut t = NeighborTally::default();
    for &w in g.neighbors(v) {
        match c.get(w) {
            None => t.uncolored += 1,
            Some(x) if x == color => t.same += 1,
            Some(_) => t.opposite += 1,
        }
    }
    t
}

/// Verdict of [`is_unfriendly_total`]: violators in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalVerdict {
    pub unfriendly: bool,
    pub violators: Vec<Vertex>,
}

/// Checks that a total coloring is an unfriendly partition.
pub fn is_unfriendly_total(g: &FiniteGraph, c: &PartialColoring) -> Result<TotalVerdict> {
    c.check_total(g)?;
    let colors = c.to_total(g.vertex_count())?;
    let violators = violators_dense(g, &colors);
    Ok(TotalVerdict {
        unfriendly: violators.is_empty(),
        violators,
    })
}

pub(crate) fn violators_dense(g: &FiniteGraph, colors: &[Color]) -> Vec<Vertex> {
    g.vertices()
        .filter(|&v| {
            let same = g
                .neighbors(v)
                .iter()
                .filter(|&&w| colors[w] == colors[v])
                .count();
            2 * same > g.degree(v)
        })
        .collect()
}

/// Extension-stable unfriendliness at a colored vertex:
/// `opposite >= same + uncolored` for the vertex's own color.
pub fn is_safe_unfriendly_at(g: &FiniteGraph, c: &PartialColoring, v: Vertex) -> Result<bool> {
    g.check_vertex(v)?;
    let color = c.get(v).ok_or(Error::NotInDomain(v))?;
    Ok(tally_unchecked(g, c, v, color).is_safe())
}

/// Number of edges whose endpoints have different colors.
pub fn cross_edge_count(g: &FiniteGraph, c: &PartialColoring) -> Result<usize> {
    c.check_total(g)?;
    let colors = c.to_total(g.vertex_count())?;
    Ok(cross_edges_dense(g, &colors))
}

pub(crate) fn cross_edges_dense(g: &FiniteGraph, colors: &[Color]) -> usize {
    g.edges().filter(|&(u, v)| colors[u] != colors[v]).count()
}
