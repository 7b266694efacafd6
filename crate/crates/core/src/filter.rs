//! Generic chains of finite partial colorings on countable graphs.
//!
//! Finite partial colorings ordered by extension form a poset in which two
//! families of requirements are dense when every degree is infinite:
//!
//! * `Dom(v)`: `v` is colored;
//! * `Both(v, n)`: past position `n` of `v`'s neighbor enumeration there is a
//!   neighbor colored 0 and one colored 1.
//!
//! Any finite coloring can be extended to meet a requirement because only
//! finitely many neighbors are colored. [`run_chain`] processes a fair
//! enumeration of all requirements one by one, building an increasing chain
//! `c_0 ⊆ c_1 ⊆ ...`; its down-closure is a filter meeting every requirement
//! it has processed. In the limit every vertex is colored and sees both colors
//! cofinally often in its enumeration, so each vertex has infinitely many
//! neighbors of each color and the union is an unfriendly partition.

use std::fmt;
use std::fmt::Write as _;
use std::io::BufRead;
use std::str::FromStr;

use crate::coloring::{Color, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::{scan_neighbors, DegreeKind, LazyGraph, Vertex};

/// The poset of finite partial colorings of a lazy graph, ordered by
/// extension: `c <= d` iff `c` extends `d`.
pub struct ColoringPoset<'g, G: ?Sized> {
    pub graph: &'g G,
}

impl<'g, G: LazyGraph + ?Sized> ColoringPoset<'g, G> {
    pub fn new(graph: &'g G) -> Self {
        ColoringPoset { graph }
    }

    /// Every colored vertex is a vertex of the graph.
    pub fn is_element(&self, c: &PartialColoring) -> bool {
        c.domain().all(|v| self.graph.contains(v))
    }

    pub fn le(&self, c: &PartialColoring, d: &PartialColoring) -> bool {
        c.extends(d)
    }

    /// Two colorings are compatible iff they agree on their common domain,
    /// in which case their union lies below both.
    pub fn compatible(&self, c: &PartialColoring, d: &PartialColoring) -> bool {
        c.iter().all(|(v, x)| d.get(v).is_none_or(|y| x == y))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Requirement {
    Dom(Vertex),
    Both(Vertex, usize),
}

impl Requirement {
    pub fn vertex(&self) -> Vertex {
        match *self {
            Requirement::Dom(v) | Requirement::Both(v, _) => v,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Requirement::Dom(_) => "dom",
            Requirement::Both(..) => "both",
        }
    }
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Requirement::Dom(v) => write!(f, "dom {v}"),
            Requirement::Both(v, n) => write!(f, "both {v} {n}"),
        }
    }
}

impl FromStr for Requirement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s.split_whitespace().collect();
        let nat = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| Error::BadParameter(format!("`{t}` is not a natural number")))
        };
        match fields[..] {
            ["dom", v] => Ok(Requirement::Dom(nat(v)?)),
            ["both", v, n] => Ok(Requirement::Both(nat(v)?, nat(n)?)),
            _ => Err(Error::BadParameter(format!("malformed requirement `{s}`"))),
        }
    }
}

/// Colored neighbors of `v` past position `after`: which colors occur.
fn colors_past<G: LazyGraph + ?Sized>(
    c: &PartialColoring,
    v: Vertex,
    after: usize,
    g: &G,
    budget: usize,
) -> Result<[bool; 2]> {
    let mut colored_neighbors = c.domain().filter(|&w| g.adjacent(v, w)).count();
    let mut have = [false; 2];
    if colored_neighbors == 0 {
        return Ok(have);
    }
    for item in scan_neighbors(g, v, budget) {
        let (pos, w) = item?;
        if let Some(color) = c.get(w) {
            colored_neighbors -= 1;
            if pos > after {
                have[color.bit() as usize] = true;
            }
        }
        if colored_neighbors == 0 || have == [true; 2] {
            break;
        }
    }
    Ok(have)
}

/// Whether `c` meets `req`.
pub fn meets<G: LazyGraph + ?Sized>(
    c: &PartialColoring,
    req: Requirement,
    g: &G,
    budget: usize,
) -> Result<bool> {
    match req {
        Requirement::Dom(v) => Ok(c.contains(v)),
        Requirement::Both(v, n) => Ok(colors_past(c, v, n, g, budget)? == [true; 2]),
    }
}

fn require_infinite<G: LazyGraph + ?Sized>(g: &G, v: Vertex) -> Result<()> {
    if !g.contains(v) {
        return Err(Error::BadParameter(format!("{v} is not a vertex")));
    }
    match g.degree_kind(v) {
        DegreeKind::Infinite => Ok(()),
        DegreeKind::Finite(_) => Err(Error::FiniteDegree(v)),
    }
}

/// Assignments of the least deterministic extension of `c` meeting `req`.
fn extension<G: LazyGraph + ?Sized>(
    c: &PartialColoring,
    req: Requirement,
    g: &G,
    budget: usize,
) -> Result<Vec<(Vertex, Color)>> {
    require_infinite(g, req.vertex())?;
    match req {
        Requirement::Dom(v) => Ok(if c.contains(v) {
            Vec::new()
        } else {
            vec![(v, Color::Zero)]
        }),
        Requirement::Both(v, n) => {
            let have = colors_past(c, v, n, g, budget)?;
            let mut missing = Color::BOTH
                .into_iter()
                .filter(|col| !have[col.bit() as usize])
                .peekable();
            let mut out = Vec::new();
            if missing.peek().is_none() {
                return Ok(out);
            }
            for item in scan_neighbors(g, v, budget) {
                let (pos, w) = item?;
                if pos <= n || c.contains(w) {
                    continue;
                }
                match missing.next() {
                    Some(color) => out.push((w, color)),
                    None => break,
                }
                if missing.peek().is_none() {
                    break;
                }
            }
            Ok(out)
        }
    }
}

/// Least deterministic extension of `c` meeting `req`: `Dom` colors the
/// vertex 0; `Both` gives the first uncolored neighbors past position `n`
/// whichever of the colors 0, 1 (in that order) are still missing there.
pub fn extend_to_meet<G: LazyGraph + ?Sized>(
    c: &PartialColoring,
    req: Requirement,
    g: &G,
    budget: usize,
) -> Result<PartialColoring> {
    let mut out = c.clone();
    out.extend(extension(c, req, g, budget)?);
    Ok(out)
}

/// Enumeration of requirements processed by [`run_chain`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// Diagonal over `(vertex index, n)`: diagonal `d` lists `Both(i, d - i)`
    /// for `i = 0..=d`, with `Dom(d)` inserted just before `Both(d, 0)`.
    Diagonal,
    /// An explicit finite list.
    Listed(Vec<Requirement>),
}

impl Schedule {
    /// Requirement at `position`, on vertex indices (0 is the first vertex
    /// enumerated by the graph).
    fn indexed(&self, position: usize) -> Option<Requirement> {
        match self {
            Schedule::Diagonal => Some(diagonal_at(position)),
            Schedule::Listed(list) => list.get(position).copied(),
        }
    }

    /// Parses one requirement per line (`dom v` or `both v n`).
    pub fn parse_listed<R: BufRead>(reader: R) -> Result<Self> {
        let mut out = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            out.push(
                line.parse()
                    .map_err(|e: Error| Error::parse(idx + 1, e.to_string()))?,
            );
        }
        Ok(Schedule::Listed(out))
    }
}

fn diagonal_start(d: usize) -> usize {
    d * (d + 3) / 2
}

fn diagonal_at(position: usize) -> Requirement {
    let mut d = (((8.0 * position as f64 + 9.0).sqrt() - 3.0) / 2.0) as usize;
    while diagonal_start(d) > position {
        d -= 1;
    }
    while diagonal_start(d + 1) <= position {
        d += 1;
    }
    let offset = position - diagonal_start(d);
    match offset.cmp(&d) {
        std::cmp::Ordering::Less => Requirement::Both(offset, d - offset),
        std::cmp::Ordering::Equal => Requirement::Dom(d),
        std::cmp::Ordering::Greater => Requirement::Both(d, 0),
    }
}

/// Position of a requirement (on vertex indices) in the diagonal schedule.
pub fn diagonal_position(req: Requirement) -> usize {
    match req {
        Requirement::Dom(i) => diagonal_start(i) + i,
        Requirement::Both(i, 0) => diagonal_start(i) + i + 1,
        Requirement::Both(i, n) => diagonal_start(i + n) + i,
    }
}

/// Steps needed by the diagonal schedule to process every requirement on the
/// first `horizon` vertices with `n <= depth`.
pub fn diagonal_steps_for(horizon: usize, depth: usize) -> usize {
    (0..horizon)
        .flat_map(|i| {
            std::iter::once(Requirement::Dom(i))
                .chain((0..=depth).map(move |n| Requirement::Both(i, n)))
        })
        .map(diagonal_position)
        .max()
        .map_or(0, |p| p + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLogEntry {
    /// 1-based: the entry records the passage from `c_{step-1}` to `c_step`.
    pub step: usize,
    pub requirement: Requirement,
    pub assigned: Vec<(Vertex, Color)>,
}

/// State of the chain after `step` processed requirements.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChainState {
    pub coloring: PartialColoring,
    pub step: usize,
    pub log: Vec<ChainLogEntry>,
    /// Next schedule position.
    pub cursor: usize,
}

impl ChainState {
    /// Processes the next requirement. Returns false when a listed schedule
    /// is exhausted.
    pub fn advance<G: LazyGraph + ?Sized>(
        &mut self,
        g: &G,
        schedule: &Schedule,
        budget: usize,
    ) -> Result<bool> {
        let Some(indexed) = schedule.indexed(self.cursor) else {
            return Ok(false);
        };
        let requirement = match indexed {
            Requirement::Dom(i) => Requirement::Dom(vertex_at(g, i)?),
            Requirement::Both(i, n) => Requirement::Both(vertex_at(g, i)?, n),
        };
        let assigned = extension(&self.coloring, requirement, g, budget)?;
        self.coloring.extend(assigned.iter().copied());
        self.cursor += 1;
        self.step += 1;
        self.log.push(ChainLogEntry {
            step: self.step,
            requirement,
            assigned,
        });
        Ok(true)
    }

    /// `c_k`, rebuilt from the log.
    pub fn coloring_at(&self, k: usize) -> PartialColoring {
        self.log
            .iter()
            .take(k)
            .flat_map(|e| e.assigned.iter().copied())
            .collect()
    }

    /// One `step kind v n vertex color` line per assignment; a step that
    /// assigns nothing is written with `-` for vertex and color, and `Dom`
    /// steps carry `-` for `n`.
    pub fn log_text(&self) -> String {
        let mut out = String::new();
        for e in &self.log {
            let n = match e.requirement {
                Requirement::Dom(_) => "-".to_string(),
                Requirement::Both(_, n) => n.to_string(),
            };
            let head = format!(
                "{} {} {} {}",
                e.step,
                e.requirement.kind(),
                e.requirement.vertex(),
                n
            );
            if e.assigned.is_empty() {
                let _ = writeln!(out, "{head} - -");
            }
            for (v, c) in &e.assigned {
                let _ = writeln!(out, "{head} {v} {c}");
            }
        }
        out
    }
}

fn vertex_at<G: LazyGraph + ?Sized>(g: &G, index: usize) -> Result<Vertex> {
    g.vertices()
        .nth(index)
        .ok_or_else(|| Error::BadParameter(format!("graph has no vertex with index {index}")))
}

/// Runs `steps` steps of the chain construction from the empty coloring.
pub fn run_chain<G: LazyGraph + ?Sized>(
    g: &G,
    schedule: &Schedule,
    steps: usize,
    budget: usize,
) -> Result<ChainState> {
    let mut state = ChainState::default();
    for _ in 0..steps {
        if !state.advance(g, schedule, budget)? {
            break;
        }
    }
    Ok(state)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub vertex: Vertex,
    pub dom: bool,
    /// `both[n]` for `n = 0..=depth`.
    pub both: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub step: usize,
    pub rows: Vec<AuditRow>,
}

impl AuditReport {
    pub fn met(&self) -> usize {
        self.rows
            .iter()
            .map(|r| usize::from(r.dom) + r.both.iter().filter(|&&b| b).count())
            .sum()
    }

    pub fn total(&self) -> usize {
        self.rows.iter().map(|r| 1 + r.both.len()).sum()
    }

    pub fn all_met(&self) -> bool {
        self.met() == self.total()
    }

    /// Requirements met, as a sorted list.
    pub fn met_set(&self) -> Vec<Requirement> {
        let mut out = Vec::new();
        for r in &self.rows {
            if r.dom {
                out.push(Requirement::Dom(r.vertex));
            }
            for (n, &b) in r.both.iter().enumerate() {
                if b {
                    out.push(Requirement::Both(r.vertex, n));
                }
            }
        }
        out
    }

    /// `# vertex dom both_0 .. both_depth` header, one row per vertex, and a
    /// closing `# met total` line.
    pub fn to_text(&self) -> String {
        let depth = self.rows.first().map_or(0, |r| r.both.len());
        let mut out = String::from("# vertex dom");
        for n in 0..depth {
            let _ = write!(out, " both_{n}");
        }
        out.push('\n');
        let flag = |b: bool| if b { "1" } else { "0" };
        for r in &self.rows {
            let _ = write!(out, "{} {}", r.vertex, flag(r.dom));
            for &b in &r.both {
                let _ = write!(out, " {}", flag(b));
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "# met {} of {} at step {}",
            self.met(),
            self.total(),
            self.step
        );
        out
    }
}

/// Which requirements on vertices with id below `horizon` and `n <= depth`
/// the current coloring meets.
pub fn audit<G: LazyGraph + ?Sized>(
    state: &ChainState,
    g: &G,
    horizon: usize,
    depth: usize,
    budget: usize,
) -> Result<AuditReport> {
    let rows = g
        .vertices()
        .take_while(|&v| v < horizon)
        .map(|v| {
            let both = (0..=depth)
                .map(|n| meets(&state.coloring, Requirement::Both(v, n), g, budget))
                .collect::<Result<Vec<_>>>()?;
            Ok(AuditRow {
                vertex: v,
                dom: state.coloring.contains(v),
                both,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AuditReport {
        step: state.step,
        rows,
    })
}
