//! The closure operator on partial colorings.
//!
//! Starting from `c`, every uncolored vertex `v` that admits a color `b` with
//! `opposite_b >= same_b + uncolored` (counted against the currently colored
//! set) is colored `b`. All qualifying vertices of a stage are colored at
//! once; stages repeat until none qualifies. Each newly colored vertex is
//! safely unfriendly, and stays so under every further extension.

use std::fmt::Write as _;

use crate::coloring::{Color, PartialColoring};
use crate::graph::{FiniteGraph, Vertex};

/// Vertices colored in one stage, ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureStage {
    pub index: usize,
    pub assigned: Vec<(Vertex, Color)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureTrace {
    pub stages: Vec<ClosureStage>,
    /// Domain of the closed coloring, ascending.
    pub final_domain: Vec<Vertex>,
}

impl ClosureTrace {
    pub fn added(&self) -> usize {
        self.stages.iter().map(|s| s.assigned.len()).sum()
    }

    /// One `stage vertex color` line per newly colored vertex.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for stage in &self.stages {
            for (v, c) in &stage.assigned {
                let _ = writeln!(out, "{} {v} {c}", stage.index);
            }
        }
        out
    }
}

/// Color that `v` may safely take given `zero`/`one` colored neighbors and
/// `uncolored` uncolored ones. Color 0 wins when both qualify.
pub(crate) fn qualifying_color(zero: usize, one: usize, uncolored: usize) -> Option<Color> {
    if one >= zero + uncolored {
        Some(Color::Zero)
    } else if zero >= one + uncolored {
        Some(Color::One)
    } else {
        None
    }
}

/// Closure of `c` in `g`.
pub fn close(g: &FiniteGraph, c: &PartialColoring) -> (PartialColoring, ClosureTrace) {
    let all: Vec<Vertex> = g.vertices().collect();
    close_within(g, c, &all)
}

/// Closure of `c` where only vertices of `candidates` may receive colors.
/// Neighbor counts are always taken in the whole of `g`.
pub fn close_within(
    g: &FiniteGraph,
    c: &PartialColoring,
    candidates: &[Vertex],
) -> (PartialColoring, ClosureTrace) {
    let n = g.vertex_count();
    let mut state: Vec<Option<Color>> = (0..n).map(|v| c.get(v)).collect();
    let mut pending: Vec<Vertex> = candidates
        .iter()
        .copied()
        .filter(|&v| v < n && state[v].is_none())
        .collect();
    pending.sort_unstable();
    pending.dedup();

    let mut stages = Vec::new();
    loop {
        let assigned: Vec<(Vertex, Color)> = pending
            .iter()
            .filter_map(|&v| {
                let (mut zero, mut one, mut unc) = (0, 0, 0);
                for &w in g.neighbors(v) {
                    match state[w] {
                        Some(Color::Zero) => zero += 1,
                        Some(Color::One) => one += 1,
                        None => unc += 1,
                    }
                }
                qualifying_color(zero, one, unc).map(|b| (v, b))
            })
            .collect();
        if assigned.is_empty() {
            break;
        }
        for &(v, b) in &assigned {
            state[v] = Some(b);
        }
        pending.retain(|&v| state[v].is_none());
        stages.push(ClosureStage {
            index: stages.len(),
            assigned,
        });
    }

    let mut out = c.clone();
    for stage in &stages {
        out.extend(stage.assigned.iter().copied());
    }
    let final_domain = out.domain().collect();
    (
        out,
        ClosureTrace {
            stages,
            final_domain,
        },
    )
}

/// True iff the closure adds nothing.
pub fn is_closed(g: &FiniteGraph, c: &PartialColoring) -> bool {
    close(g, c).1.stages.is_empty()
}
