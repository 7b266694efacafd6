//! Finite approximation of the compactness argument for locally finite graphs.
//!
//! Balls of radii `r, r + 1, ..., r + J - 1` around a root are cut out of a
//! lazy graph. A *level solution* colors a ball so that every interior vertex
//! (one whose whole neighborhood lies in the ball) is unfriendly; these sets
//! form an inverse system under restriction. The extractor backtracks over
//! colorings of the radius-`r` ball, keeping only prefixes that extend to a
//! level solution at every level.

use rayon::prelude::*;

use crate::coloring::{Color, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::{truncate, Ball, DegreeKind, FiniteGraph, LazyGraph, Vertex, DEFAULT_BUDGET};

#[derive(Clone, Copy, Debug)]
pub struct LimitConfig {
    /// Number of levels `J`.
    pub levels: usize,
    /// Radius `r` of the innermost ball.
    pub inner_radius: usize,
    /// Per-vertex neighbor enumeration budget.
    pub budget: usize,
    /// Cap on recorded solutions per level.
    pub solution_cap: usize,
    /// Cap on search nodes, per level search and for the prefix search.
    pub node_budget: u64,
}

impl Default for LimitConfig {
    fn default() -> Self {
        LimitConfig {
            levels: 4,
            inner_radius: 1,
            budget: DEFAULT_BUDGET,
            solution_cap: 10_000,
            node_budget: 10_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub ball: Ball,
    /// Recorded level solutions as dense colorings of the ball's local indices.
    pub solutions: Vec<Vec<Color>>,
    /// The solution cap was hit; `solutions` is the first `cap` found in
    /// search order rather than the full set.
    pub sampled: bool,
    /// Index into `solutions` of a solution extending the stable prefix.
    pub witness: usize,
}

impl TowerLevel {
    /// A level solution as a coloring keyed by lazy vertex ids.
    pub fn solution_coloring(&self, index: usize) -> PartialColoring {
        self.ball
            .vertices
            .iter()
            .copied()
            .zip(self.solutions[index].iter().copied())
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct LevelTower {
    pub levels: Vec<TowerLevel>,
    /// Coloring of the radius-`r` ball, keyed by lazy vertex ids.
    pub stable_prefix: PartialColoring,
    /// Some level's solution set was capped.
    pub sampled: bool,
    /// Nodes visited by the prefix search.
    pub nodes: u64,
}

impl LevelTower {
    pub fn inner(&self) -> &Ball {
        &self.levels[0].ball
    }

    pub fn largest(&self) -> &Ball {
        &self.levels[self.levels.len() - 1].ball
    }
}

/// Extracts a coloring of the inner ball that extends to a level solution at
/// every one of `config.levels` levels.
pub fn limit_partition<G: LazyGraph + ?Sized>(
    g: &G,
    root: Vertex,
    config: &LimitConfig,
) -> Result<LevelTower> {
    if config.levels == 0 {
        return Err(Error::BadParameter("at least one level is required".into()));
    }
    if config.solution_cap == 0 || config.budget == 0 {
        return Err(Error::BadParameter("budgets must be positive".into()));
    }
    // level by level, so an infinite-degree vertex is caught before the
    // next ball multiplies its enumeration budget
    if g.degree_kind(root) == DegreeKind::Infinite {
        return Err(Error::InfiniteDegree(root));
    }
    let mut balls = Vec::with_capacity(config.levels);
    for k in 0..config.levels {
        let ball = truncate(g, root, config.inner_radius + k, config.budget)?;
        if let Some(&v) = ball
            .vertices
            .iter()
            .find(|&&v| g.degree_kind(v) == DegreeKind::Infinite)
        {
            return Err(Error::InfiniteDegree(v));
        }
        balls.push(ball);
    }
    let searches: Vec<LevelSearch> = balls.iter().map(LevelSearch::new).collect();

    // map inner-ball vertices into every level
    let inner = &balls[0];
    let placement: Vec<Vec<usize>> = balls
        .iter()
        .map(|b| {
            inner
                .vertices
                .iter()
                .map(|&v| b.local(v).expect("balls are nested"))
                .collect()
        })
        .collect();

    let mut prefix = PrefixSearch {
        searches: &searches,
        placement: &placement,
        assignment: Vec::with_capacity(inner.vertices.len()),
        nodes: 0,
        node_budget: config.node_budget,
        deepest: 0,
    };
    let found = prefix.run();
    let nodes = prefix.nodes;
    let Some(prefix_colors) = found else {
        return Err(Error::NoCommonExtension {
            deepest_level: prefix.deepest,
        });
    };

    let stable_prefix = inner
        .vertices
        .iter()
        .copied()
        .zip(prefix_colors.iter().copied())
        .collect();

    let mut levels: Vec<TowerLevel> = balls
        .par_iter()
        .zip(searches.par_iter())
        .map(|(ball, search)| {
            let mut solutions = Vec::new();
            let mut budget = config.node_budget;
            let complete = search.enumerate(
                &mut vec![None; search.len()],
                config.solution_cap,
                &mut budget,
                &mut solutions,
            );
            TowerLevel {
                ball: ball.clone(),
                solutions,
                sampled: !complete,
                witness: 0,
            }
        })
        .collect();

    for (k, level) in levels.iter_mut().enumerate() {
        let fixed = fixed_from_prefix(searches[k].len(), &placement[k], &prefix_colors);
        let matches = |s: &Vec<Color>| fixed.iter().zip(s).all(|(f, c)| f.is_none_or(|f| f == *c));
        level.witness = match level.solutions.iter().position(matches) {
            Some(i) => i,
            None => {
                let mut budget = config.node_budget;
                let witness = searches[k]
                    .find_one(&fixed, &mut budget)
                    .ok_or(Error::NoCommonExtension { deepest_level: k })?;
                level.solutions.push(witness);
                level.solutions.len() - 1
            }
        };
    }

    Ok(LevelTower {
        sampled: levels.iter().any(|l| l.sampled),
        levels,
        stable_prefix,
        nodes,
    })
}

fn fixed_from_prefix(len: usize, placement: &[usize], prefix: &[Color]) -> Vec<Option<Color>> {
    let mut fixed = vec![None; len];
    for (&local, &c) in placement.iter().zip(prefix) {
        fixed[local] = Some(c);
    }
    fixed
}

/// Depth-first search for colorings of one ball that are unfriendly at every
/// interior vertex, assigning vertices in breadth-first order.
struct LevelSearch {
    graph: FiniteGraph,
    interior: Vec<bool>,
}

impl LevelSearch {
    fn new(ball: &Ball) -> Self {
        let mut interior = vec![false; ball.vertices.len()];
        for i in ball.interior_locals() {
            interior[i] = true;
        }
        LevelSearch {
            graph: ball.graph.clone(),
            interior,
        }
    }

    fn len(&self) -> usize {
        self.interior.len()
    }

    /// Could `v` still end up with `opposite >= same`?
    fn viable(&self, state: &[Option<Color>], v: usize) -> bool {
        let Some(color) = state[v] else { return true };
        if !self.interior[v] {
            return true;
        }
        let (mut same, mut open) = (0, 0);
        for &w in self.graph.neighbors(v) {
            match state[w] {
                Some(c) if c == color => same += 1,
                Some(_) => open += 1,
                None => open += 1,
            }
        }
        open >= same
    }

    fn viable_around(&self, state: &[Option<Color>], v: usize) -> bool {
        self.viable(state, v)
            && self
                .graph
                .neighbors(v)
                .iter()
                .all(|&w| self.viable(state, w))
    }

    fn find_one(&self, fixed: &[Option<Color>], budget: &mut u64) -> Option<Vec<Color>> {
        let mut out = Vec::new();
        let mut state = fixed.to_vec();
        if fixed
            .iter()
            .enumerate()
            .any(|(v, _)| !self.viable(&state, v))
        {
            return None;
        }
        self.enumerate(&mut state, 1, budget, &mut out);
        out.pop()
    }

    /// Appends up to `cap` solutions extending the fixed entries of `state`.
    /// Returns true iff the search space was exhausted.
    fn enumerate(
        &self,
        state: &mut [Option<Color>],
        cap: usize,
        budget: &mut u64,
        out: &mut Vec<Vec<Color>>,
    ) -> bool {
        let free: Vec<usize> = (0..self.len()).filter(|&v| state[v].is_none()).collect();
        self.descend(state, &free, 0, cap, budget, out)
    }

    fn descend(
        &self,
        state: &mut [Option<Color>],
        free: &[usize],
        depth: usize,
        cap: usize,
        budget: &mut u64,
        out: &mut Vec<Vec<Color>>,
    ) -> bool {
        if depth == free.len() {
            out.push(state.iter().map(|c| c.expect("assigned")).collect());
            return out.len() < cap;
        }
        let v = free[depth];
        for color in Color::BOTH {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            state[v] = Some(color);
            if self.viable_around(state, v)
                && !self.descend(state, free, depth + 1, cap, budget, out)
            {
                state[v] = None;
                return false;
            }
        }
        state[v] = None;
        true
    }
}

struct PrefixSearch<'a> {
    searches: &'a [LevelSearch],
    placement: &'a [Vec<usize>],
    assignment: Vec<Color>,
    nodes: u64,
    node_budget: u64,
    deepest: usize,
}

impl PrefixSearch<'_> {
    /// Number of leading levels in which the current partial prefix extends.
    fn consistent_levels(&mut self) -> usize {
        let mut count = 0;
        for (search, placement) in self.searches.iter().zip(self.placement) {
            let fixed = fixed_from_prefix(search.len(), placement, &self.assignment);
            let mut budget = self.node_budget;
            if search.find_one(&fixed, &mut budget).is_none() {
                break;
            }
            count += 1;
        }
        count
    }

    fn run(&mut self) -> Option<Vec<Color>> {
        let consistent = self.consistent_levels();
        self.deepest = self.deepest.max(consistent.saturating_sub(1));
        if consistent < self.searches.len() {
            return None;
        }
        if self.assignment.len() == self.placement[0].len() {
            return Some(self.assignment.clone());
        }
        for color in Color::BOTH {
            if self.nodes >= self.node_budget {
                return None;
            }
            self.nodes += 1;
            self.assignment.push(color);
            if let Some(found) = self.run() {
                return Some(found);
            }
            self.assignment.pop();
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::tally;
    use crate::graph::{FiniteAsLazy, Grid, Ray};
    use Color::{One, Zero};

    #[test]
    fn ray_prefix() {
        let config = LimitConfig {
            levels: 3,
            inner_radius: 2,
            ..Default::default()
        };
        let tower = limit_partition(&Ray, 0, &config).unwrap();
        assert_eq!(tower.levels.len(), 3);
        assert_eq!(
            tower
                .levels
                .iter()
                .map(|l| l.ball.vertices.len())
                .collect::<Vec<_>>(),
            vec![3, 4, 5]
        );
        assert_eq!(
            tower.stable_prefix,
            PartialColoring::from_total(&[Zero, One, Zero])
        );
        let largest = tower.largest();
        let local: PartialColoring = tower
            .stable_prefix
            .iter()
            .map(|(v, c)| (largest.local(v).unwrap(), c))
            .collect();
        for v in [0, 1] {
            let l = largest.local(v).unwrap();
            let t = tally(&largest.graph, &local, l, local.get(l).unwrap()).unwrap();
            assert_eq!(t.uncolored, 0);
            assert!(t.opposite >= t.same);
        }
    }

    #[test]
    fn witnesses_extend_prefix() {
        let config = LimitConfig {
            levels: 2,
            inner_radius: 1,
            ..Default::default()
        };
        let tower = limit_partition(&Grid, 0, &config).unwrap();
        for level in &tower.levels {
            let w = level.solution_coloring(level.witness);
            assert!(w.extends(&tower.stable_prefix));
        }
    }

    #[test]
    fn saturated_finite_graph_gives_unfriendly_partition() {
        // a 5-cycle with a pendant vertex, presented lazily
        let g =
            FiniteGraph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (2, 5)]).unwrap();
        let config = LimitConfig {
            levels: 3,
            inner_radius: 4,
            ..Default::default()
        };
        let tower = limit_partition(&FiniteAsLazy(g.clone()), 0, &config).unwrap();
        assert!(tower.inner().boundary.is_empty());
        assert_eq!(tower.stable_prefix.len(), 6);
        let verdict = crate::coloring::is_unfriendly_total(&g, &tower.stable_prefix).unwrap();
        assert!(verdict.unfriendly);
    }

    #[test]
    fn infinite_degree_is_rejected() {
        let err = limit_partition(
            &crate::graph::CompleteBipartiteInfinite,
            0,
            &LimitConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InfiniteDegree(_)));
    }

    #[test]
    fn cap_marks_levels_as_sampled() {
        let config = LimitConfig {
            levels: 2,
            inner_radius: 1,
            solution_cap: 3,
            ..Default::default()
        };
        let tower = limit_partition(&Grid, 0, &config).unwrap();
        assert!(tower.sampled);
        assert!(tower.levels.iter().all(|l| l.solutions.len() <= 4));
    }
}
