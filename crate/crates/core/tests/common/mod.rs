//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the solver or closure code under test.

#![allow(dead_code, clippy::needless_range_loop)]

use rand::Rng;
use unfriendly::{Color, FiniteGraph, PartialColoring};

/// Plain adjacency matrix built from the edge list.
pub fn matrix(g: &FiniteGraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut m = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        m[u][v] = true;
        m[v][u] = true;
    }
    m
}

/// Maximum cut by trying all `2^n` bit vectors.
pub fn brute_max_cut(g: &FiniteGraph) -> usize {
    let n = g.vertex_count();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (0u32..1 << n)
        .map(|mask| {
            edges
                .iter()
                .filter(|&&(u, v)| (mask >> u & 1) != (mask >> v & 1))
                .count()
        })
        .max()
        .unwrap_or(0)
}

/// Every vertex has at least as many neighbors across as on its own side.
pub fn brute_unfriendly(g: &FiniteGraph, c: &PartialColoring) -> bool {
    let m = matrix(g);
    let n = g.vertex_count();
    (0..n).all(|v| {
        let cv = c.get(v).expect("total coloring");
        let (mut same, mut across) = (0, 0);
        for w in 0..n {
            if m[v][w] {
                if c.get(w).expect("total coloring") == cv {
                    same += 1;
                } else {
                    across += 1;
                }
            }
        }
        across >= same
    })
}

/// `opposite >= same + uncolored` at a colored vertex, counted from the matrix.
pub fn brute_safe(g: &FiniteGraph, c: &PartialColoring, v: usize) -> bool {
    let m = matrix(g);
    let cv = c.get(v).expect("colored vertex");
    let (mut same, mut across, mut open) = (0, 0, 0);
    for w in 0..g.vertex_count() {
        if !m[v][w] {
            continue;
        }
        match c.get(w) {
            None => open += 1,
            Some(x) if x == cv => same += 1,
            Some(_) => across += 1,
        }
    }
    across >= same + open
}

/// Closure recomputed from scratch each stage: every uncolored vertex that
/// qualifies for color 0 gets 0, else if it qualifies for 1 gets 1, all at
/// once; stop when a stage adds nothing.
pub fn closure_oracle(g: &FiniteGraph, c: &PartialColoring) -> (PartialColoring, usize) {
    let m = matrix(g);
    let n = g.vertex_count();
    let mut cur = c.clone();
    let mut stages = 0;
    loop {
        let mut batch = Vec::new();
        for v in (0..n).filter(|&v| cur.get(v).is_none()) {
            let (mut zeros, mut ones, mut open) = (0usize, 0usize, 0usize);
            for w in (0..n).filter(|&w| m[v][w]) {
                match cur.get(w) {
                    None => open += 1,
                    Some(Color::Zero) => zeros += 1,
                    Some(Color::One) => ones += 1,
                }
            }
            if ones >= zeros + open {
                batch.push((v, Color::Zero));
            } else if zeros >= ones + open {
                batch.push((v, Color::One));
            }
        }
        if batch.is_empty() {
            return (cur, stages);
        }
        stages += 1;
        cur.extend(batch);
    }
}

/// Pair validity straight from the definition, over bitmasks.
pub fn pair_valid(g: &FiniteGraph, high: u32, f0: u32, f1: u32) -> bool {
    let n = g.vertex_count();
    if f0 & !high != 0 || f1 & high != 0 || f0 & f1 != 0 {
        return false;
    }
    let m = matrix(g);
    (0..n).all(|v| {
        let other = if f0 >> v & 1 == 1 {
            f1
        } else if f1 >> v & 1 == 1 {
            f0
        } else {
            return true;
        };
        (0..n).filter(|&w| m[v][w]).all(|w| other >> w & 1 == 1)
    })
}

pub fn random_coloring<R: Rng>(n: usize, rng: &mut R) -> PartialColoring {
    (0..n).map(|v| (v, Color::from_bit(rng.gen()))).collect()
}

/// Random partial coloring; each vertex colored with probability `density`.
pub fn random_partial<R: Rng>(n: usize, density: f64, rng: &mut R) -> PartialColoring {
    let mut out = PartialColoring::new();
    for v in 0..n {
        if rng.gen_bool(density) {
            out.set(v, Color::from_bit(rng.gen()));
        }
    }
    out
}

/// Colors every uncolored vertex of `0..n` at random.
pub fn random_completion<R: Rng>(c: &PartialColoring, n: usize, rng: &mut R) -> PartialColoring {
    let mut out = c.clone();
    for v in 0..n {
        if !out.contains(v) {
            out.set(v, Color::from_bit(rng.gen()));
        }
    }
    out
}
