//! Seeded generators for the test families.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::lazy::{CompleteBipartiteInfinite, Grid, LazyGraph, LazyRandom, Ray};
use super::FiniteGraph;
use crate::error::{Error, Result};

/// Graph family with parameters.
///
/// Textual form (as accepted by [`FromStr`]): `complete:N`, `cycle:N`,
/// `path:N`, `bipartite:M,N`, `gnp:N,P`, `triangles:K`, `ray`, `grid`,
/// `kinf`, `lazy-random:P`.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    CompleteBipartite(usize, usize),
    Gnp {
        n: usize,
        p: f64,
    },
    /// Disjoint union of `K` triangles.
    Triangles(usize),
    Ray,
    Grid,
    CompleteBipartiteInfinite,
    LazyRandom {
        p: f64,
    },
}

impl Family {
    pub fn is_lazy(&self) -> bool {
        matches!(
            self,
            Family::Ray
                | Family::Grid
                | Family::CompleteBipartiteInfinite
                | Family::LazyRandom { .. }
        )
    }

    fn validate(&self) -> Result<()> {
        let check_p = |p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(Error::BadParameter(format!(
                    "edge probability {p} not in [0, 1]"
                )))
            }
        };
        match *self {
            Family::Cycle(n) if n < 3 => Err(Error::BadParameter(format!(
                "a simple cycle needs at least 3 vertices, got {n}"
            ))),
            Family::Gnp { p, .. } | Family::LazyRandom { p } => check_p(p),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Path(n) => write!(f, "path:{n}"),
            Family::CompleteBipartite(m, n) => write!(f, "bipartite:{m},{n}"),
            Family::Gnp { n, p } => write!(f, "gnp:{n},{p}"),
            Family::Triangles(k) => write!(f, "triangles:{k}"),
            Family::Ray => write!(f, "ray"),
            Family::Grid => write!(f, "grid"),
            Family::CompleteBipartiteInfinite => write!(f, "kinf"),
            Family::LazyRandom { p } => write!(f, "lazy-random:{p}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = match s.split_once(':') {
            Some((name, args)) => (name, args.split(',').map(str::trim).collect::<Vec<_>>()),
            None => (s, Vec::new()),
        };
        let bad = || Error::BadParameter(format!("malformed parameters in `{s}`"));
        let nat = |i: usize| -> Result<usize> {
            args.get(i).and_then(|a| a.parse().ok()).ok_or_else(bad)
        };
        let prob =
            |i: usize| -> Result<f64> { args.get(i).and_then(|a| a.parse().ok()).ok_or_else(bad) };
        let arity = |k: usize| if args.len() == k { Ok(()) } else { Err(bad()) };
        let family = match name.trim() {
            "complete" => arity(1).and_then(|_| nat(0)).map(Family::Complete)?,
            "cycle" => arity(1).and_then(|_| nat(0)).map(Family::Cycle)?,
            "path" => arity(1).and_then(|_| nat(0)).map(Family::Path)?,
            "bipartite" => {
                arity(2)?;
                Family::CompleteBipartite(nat(0)?, nat(1)?)
            }
            "gnp" => {
                arity(2)?;
                Family::Gnp {
                    n: nat(0)?,
                    p: prob(1)?,
                }
            }
            "triangles" => arity(1).and_then(|_| nat(0)).map(Family::Triangles)?,
            "ray" => arity(0).map(|_| Family::Ray)?,
            "grid" => arity(0).map(|_| Family::Grid)?,
            "kinf" => arity(0).map(|_| Family::CompleteBipartiteInfinite)?,
            "lazy-random" => arity(1)
                .and_then(|_| prob(0))
                .map(|p| Family::LazyRandom { p })?,
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        family.validate()?;
        Ok(family)
    }
}

pub enum Generated {
    Finite(FiniteGraph),
    Lazy(Box<dyn LazyGraph>),
}

impl fmt::Debug for Generated {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generated::Finite(g) => f.debug_tuple("Finite").field(g).finish(),
            Generated::Lazy(_) => f.write_str("Lazy(..)"),
        }
    }
}

impl Generated {
    pub fn into_finite(self) -> Option<FiniteGraph> {
        match self {
            Generated::Finite(g) => Some(g),
            Generated::Lazy(_) => None,
        }
    }

    pub fn into_lazy(self) -> Option<Box<dyn LazyGraph>> {
        match self {
            Generated::Lazy(g) => Some(g),
            Generated::Finite(_) => None,
        }
    }
}

/// Builds a member of `family`. Only the random families consult `seed`.
pub fn generate(family: &Family, seed: u64) -> Result<Generated> {
    family.validate()?;
    let finite = |edges: Vec<(usize, usize)>, n: usize| -> Result<Generated> {
        Ok(Generated::Finite(FiniteGraph::from_edges(n, edges)?))
    };
    match *family {
        Family::Complete(n) => {
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            finite(edges, n)
        }
        Family::Cycle(n) => finite((0..n).map(|i| (i, (i + 1) % n)).collect(), n),
        Family::Path(n) => finite((1..n).map(|i| (i - 1, i)).collect(), n),
        Family::CompleteBipartite(m, n) => {
            let edges = (0..m)
                .flat_map(|u| (m..m + n).map(move |v| (u, v)))
                .collect();
            finite(edges, m + n)
        }
        Family::Gnp { n, p } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Generated::Finite(random_gnp(n, p, &mut rng)))
        }
        Family::Triangles(k) => {
            let edges = (0..k)
                .flat_map(|t| {
                    let b = 3 * t;
                    [(b, b + 1), (b + 1, b + 2), (b, b + 2)]
                })
                .collect();
            finite(edges, 3 * k)
        }
        Family::Ray => Ok(Generated::Lazy(Box::new(Ray))),
        Family::Grid => Ok(Generated::Lazy(Box::new(Grid))),
        Family::CompleteBipartiteInfinite => {
            Ok(Generated::Lazy(Box::new(CompleteBipartiteInfinite)))
        }
        Family::LazyRandom { p } => Ok(Generated::Lazy(Box::new(LazyRandom::new(p, seed)?))),
    }
}

/// Erdős–Rényi `G(n, p)`: each pair `u < v` is an edge independently with
/// probability `p`, drawn in lexicographic pair order.
pub fn random_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> FiniteGraph {
    let p = p.clamp(0.0, 1.0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    FiniteGraph::from_edges(n, edges).expect("generated edges are simple")
}
