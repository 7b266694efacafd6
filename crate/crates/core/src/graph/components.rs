use std::collections::VecDeque;

use super::{FiniteGraph, Vertex};

/// A connected component of an induced subgraph, with its breadth-first
/// layers from the least-index vertex: `layers[i]` holds the vertices at
/// distance exactly `i` inside the induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Sorted vertex list.
    pub vertices: Vec<Vertex>,
    pub layers: Vec<Vec<Vertex>>,
}

impl Component {
    pub fn root(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Connected components of `g[within]`, ordered by least vertex.
///
/// Vertices of `within` outside `g` are ignored; duplicates are harmless.
pub fn components(g: &FiniteGraph, within: &[Vertex]) -> Vec<Component> {
    let n = g.vertex_count();
    let mut member = vec![false; n];
    for &v in within {
        if v < n {
            member[v] = true;
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if !member[root] || seen[root] {
            continue;
        }
        seen[root] = true;
        let mut layers = vec![vec![root]];
        let mut vertices = vec![root];
        let mut queue = VecDeque::from([(root, 0usize)]);
        while let Some((v, d)) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if member[w] && !seen[w] {
                    seen[w] = true;
                    if layers.len() == d + 1 {
                        layers.push(Vec::new());
                    }
                    layers[d + 1].push(w);
                    vertices.push(w);
                    queue.push_back((w, d + 1));
                }
            }
        }
        vertices.sort_unstable();
        for layer in &mut layers {
            layer.sort_unstable();
        }
        out.push(Component { vertices, layers });
    }
    out
}
