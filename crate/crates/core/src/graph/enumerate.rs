//! Exhaustive enumeration of small graphs.

use std::collections::BTreeMap;

use super::FiniteGraph;

/// Largest vertex count accepted by [`nonisomorphic_graphs`].
pub const MAX_ISOMORPHISM_CLASSES_N: usize = 9;

/// Every labeled simple graph on `n` vertices (`2^(n(n-1)/2)` of them), in
/// order of the edge bitmask over pairs `(u, v)`, `u < v`, listed
/// lexicographically.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = FiniteGraph> {
    assert!(n <= 7, "labeled enumeration is limited to n <= 7");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        FiniteGraph::from_edges(n, edges).expect("pairs are simple")
    })
}

/// One representative of every isomorphism class of graphs on `n` vertices.
///
/// Classes are grown vertex by vertex: each representative on `n - 1`
/// vertices is extended by a new vertex with every possible neighborhood and
/// the result is reduced to a canonical form. Output order is by canonical
/// code. Panics if `n` exceeds [`MAX_ISOMORPHISM_CLASSES_N`].
pub fn nonisomorphic_graphs(n: usize) -> Vec<FiniteGraph> {
    assert!(
        n <= MAX_ISOMORPHISM_CLASSES_N,
        "isomorphism-class enumeration is limited to n <= {MAX_ISOMORPHISM_CLASSES_N}"
    );
    let mut reps: Vec<Vec<u16>> = vec![Vec::new()];
    for k in 1..=n {
        let mut next: BTreeMap<u64, Vec<u16>> = BTreeMap::new();
        for rep in &reps {
            for subset in 0u16..1 << (k - 1) {
                let mut adj = rep.clone();
                for (v, row) in adj.iter_mut().enumerate() {
                    if subset >> v & 1 == 1 {
                        *row |= 1 << (k - 1);
                    }
                }
                adj.push(subset);
                let (code, canon) = canonical_form(&adj);
                next.entry(code).or_insert(canon);
            }
        }
        reps = next.into_values().collect();
    }
    reps.iter().map(|adj| masks_to_graph(adj)).collect()
}

fn masks_to_graph(adj: &[u16]) -> FiniteGraph {
    let n = adj.len();
    let lists = (0..n)
        .map(|u| (0..n).filter(|&v| adj[u] >> v & 1 == 1).collect())
        .collect();
    FiniteGraph::from_sorted_adjacency(lists)
}

/// Canonical code and relabeled adjacency.
///
/// Vertices are first split by iterated color refinement (an
/// isomorphism-invariant ordered partition); the code is the minimum upper
/// triangle bitstring over all orderings that respect that partition.
fn canonical_form(adj: &[u16]) -> (u64, Vec<u16>) {
    let n = adj.len();
    let mut color: Vec<usize> = adj.iter().map(|m| m.count_ones() as usize).collect();
    let mut classes = distinct(&color);
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut around: Vec<usize> = (0..n)
                    .filter(|&w| adj[v] >> w & 1 == 1)
                    .map(|w| color[w])
                    .collect();
                around.sort_unstable();
                (color[v], around)
            })
            .collect();
        let mut sorted = signatures.clone();
        sorted.sort();
        sorted.dedup();
        color = signatures
            .iter()
            .map(|s| sorted.binary_search(s).expect("present"))
            .collect();
        let refined = sorted.len();
        if refined == classes {
            break;
        }
        classes = refined;
    }

    let mut cell_of_position = Vec::with_capacity(n);
    let mut by_color: Vec<Vec<usize>> = vec![Vec::new(); classes];
    for v in 0..n {
        by_color[color[v]].push(v);
    }
    for (c, cell) in by_color.iter().enumerate() {
        cell_of_position.extend(std::iter::repeat_n(c, cell.len()));
    }

    let mut best = (u64::MAX, Vec::new());
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search(
        adj,
        &by_color,
        &cell_of_position,
        &mut order,
        &mut used,
        &mut best,
    );
    let ord = best.1;
    let mut relabeled = vec![0u16; n];
    for i in 0..n {
        for j in 0..n {
            if adj[ord[i]] >> ord[j] & 1 == 1 {
                relabeled[i] |= 1 << j;
            }
        }
    }
    (best.0, relabeled)
}

fn search(
    adj: &[u16],
    cells: &[Vec<usize>],
    cell_of_position: &[usize],
    order: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut (u64, Vec<usize>),
) {
    let n = adj.len();
    if order.len() == n {
        let code = code_of(adj, order);
        if code < best.0 {
            *best = (code, order.clone());
        }
        return;
    }
    for &v in &cells[cell_of_position[order.len()]] {
        if !used[v] {
            used[v] = true;
            order.push(v);
            search(adj, cells, cell_of_position, order, used, best);
            order.pop();
            used[v] = false;
        }
    }
}

fn code_of(adj: &[u16], order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | (adj[order[i]] >> order[j] & 1) as u64;
        }
    }
    code
}

fn distinct(values: &[usize]) -> usize {
    let mut v = values.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}
