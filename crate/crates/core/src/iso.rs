//! Brute-force isomorphism and embedding search for small graphs.

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedKind {
    /// Adjacency preserved in both directions.
    Induced,
    /// Edges of the small graph map to edges; non-edges are unconstrained.
    Subgraph,
}

/// Injective map `small -> big` of the given kind, tried in lexicographic order of images.
/// `allowed(s, b)` can veto individual assignments.
pub fn find_embedding(
    small: &Graph,
    big: &Graph,
    kind: EmbedKind,
    allowed: &dyn Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    if small.n() > big.n() {
        return None;
    }
    let mut map = Vec::with_capacity(small.n());
    let mut used = vec![false; big.n()];
    if extend(small, big, kind, allowed, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    small: &Graph,
    big: &Graph,
    kind: EmbedKind,
    allowed: &dyn Fn(usize, usize) -> bool,
    map: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let s = map.len();
    if s == small.n() {
        return true;
    }
    for b in 0..big.n() {
        if used[b] || small.degree(s) > big.degree(b) || !allowed(s, b) {
            continue;
        }
        let consistent = map.iter().enumerate().all(|(t, &bt)| {
            let se = small.adj(s, t);
            let be = big.adj(b, bt);
            match kind {
                EmbedKind::Induced => se == be,
                EmbedKind::Subgraph => !se || be,
            }
        });
        if !consistent {
            continue;
        }
        map.push(b);
        used[b] = true;
        if extend(small, big, kind, allowed, map, used) {
            return true;
        }
        map.pop();
        used[b] = false;
    }
    false
}

/// Isomorphism `a -> b` as a vertex map, if one exists.
pub fn find_isomorphism(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.n() != b.n()
        || a.edge_count() != b.edge_count()
        || a.degree_sequence() != b.degree_sequence()
    {
        return None;
    }
    find_embedding(a, b, EmbedKind::Induced, &|s, t| a.degree(s) == b.degree(t))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    find_isomorphism(a, b).is_some()
}
