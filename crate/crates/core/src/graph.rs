//! Dense undirected simple graphs over vertices `0..n` with bitset rows.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 256;
const WORDS: usize = MAX_VERTICES / 64;

/// A subset of `{0..MAX_VERTICES}` stored as a fixed-width bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet([u64; WORDS]);

impl VertexSet {
    pub const fn new() -> Self {
        VertexSet([0; WORDS])
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        let mut s = Self::new();
        for w in 0..WORDS {
            let lo = w * 64;
            if n >= lo + 64 {
                s.0[w] = u64::MAX;
            } else if n > lo {
                s.0[w] = (1u64 << (n - lo)) - 1;
            }
        }
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        v < MAX_VERTICES && self.0[v >> 6] >> (v & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0[v >> 6] |= 1u64 << (v & 63);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.0[v >> 6] &= !(1u64 << (v & 63));
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn union(&self, other: &Self) -> Self {
        let mut out = *self;
        for w in 0..WORDS {
            out.0[w] |= other.0[w];
        }
        out
    }

    #[inline]
    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = *self;
        for w in 0..WORDS {
            out.0[w] &= other.0[w];
        }
        out
    }

    #[inline]
    pub fn difference(&self, other: &Self) -> Self {
        let mut out = *self;
        for w in 0..WORDS {
            out.0[w] &= !other.0[w];
        }
        out
    }

    #[inline]
    pub fn is_disjoint(&self, other: &Self) -> bool {
        (0..WORDS).all(|w| self.0[w] & other.0[w] == 0)
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        (0..WORDS).all(|w| self.0[w] & !other.0[w] == 0)
    }

    /// Smallest member.
    #[inline]
    pub fn first(&self) -> Option<usize> {
        for w in 0..WORDS {
            if self.0[w] != 0 {
                return Some(w * 64 + self.0[w].trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> VertexIter {
        VertexIter {
            words: self.0,
            word: 0,
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for &VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let members = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = members.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!(
                "vertex {bad} out of range"
            )));
        }
        Ok(members.into_iter().collect())
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
pub struct VertexIter {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                self.words[self.word] = w & (w - 1);
                return Some(self.word * 64 + w.trailing_zeros() as usize);
            }
            self.word += 1;
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    EndpointOutOfRange(usize, usize, usize),
    #[error("edge ({0}, {0}) is a self-loop")]
    SelfLoop(usize),
    #[error("vertex {0} outside 0..{1}")]
    VertexOutOfRange(usize, usize),
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooLarge(usize),
    #[error("blow-up needs one size per pattern vertex: got {got}, expected {expected}")]
    SizeMismatch { got: usize, expected: usize },
}

/// Finite simple undirected graph on vertices `0..n`.
///
/// Values are immutable once built; every operation returns a new graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        Ok(Graph {
            n,
            rows: vec![VertexSet::new(); n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.rows[u].insert(v);
            g.rows[v].insert(u);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            g.rows[u] = VertexSet::full(n);
            g.rows[u].remove(u);
        }
        Ok(g)
    }

    /// Cycle `0-1-..-(n-1)-0`; `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    /// Path `0-1-..-(n-1)`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn adj(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.rows[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Union of the neighbourhoods of `s`, minus `s` itself.
    pub fn neighborhood_of_set(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for v in s {
            out = out.union(&self.rows[v]);
        }
        out.difference(s)
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| {
            s.difference(&VertexSet::singleton(v))
                .is_subset(&self.rows[v])
        })
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.rows[v].is_disjoint(s))
    }

    /// First edge inside `s`, if any.
    pub fn edge_within(&self, s: &VertexSet) -> Option<(usize, usize)> {
        for u in s {
            if let Some(v) = self.rows[u].intersection(s).iter().find(|&v| v > u) {
                return Some((u, v));
            }
        }
        None
    }

    /// First non-adjacent pair `(x, y)` with `x` in `a`, `y` in `b`, `x != y`.
    pub fn missing_edge_between(&self, a: &VertexSet, b: &VertexSet) -> Option<(usize, usize)> {
        for x in a {
            let miss = b
                .difference(&self.rows[x])
                .difference(&VertexSet::singleton(x));
            if let Some(y) = miss.first() {
                return Some((x, y));
            }
        }
        None
    }

    /// First adjacent pair `(x, y)` with `x` in `a`, `y` in `b`.
    pub fn edge_between(&self, a: &VertexSet, b: &VertexSet) -> Option<(usize, usize)> {
        for x in a {
            if let Some(y) = self.rows[x].intersection(b).first() {
                return Some((x, y));
            }
        }
        None
    }

    pub fn complement(&self) -> Graph {
        let full = VertexSet::full(self.n);
        let rows = (0..self.n)
            .map(|v| {
                let mut r = full.difference(&self.rows[v]);
                r.remove(v);
                r
            })
            .collect();
        Graph { n: self.n, rows }
    }

    /// Disjoint union; `h`'s vertices are shifted by `self.n()`.
    pub fn disjoint_union(&self, h: &Graph) -> Result<Graph, GraphError> {
        self.combine(h, false)
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, h: &Graph) -> Result<Graph, GraphError> {
        self.combine(h, true)
    }

    fn combine(&self, h: &Graph, cross: bool) -> Result<Graph, GraphError> {
        let n = self.n + h.n;
        let mut g = Graph::empty(n)?;
        let left = VertexSet::full(self.n);
        let right = VertexSet::full(n).difference(&left);
        for u in 0..self.n {
            g.rows[u] = self.rows[u];
            if cross {
                g.rows[u] = g.rows[u].union(&right);
            }
        }
        for u in 0..h.n {
            let mut row: VertexSet = h.rows[u].iter().map(|v| v + self.n).collect();
            if cross {
                row = row.union(&left);
            }
            g.rows[u + self.n] = row;
        }
        Ok(g)
    }

    /// Replaces pattern vertex `i` with an independent bag of `sizes[i]` vertices and each
    /// pattern edge with a complete bipartite graph. Bags are numbered consecutively; the
    /// returned map sends each new vertex to its pattern vertex.
    pub fn blow_up(pattern: &Graph, sizes: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
        if sizes.len() != pattern.n {
            return Err(GraphError::SizeMismatch {
                got: sizes.len(),
                expected: pattern.n,
            });
        }
        let bag_of: Vec<usize> = sizes
            .iter()
            .enumerate()
            .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
            .collect();
        let n = bag_of.len();
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in 0..n {
                if pattern.adj(bag_of[u], bag_of[v]) {
                    g.rows[u].insert(v);
                }
            }
        }
        Ok((g, bag_of))
    }

    /// Subgraph induced by `s`, relabelled in ascending order. The returned map sends each
    /// new vertex to its original label.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if let Some(bad) = s.iter().find(|&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange(bad, self.n));
        }
        let map = s.to_vec();
        Ok((self.induced_by_list(&map), map))
    }

    /// Subgraph induced by an ordered vertex list; new vertex `i` is `list[i]`.
    pub fn induced_by_list(&self, list: &[usize]) -> Graph {
        let k = list.len();
        let mut rows = vec![VertexSet::new(); k];
        for i in 0..k {
            for j in 0..k {
                if i != j && self.adj(list[i], list[j]) {
                    rows[i].insert(j);
                }
            }
        }
        Graph { n: k, rows }
    }

    /// Graph with the single pair `(u, v)` toggled.
    pub fn toggled(&self, u: usize, v: usize) -> Graph {
        assert!(u != v && u < self.n && v < self.n);
        let mut g = self.clone();
        if g.rows[u].contains(v) {
            g.rows[u].remove(v);
            g.rows[v].remove(u);
        } else {
            g.rows[u].insert(v);
            g.rows[v].insert(u);
        }
        g
    }

    /// Graph with one new vertex `n` adjacent to `nbrs`.
    pub fn with_vertex(&self, nbrs: &VertexSet) -> Result<Graph, GraphError> {
        let n = self.n + 1;
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        if let Some(bad) = nbrs.iter().find(|&v| v >= self.n) {
            return Err(GraphError::VertexOutOfRange(bad, self.n));
        }
        let mut rows = self.rows.clone();
        for v in nbrs {
            rows[v].insert(self.n);
        }
        rows.push(*nbrs);
        Ok(Graph { n, rows })
    }

    /// Connected components within `within`, each as a vertex set, ordered by least vertex.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut left = *within;
        let mut out = Vec::new();
        while let Some(start) = left.first() {
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::new();
                for v in &frontier {
                    next = next.union(&self.rows[v]);
                }
                frontier = next.intersection(within).difference(&comp);
                comp = comp.union(&frontier);
            }
            left = left.difference(&comp);
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Breadth-first distance layers from `source`: entry `i` holds `N^{i+1}(source)`.
    /// Vertices unreachable from `source` appear in no layer.
    pub fn distance_layers(&self, source: &VertexSet) -> Vec<VertexSet> {
        let mut seen = *source;
        let mut frontier = *source;
        let mut layers = Vec::new();
        loop {
            let next = self.neighborhood_of_set(&frontier).difference(&seen);
            if next.is_empty() {
                break;
            }
            seen = seen.union(&next);
            layers.push(next);
            frontier = next;
        }
        layers
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c5() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn from_edges_examples() {
        let g = c5();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g, Graph::cycle(5).unwrap());
        let empty = Graph::from_edges(0, &[]).unwrap();
        assert_eq!(empty.n(), 0);
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4, Graph::complete(4).unwrap());
    }

    #[test]
    fn from_edges_collapses_duplicates() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn from_edges_rejects_bad_pairs() {
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::EndpointOutOfRange(0, 2, 2))
        );
        assert_eq!(
            Graph::from_edges(2, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert!(matches!(
            Graph::empty(MAX_VERTICES + 1),
            Err(GraphError::TooLarge(_))
        ));
    }

    #[test]
    fn complement_examples() {
        let k4 = Graph::complete(4).unwrap();
        assert_eq!(k4.complement(), Graph::empty(4).unwrap());
        assert_eq!(c5().complement().complement(), c5());
        let anti = Graph::cycle(7).unwrap().complement();
        assert_eq!(anti.edge_count(), 21 - 7);
        assert!(!anti.adj(0, 1) && anti.adj(0, 2));
    }

    #[test]
    fn union_and_join_examples() {
        let k1 = Graph::complete(1).unwrap();
        let k3 = Graph::complete(3).unwrap();
        let k1uk3 = k1.disjoint_union(&k3).unwrap();
        assert_eq!(k1uk3.n(), 4);
        assert_eq!(k1uk3.edges(), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(
            Graph::empty(0).unwrap().disjoint_union(&c5()).unwrap(),
            c5()
        );
        let cc = c5().disjoint_union(&c5()).unwrap();
        assert_eq!((cc.n(), cc.edge_count()), (10, 10));

        let claw_k4 = k1.join(&k1uk3).unwrap();
        assert_eq!((claw_k4.n(), claw_k4.edge_count()), (5, 7));
        assert_eq!(claw_k4.degree(0), 4);
        assert_eq!(k1.join(&k1).unwrap(), Graph::complete(2).unwrap());
        assert_eq!(
            Graph::complete(2).unwrap().join(&k3).unwrap(),
            Graph::complete(5).unwrap()
        );
    }

    #[test]
    fn blow_up_examples() {
        let (g, bags) = Graph::blow_up(&c5(), &[1, 1, 1, 1, 1]).unwrap();
        assert_eq!(g, c5());
        assert_eq!(bags, vec![0, 1, 2, 3, 4]);

        // one doubled bag: that bag has two neighbouring bags, each edge counted per copy
        let (g, bags) = Graph::blow_up(&c5(), &[2, 1, 1, 1, 1]).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 7);
        assert_eq!(bags, vec![0, 0, 1, 2, 3, 4]);

        let (g, _) = Graph::blow_up(&c5(), &[2, 0, 1, 1, 1]).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(
            Graph::blow_up(&c5(), &[1, 1]).unwrap_err(),
            GraphError::SizeMismatch {
                got: 2,
                expected: 5
            }
        );
    }

    #[test]
    fn induced_examples() {
        let (p3, map) = c5()
            .induced_subgraph(&[0, 1, 2].into_iter().collect())
            .unwrap();
        assert_eq!(p3, Graph::path(3).unwrap());
        assert_eq!(map, vec![0, 1, 2]);
        let (same, _) = c5().induced_subgraph(&c5().vertices()).unwrap();
        assert_eq!(same, c5());
        let c6 = Graph::cycle(6).unwrap();
        let (p5, _) = c6.induced_subgraph(&(0..5).collect()).unwrap();
        assert_eq!(p5, Graph::path(5).unwrap());
        assert_eq!(
            c5().induced_subgraph(&VertexSet::singleton(7)).unwrap_err(),
            GraphError::VertexOutOfRange(7, 5)
        );
    }

    #[test]
    fn layers_and_components() {
        // C5 with a pendant path 0-5-6
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6)])
            .unwrap();
        let layers = g.distance_layers(&(0..5).collect());
        assert_eq!(layers.len(), 2);
        assert_eq!(layers[0].to_vec(), vec![5]);
        assert_eq!(layers[1].to_vec(), vec![6]);
        let two = c5().disjoint_union(&Graph::complete(2).unwrap()).unwrap();
        let comps = two.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[1].to_vec(), vec![5, 6]);
    }

    #[test]
    fn vertex_set_basics() {
        let full = VertexSet::full(130);
        assert_eq!(full.len(), 130);
        assert!(full.contains(129) && !full.contains(130));
        let s: VertexSet = [3, 70, 200].into_iter().collect();
        assert_eq!(s.to_vec(), vec![3, 70, 200]);
        assert_eq!(s.first(), Some(3));
        assert!(s.is_subset(&VertexSet::full(201)));
    }
}
