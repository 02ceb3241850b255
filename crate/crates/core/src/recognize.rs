//! Induced-subgraph detection and recognition of the hereditary classes
//! (P5-free, (K1∪K3)-free, (K1+(K1∪K3))-free, K3-free), bipartiteness, 5-rings and blow-ups.

use std::collections::{BTreeMap, HashSet};
use std::ops::ControlFlow;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::iso::{find_embedding, find_isomorphism, EmbedKind};
use crate::oracles;

/// Largest pattern accepted by [`contains_induced`].
pub const MAX_PATTERN: usize = 8;
/// Largest pattern accepted by [`is_blow_up_of`].
pub const MAX_BLOWUP_PATTERN: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognizeError {
    #[error("pattern has {size} vertices; at most {max} are supported")]
    PatternTooLarge { size: usize, max: usize },
}

/// The small named graphs the classes are defined by.
pub mod patterns {
    use crate::graph::Graph;

    pub fn p5() -> Graph {
        Graph::path(5).unwrap()
    }

    pub fn c5() -> Graph {
        Graph::cycle(5).unwrap()
    }

    pub fn k3() -> Graph {
        Graph::complete(3).unwrap()
    }

    /// Isolated vertex `0` beside the triangle `{1, 2, 3}`.
    pub fn k1_union_k3() -> Graph {
        Graph::complete(1)
            .unwrap()
            .disjoint_union(&Graph::complete(3).unwrap())
            .unwrap()
    }

    /// Vertex `0` joined to `K1 ∪ K3`: a K4 with a pendant vertex.
    pub fn k1_join_k1_union_k3() -> Graph {
        Graph::complete(1).unwrap().join(&k1_union_k3()).unwrap()
    }
}

/// Exact prefix-pruned search for induced copies of one pattern.
///
/// For every length `j` it stores the adjacency codes of all ordered `j`-tuples of distinct
/// pattern vertices, so a partial vertex choice in the host survives only if it induces
/// some induced subgraph of the pattern.
pub struct InducedMatcher {
    k: usize,
    codes: Vec<HashSet<u32>>,
}

#[inline]
fn pair_offset(j: usize) -> usize {
    j * j.saturating_sub(1) / 2
}

impl InducedMatcher {
    pub fn new(pattern: &Graph) -> Result<Self, RecognizeError> {
        let k = pattern.n();
        if k > MAX_PATTERN {
            return Err(RecognizeError::PatternTooLarge {
                size: k,
                max: MAX_PATTERN,
            });
        }
        let mut codes = vec![HashSet::new(); k + 1];
        let mut seq = Vec::with_capacity(k);
        fill_codes(pattern, &mut seq, 0, &mut codes);
        Ok(InducedMatcher { k, codes })
    }

    pub fn pattern_size(&self) -> usize {
        self.k
    }

    /// Lexicographically least vertex set inducing the pattern.
    pub fn find(&self, g: &Graph) -> Option<VertexSet> {
        self.find_containing(g, &[])
    }

    /// Lexicographically least vertex set inducing the pattern among those containing all of
    /// `required`.
    pub fn find_containing(&self, g: &Graph, required: &[usize]) -> Option<VertexSet> {
        let mut chosen: Vec<usize> = Vec::with_capacity(self.k);
        let mut code = 0u32;
        for &r in required {
            if chosen.contains(&r) {
                continue;
            }
            if chosen.len() == self.k {
                return None;
            }
            code = self.extend_code(g, &chosen, code, r)?;
            chosen.push(r);
        }
        let req: VertexSet = required.iter().copied().collect();
        if self.search(g, &req, &mut chosen, code, 0) {
            Some(chosen.into_iter().collect())
        } else {
            None
        }
    }

    #[inline]
    fn extend_code(&self, g: &Graph, chosen: &[usize], code: u32, v: usize) -> Option<u32> {
        let j = chosen.len();
        let mut bits = 0u32;
        for (i, &c) in chosen.iter().enumerate() {
            if g.adj(c, v) {
                bits |= 1 << i;
            }
        }
        let next = code | bits << pair_offset(j);
        self.codes[j + 1].contains(&next).then_some(next)
    }

    fn search(
        &self,
        g: &Graph,
        required: &VertexSet,
        chosen: &mut Vec<usize>,
        code: u32,
        from: usize,
    ) -> bool {
        if chosen.len() == self.k {
            return true;
        }
        let need = self.k - chosen.len();
        let n = g.n();
        let mut v = from;
        while v + need <= n {
            if !required.contains(v) {
                if let Some(next) = self.extend_code(g, chosen, code, v) {
                    chosen.push(v);
                    if self.search(g, required, chosen, next, v + 1) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            v += 1;
        }
        false
    }
}

fn fill_codes(p: &Graph, seq: &mut Vec<usize>, code: u32, codes: &mut [HashSet<u32>]) {
    let j = seq.len();
    codes[j].insert(code);
    if j == p.n() {
        return;
    }
    for v in 0..p.n() {
        if seq.contains(&v) {
            continue;
        }
        let mut bits = 0u32;
        for (i, &s) in seq.iter().enumerate() {
            if p.adj(s, v) {
                bits |= 1 << i;
            }
        }
        seq.push(v);
        fill_codes(p, seq, code | bits << pair_offset(j), codes);
        seq.pop();
    }
}

/// Lexicographically least vertex set of `g` inducing a copy of `pattern`.
pub fn contains_induced(g: &Graph, pattern: &Graph) -> Result<Option<VertexSet>, RecognizeError> {
    Ok(InducedMatcher::new(pattern)?.find(g))
}

/// A forbidden induced subgraph with a cached matcher.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Forbidden {
    P5,
    C5,
    K3,
    K1UnionK3,
    K1JoinK1UnionK3,
}

impl Forbidden {
    pub fn graph(self) -> Graph {
        match self {
            Forbidden::P5 => patterns::p5(),
            Forbidden::C5 => patterns::c5(),
            Forbidden::K3 => patterns::k3(),
            Forbidden::K1UnionK3 => patterns::k1_union_k3(),
            Forbidden::K1JoinK1UnionK3 => patterns::k1_join_k1_union_k3(),
        }
    }

    pub fn matcher(self) -> &'static InducedMatcher {
        static CELLS: [OnceLock<InducedMatcher>; 5] = [
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
        ];
        CELLS[self as usize].get_or_init(|| InducedMatcher::new(&self.graph()).unwrap())
    }

    pub fn find(self, g: &Graph) -> Option<VertexSet> {
        self.matcher().find(g)
    }

    pub fn name(self) -> &'static str {
        match self {
            Forbidden::P5 => "P5",
            Forbidden::C5 => "C5",
            Forbidden::K3 => "K3",
            Forbidden::K1UnionK3 => "K1∪K3",
            Forbidden::K1JoinK1UnionK3 => "K1+(K1∪K3)",
        }
    }
}

/// Hereditary classes defined by forbidden induced subgraphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GraphClass {
    #[serde(rename = "p5_k1uk3_free")]
    P5K1uK3Free,
    #[serde(rename = "p5_k1joink1uk3_free")]
    P5K1JoinK1uK3Free,
    #[serde(rename = "p5_k3_free")]
    P5K3Free,
    #[serde(rename = "p5_c5_k1joink1uk3_free")]
    P5C5K1JoinK1uK3Free,
}

impl GraphClass {
    pub fn forbidden(self) -> &'static [Forbidden] {
        match self {
            GraphClass::P5K1uK3Free => &[Forbidden::P5, Forbidden::K1UnionK3],
            GraphClass::P5K1JoinK1uK3Free => &[Forbidden::P5, Forbidden::K1JoinK1UnionK3],
            GraphClass::P5K3Free => &[Forbidden::P5, Forbidden::K3],
            GraphClass::P5C5K1JoinK1uK3Free => {
                &[Forbidden::P5, Forbidden::C5, Forbidden::K1JoinK1UnionK3]
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::P5K1uK3Free => "p5_k1uk3_free",
            GraphClass::P5K1JoinK1uK3Free => "p5_k1joink1uk3_free",
            GraphClass::P5K3Free => "p5_k3_free",
            GraphClass::P5C5K1JoinK1uK3Free => "p5_c5_k1joink1uk3_free",
        }
    }

    /// First forbidden pattern found in `g`, with its witness set.
    pub fn violation(self, g: &Graph) -> Option<(Forbidden, VertexSet)> {
        self.forbidden()
            .iter()
            .find_map(|&f| f.find(g).map(|w| (f, w)))
    }

    pub fn contains(self, g: &Graph) -> bool {
        self.violation(g).is_none()
    }

    /// Membership of `g` given that `g` with the pair `(u, v)` toggled back is a member:
    /// only vertex sets through both endpoints can have changed.
    pub fn contains_after_toggle(self, g: &Graph, u: usize, v: usize) -> bool {
        self.forbidden()
            .iter()
            .all(|f| f.matcher().find_containing(g, &[u, v]).is_none())
    }
}

impl std::str::FromStr for GraphClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "p5_k1uk3_free" => Ok(GraphClass::P5K1uK3Free),
            "p5_k1joink1uk3_free" => Ok(GraphClass::P5K1JoinK1uK3Free),
            "p5_k3_free" => Ok(GraphClass::P5K3Free),
            "p5_c5_k1joink1uk3_free" => Ok(GraphClass::P5C5K1JoinK1uK3Free),
            other => Err(format!("unknown class `{other}`")),
        }
    }
}

/// Result of a single-pattern freeness test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    pub witness: Option<VertexSet>,
}

impl Membership {
    fn from_witness(w: Option<VertexSet>) -> Self {
        Membership {
            member: w.is_none(),
            witness: w,
        }
    }
}

pub fn is_p5_free(g: &Graph) -> Membership {
    Membership::from_witness(Forbidden::P5.find(g))
}

pub fn is_k1uk3_free(g: &Graph) -> Membership {
    Membership::from_witness(Forbidden::K1UnionK3.find(g))
}

pub fn is_k1_join_k1uk3_free(g: &Graph) -> Membership {
    Membership::from_witness(Forbidden::K1JoinK1UnionK3.find(g))
}

pub fn is_k3_free(g: &Graph) -> Membership {
    Membership::from_witness(Forbidden::K3.find(g))
}

pub fn is_c5_free(g: &Graph) -> Membership {
    Membership::from_witness(Forbidden::C5.find(g))
}

/// Class-membership flags with witnesses for failed flags, plus ω and α.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecognitionReport {
    pub flags: BTreeMap<String, bool>,
    pub witnesses: BTreeMap<String, Vec<usize>>,
    pub omega: Option<usize>,
    pub alpha: Option<usize>,
}

pub const CLASS_FLAGS: &[&str] = &[
    "p5_free",
    "k1uk3_free",
    "k1_join_k1uk3_free",
    "k3_free",
    "c5_free",
    "bipartite",
    "five_ring",
];

/// Evaluates the requested flags (all of [`CLASS_FLAGS`] when `classes` is empty).
/// ω and α are filled in when `g` is within the oracle size bound.
pub fn recognize(g: &Graph, classes: &[&str]) -> Result<RecognitionReport, String> {
    let wanted: Vec<&str> = if classes.is_empty() {
        CLASS_FLAGS.to_vec()
    } else {
        classes.to_vec()
    };
    let mut report = RecognitionReport {
        flags: BTreeMap::new(),
        witnesses: BTreeMap::new(),
        omega: oracles::omega_exact(g, &oracles::OracleConfig::default())
            .ok()
            .map(|r| r.value),
        alpha: oracles::alpha_exact(g, &oracles::OracleConfig::default())
            .ok()
            .map(|r| r.value),
    };
    for &name in &wanted {
        let (flag, witness) = match name {
            "p5_free" | "p5" => flag_of(is_p5_free(g)),
            "k1uk3_free" | "k1uk3" => flag_of(is_k1uk3_free(g)),
            "k1_join_k1uk3_free" | "k1join" => flag_of(is_k1_join_k1uk3_free(g)),
            "k3_free" | "k3" => flag_of(is_k3_free(g)),
            "c5_free" | "c5" => flag_of(is_c5_free(g)),
            "bipartite" => match is_bipartite(g) {
                Bipartition::TwoColoring(_) => (true, None),
                Bipartition::OddCycle(c) => (false, Some(c)),
            },
            "five_ring" => (is_five_ring(g).is_some(), None),
            other => return Err(format!("unknown class flag `{other}`")),
        };
        report.flags.insert(name.to_string(), flag);
        if let Some(w) = witness {
            report.witnesses.insert(name.to_string(), w);
        }
    }
    Ok(report)
}

fn flag_of(m: Membership) -> (bool, Option<Vec<usize>>) {
    (m.member, m.witness.map(|w| w.to_vec()))
}

/// An induced 5-cycle `v1..v5` (0-based vertex labels, cyclic order).
pub type Hole = [usize; 5];

/// Visits every 5-hole once, as the lexicographically least of its ten cyclic orderings,
/// in increasing lexicographic order.
pub fn for_each_five_hole<B>(g: &Graph, mut f: impl FnMut(Hole) -> ControlFlow<B>) -> Option<B> {
    let n = g.n();
    for a in 0..n {
        let above = VertexSet::full(n).difference(&VertexSet::full(a + 1));
        let na = *g.neighbors(a);
        for b in g.neighbors(a).intersection(&above).iter() {
            let nb = *g.neighbors(b);
            for c in nb.intersection(&above).difference(&na).iter() {
                let nc = *g.neighbors(c);
                for d in nc
                    .intersection(&above)
                    .difference(&na)
                    .difference(&nb)
                    .iter()
                {
                    let cands = g
                        .neighbors(d)
                        .intersection(&na)
                        .difference(&nb)
                        .difference(&nc)
                        .intersection(&above);
                    for e in cands.iter().filter(|&e| e > b) {
                        if let ControlFlow::Break(x) = f([a, b, c, d, e]) {
                            return Some(x);
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn five_holes(g: &Graph) -> Vec<Hole> {
    let mut out = Vec::new();
    for_each_five_hole::<()>(g, |h| {
        out.push(h);
        ControlFlow::Continue(())
    });
    out
}

pub fn find_five_hole(g: &Graph) -> Option<Hole> {
    for_each_five_hole(g, ControlFlow::Break)
}

/// `M(C) = V \ (C ∪ N(C))`.
pub fn undominated(g: &Graph, hole: &Hole) -> VertexSet {
    let c: VertexSet = hole.iter().copied().collect();
    g.vertices()
        .difference(&c)
        .difference(&g.neighborhood_of_set(&c))
}

/// First 5-hole `C` with `M(C)` nonempty, together with `M(C)`.
pub fn find_non_dominating_five_hole(g: &Graph) -> Option<(Hole, VertexSet)> {
    for_each_five_hole(g, |h| {
        let m = undominated(g, &h);
        if m.is_empty() {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break((h, m))
        }
    })
}

/// Some induced cycle of length at least `min_len` (and odd or even when `odd` is given),
/// in cyclic order. Exhaustive path search; meant for desk-scale graphs.
pub fn find_hole(g: &Graph, min_len: usize, odd: Option<bool>) -> Option<Vec<usize>> {
    let accept = |len: usize| len >= min_len && odd.is_none_or(|o| (len % 2 == 1) == o);
    for s in 0..g.n() {
        let above = VertexSet::full(g.n()).difference(&VertexSet::full(s + 1));
        for p1 in g.neighbors(s).intersection(&above).iter() {
            let mut path = vec![s, p1];
            if let Some(c) = extend_hole(g, &above, &mut path, VertexSet::new(), &accept) {
                return Some(c);
            }
        }
    }
    None
}

fn extend_hole(
    g: &Graph,
    above: &VertexSet,
    path: &mut Vec<usize>,
    blocked: VertexSet,
    accept: &dyn Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let s = path[0];
    let last = *path.last().unwrap();
    let on_path: VertexSet = path.iter().copied().collect();
    let cands = g
        .neighbors(last)
        .intersection(above)
        .difference(&on_path)
        .difference(&blocked);
    // `blocked` holds the neighbours of interior path vertices other than `last`
    for w in cands.iter() {
        if g.adj(w, s) {
            if path.len() >= 3 && accept(path.len() + 1) {
                let mut cycle = path.clone();
                cycle.push(w);
                return Some(cycle);
            }
            continue;
        }
        let interior_blocked = blocked.union(g.neighbors(last));
        path.push(w);
        let found = extend_hole(g, above, path, interior_blocked, accept);
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bipartition {
    /// Side (0 or 1) per vertex.
    TwoColoring(Vec<u8>),
    /// Vertices of an odd cycle in cyclic order.
    OddCycle(Vec<usize>),
}

pub fn is_bipartite(g: &Graph) -> Bipartition {
    let n = g.n();
    let mut side: Vec<Option<u8>> = vec![None; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(0);
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].unwrap();
            for v in g.neighbors(u) {
                match side[v] {
                    None => {
                        side[v] = Some(1 - su);
                        parent[v] = u;
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                    Some(sv) if sv == su => {
                        return Bipartition::OddCycle(odd_cycle(&parent, &depth, u, v));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Bipartition::TwoColoring(side.into_iter().map(Option::unwrap).collect())
}

fn odd_cycle(parent: &[usize], depth: &[usize], u: usize, v: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while a != b {
        if depth[a] >= depth[b] {
            a = parent[a];
            left.push(a);
        } else {
            b = parent[b];
            right.push(b);
        }
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Partition into maximal false-twin classes and the graph on the classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwinQuotient {
    pub quotient: Graph,
    /// Classes ordered by least member.
    pub bags: Vec<VertexSet>,
    /// Class index of each vertex.
    pub bag_of: Vec<usize>,
}

impl TwinQuotient {
    pub fn bag_sizes(&self) -> Vec<usize> {
        self.bags.iter().map(VertexSet::len).collect()
    }
}

/// Groups vertices with identical neighbourhoods. Such vertices are never adjacent, so
/// every class is independent; true twins are never merged.
pub fn twin_quotient(g: &Graph) -> TwinQuotient {
    let mut bags: Vec<VertexSet> = Vec::new();
    let mut bag_of = vec![usize::MAX; g.n()];
    for v in 0..g.n() {
        if bag_of[v] != usize::MAX {
            continue;
        }
        let idx = bags.len();
        let mut bag = VertexSet::new();
        for (w, slot) in bag_of.iter_mut().enumerate().skip(v) {
            if *slot == usize::MAX && g.neighbors(w) == g.neighbors(v) {
                bag.insert(w);
                *slot = idx;
            }
        }
        bags.push(bag);
    }
    let reps: Vec<usize> = bags.iter().map(|b| b.first().unwrap()).collect();
    TwinQuotient {
        quotient: g.induced_by_list(&reps),
        bags,
        bag_of,
    }
}

/// Bags of `g` in cyclic order when `g` is a blow-up of C5 with every bag nonempty.
pub fn is_five_ring(g: &Graph) -> Option<[VertexSet; 5]> {
    let tq = twin_quotient(g);
    if tq.quotient.n() != 5 {
        return None;
    }
    let map = find_isomorphism(&patterns::c5(), &tq.quotient)?;
    Some(std::array::from_fn(|i| tq.bags[map[i]]))
}

/// Whether `g` is a blow-up of `pattern`. With `allow_empty_bags`, pattern vertices may
/// receive empty bags, i.e. `g` is a blow-up of some induced subgraph of `pattern`.
pub fn is_blow_up_of(
    g: &Graph,
    pattern: &Graph,
    allow_empty_bags: bool,
) -> Result<bool, RecognizeError> {
    Ok(blow_up_assignment(g, pattern, allow_empty_bags)?.is_some())
}

/// Pattern vertex for each twin class of `g` (classes as in [`twin_quotient`]).
///
/// Without empty bags, twin classes of the pattern itself absorb one class of `g` each,
/// which must be at least as large as the pattern class.
pub fn blow_up_assignment(
    g: &Graph,
    pattern: &Graph,
    allow_empty_bags: bool,
) -> Result<Option<Vec<usize>>, RecognizeError> {
    if pattern.n() > MAX_BLOWUP_PATTERN {
        return Err(RecognizeError::PatternTooLarge {
            size: pattern.n(),
            max: MAX_BLOWUP_PATTERN,
        });
    }
    let tq = twin_quotient(g);
    if allow_empty_bags {
        return Ok(find_embedding(
            &tq.quotient,
            pattern,
            EmbedKind::Induced,
            &|_, _| true,
        ));
    }
    let pq = twin_quotient(pattern);
    if pq.quotient.n() != tq.quotient.n() {
        return Ok(None);
    }
    let g_sizes = tq.bag_sizes();
    let p_sizes = pq.bag_sizes();
    let map = find_embedding(&tq.quotient, &pq.quotient, EmbedKind::Induced, &|s, t| {
        g_sizes[s] >= p_sizes[t]
    });
    Ok(map.map(|m| m.into_iter().map(|c| pq.bags[c].first().unwrap()).collect()))
}

/// Whether `g` is a blow-up of a (not necessarily induced) subgraph of `pattern`: its twin
/// quotient must map injectively into `pattern` with edges going to edges.
pub fn is_blow_up_of_subgraph(g: &Graph, pattern: &Graph) -> Result<bool, RecognizeError> {
    if pattern.n() > MAX_BLOWUP_PATTERN {
        return Err(RecognizeError::PatternTooLarge {
            size: pattern.n(),
            max: MAX_BLOWUP_PATTERN,
        });
    }
    let tq = twin_quotient(g);
    Ok(find_embedding(&tq.quotient, pattern, EmbedKind::Subgraph, &|_, _| true).is_some())
}
