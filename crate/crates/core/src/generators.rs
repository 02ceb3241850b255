//! Named constructions (ℱ, H, 5-rings) and streams of class members for the harness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError, VertexSet};
use crate::io::JsonGraph;
use crate::iso::is_isomorphic;
use crate::recognize::GraphClass;

/// Largest vertex count [`enumerate_class`] accepts.
pub const MAX_ENUMERATE_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("five-ring needs exactly 5 bag sizes, all at least 1; got {0:?}")]
    BadRingSizes(Vec<usize>),
    #[error("class `{0}` has no random walk")]
    UnsupportedClass(String),
    #[error("enumeration supports at most {MAX_ENUMERATE_N} vertices, got {0}")]
    TooLarge(usize),
    #[error("bad family parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// ℱ: the 5-cycles `x1..x5` (vertices 0..4) and `y1..y5` (5..9) plus the edges
/// `x_i y_i`, `x_i y_{i+1}`, `x_i y_{i+3}`.
pub fn gen_f() -> Graph {
    let x = |i: usize| (i - 1) % 5;
    let y = |i: usize| 5 + (i - 1) % 5;
    let mut edges = Vec::new();
    for i in 1..=5 {
        edges.push((x(i), x(i + 1)));
        edges.push((y(i), y(i + 1)));
        edges.push((x(i), y(i)));
        edges.push((x(i), y(i + 1)));
        edges.push((x(i), y(i + 3)));
    }
    Graph::from_edges(10, &edges).unwrap()
}

/// H: a 5-cycle of 5-holes `C^1..C^5` (vertices `5(i-1)..5i`), consecutive holes completely
/// joined.
pub fn gen_h() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        for j in 0..5 {
            edges.push((5 * i + j, 5 * i + (j + 1) % 5));
        }
        let next = (i + 1) % 5;
        for a in 0..5 {
            for b in 0..5 {
                edges.push((5 * i + a, 5 * next + b));
            }
        }
    }
    Graph::from_edges(25, &edges).unwrap()
}

/// The explicit 8-colouring of H with palettes {1,2,3}, {4,5,6}, {1,7,8}, {3,4,5}, {6,7,8} on
/// `C^1..C^5`, returned 0-based. Each hole uses its palette as `a, b, a, b, c`.
pub fn h_eight_coloring() -> Vec<usize> {
    const PALETTES: [[usize; 3]; 5] = [[1, 2, 3], [4, 5, 6], [1, 7, 8], [3, 4, 5], [6, 7, 8]];
    let mut colors = Vec::with_capacity(25);
    for [a, b, c] in PALETTES {
        colors.extend([a - 1, b - 1, a - 1, b - 1, c - 1]);
    }
    colors
}

/// Blow-up of C5 with the given (nonzero) bag sizes, plus the bag of each vertex.
pub fn gen_five_ring(sizes: &[usize]) -> Result<(Graph, Vec<usize>), GenError> {
    if sizes.len() != 5 || sizes.contains(&0) {
        return Err(GenError::BadRingSizes(sizes.to_vec()));
    }
    Ok(Graph::blow_up(&Graph::cycle(5)?, sizes)?)
}

fn padded(g: Graph, n: usize) -> Graph {
    if g.n() >= n {
        return g;
    }
    g.disjoint_union(&Graph::empty(n - g.n()).unwrap()).unwrap()
}

fn random_ring(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut sizes = [1usize; 5];
    for _ in 5..n {
        sizes[rng.gen_range(0..5)] += 1;
    }
    gen_five_ring(&sizes).unwrap().0
}

fn start_graph(class: GraphClass, n: usize, seed: u64, rng: &mut ChaCha8Rng) -> Graph {
    let anti_c7 = || Graph::cycle(7).unwrap().complement();
    let choice = match class {
        GraphClass::P5K1uK3Free | GraphClass::P5K3Free => seed % 2,
        GraphClass::P5K1JoinK1uK3Free => seed % 4,
        GraphClass::P5C5K1JoinK1uK3Free => 4 + seed % 2,
    };
    let fits = |k: usize| n >= k;
    match choice {
        0 if fits(5) => padded(Graph::cycle(5).unwrap(), n),
        1 if fits(5) => random_ring(n, rng),
        2 if fits(7) => padded(anti_c7(), n),
        3 if fits(5) => {
            let h = gen_h();
            if n >= 25 {
                padded(h, n)
            } else {
                h.induced_by_list(&(0..n).collect::<Vec<_>>())
            }
        }
        4 if fits(7) => padded(anti_c7(), n),
        _ => Graph::empty(n).unwrap(),
    }
}

/// Rejection random walk over a hereditary class: propose a uniformly random pair toggle,
/// keep it iff the result stays in the class. Yields the start graph, then every
/// `stride`-th accepted state until `iters` states have followed it.
pub struct ClassWalk {
    class: GraphClass,
    current: Graph,
    rng: ChaCha8Rng,
    remaining: usize,
    stride: usize,
    started: bool,
}

/// Consecutive rejected proposals after which the walk gives up.
const MAX_REJECTIONS: usize = 200_000;

impl Iterator for ClassWalk {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        let n = self.current.n();
        if self.remaining == 0 || n < 2 {
            return None;
        }
        let mut accepted = 0;
        let mut rejected = 0;
        while accepted < self.stride {
            let u = self.rng.gen_range(0..n);
            let mut v = self.rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            let proposal = self.current.toggled(u, v);
            if self.class.contains_after_toggle(&proposal, u, v) {
                self.current = proposal;
                accepted += 1;
                rejected = 0;
            } else {
                rejected += 1;
                if rejected >= MAX_REJECTIONS {
                    self.remaining = 0;
                    return None;
                }
            }
        }
        self.remaining -= 1;
        Some(self.current.clone())
    }
}

pub fn gen_random_in_class(
    class: GraphClass,
    n: usize,
    seed: u64,
    iters: usize,
    stride: usize,
) -> Result<ClassWalk, GenError> {
    if n > crate::graph::MAX_VERTICES {
        return Err(GraphError::TooLarge(n).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let current = start_graph(class, n, seed, &mut rng);
    debug_assert!(class.contains(&current));
    Ok(ClassWalk {
        class,
        current,
        rng,
        remaining: iters,
        stride: stride.max(1),
        started: false,
    })
}

/// Calls `f` on every labelled member of `class` with at most `max_n` vertices (including
/// the empty graph), each exactly once. Graphs grow one vertex at a time over all
/// neighbourhoods of the new vertex; since the class is hereditary, an extension that
/// leaves it is never grown further.
pub fn for_each_in_class(
    class: GraphClass,
    max_n: usize,
    mut f: impl FnMut(&Graph),
) -> Result<(), GenError> {
    if max_n > MAX_ENUMERATE_N {
        return Err(GenError::TooLarge(max_n));
    }
    grow(class, &Graph::empty(0)?, max_n, &mut f);
    Ok(())
}

fn grow(class: GraphClass, g: &Graph, max_n: usize, f: &mut impl FnMut(&Graph)) {
    f(g);
    let k = g.n();
    if k == max_n {
        return;
    }
    for mask in 0u32..(1 << k) {
        let nbrs: VertexSet = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        let h = g.with_vertex(&nbrs).unwrap();
        let inside = class
            .forbidden()
            .iter()
            .all(|p| p.matcher().find_containing(&h, &[k]).is_none());
        if inside {
            grow(class, &h, max_n, f);
        }
    }
}

pub fn enumerate_class(class: GraphClass, max_n: usize) -> Result<Vec<Graph>, GenError> {
    let mut out = Vec::new();
    for_each_in_class(class, max_n, |g| out.push(g.clone()))?;
    Ok(out)
}

/// One representative per isomorphism class, in first-seen order. Quadratic; for reporting
/// counts on small enumerations.
pub fn dedup_isomorphic(graphs: &[Graph]) -> Vec<Graph> {
    let mut reps: Vec<Graph> = Vec::new();
    for g in graphs {
        if !reps.iter().any(|r| is_isomorphic(r, g)) {
            reps.push(g.clone());
        }
    }
    reps
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "cycle")]
    Cycle,
    #[serde(rename = "path")]
    Path,
    #[serde(rename = "complete")]
    Complete,
    #[serde(rename = "five_ring", alias = "five-ring")]
    FiveRing,
    #[serde(rename = "F")]
    F,
    #[serde(rename = "H")]
    H,
    #[serde(rename = "blowup")]
    Blowup,
    #[serde(rename = "random_class", alias = "random-class")]
    RandomClass,
    #[serde(rename = "enumerate_class", alias = "enumerate-class")]
    EnumerateClass,
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| format!("unknown family `{s}`"))
    }
}

/// Description of a graph or graph stream; also the body of the `gen` command.
///
/// `params` by family: `cycle`/`path`/`complete`: `[n]`; `five_ring`: five bag sizes;
/// `blowup`: one size per vertex of `pattern`; `random_class`: `[n]` with `class`, `seed`,
/// `iters`, `stride`; `enumerate_class`: `[max_n]` with `class`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    #[serde(default)]
    pub params: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<GraphClass>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iters: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stride: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<JsonGraph>,
}

impl FamilySpec {
    pub fn new(family: Family, params: Vec<usize>) -> Self {
        FamilySpec {
            family,
            params,
            class: None,
            seed: 0,
            iters: None,
            stride: None,
            pattern: None,
        }
    }

    fn single_param(&self) -> Result<usize, GenError> {
        match self.params.as_slice() {
            [n] => Ok(*n),
            other => Err(GenError::BadParams(format!(
                "{:?} expects one parameter, got {other:?}",
                self.family
            ))),
        }
    }

    fn class(&self) -> Result<GraphClass, GenError> {
        self.class
            .ok_or_else(|| GenError::BadParams(format!("{:?} needs a class", self.family)))
    }

    /// Materialises every graph the spec describes, in stream order.
    pub fn generate(&self) -> Result<Vec<Graph>, GenError> {
        Ok(match self.family {
            Family::Cycle => {
                let n = self.single_param()?;
                if n < 3 {
                    return Err(GenError::BadParams("cycle needs n >= 3".into()));
                }
                vec![Graph::cycle(n)?]
            }
            Family::Path => vec![Graph::path(self.single_param()?)?],
            Family::Complete => vec![Graph::complete(self.single_param()?)?],
            Family::FiveRing => vec![gen_five_ring(&self.params)?.0],
            Family::F => vec![gen_f()],
            Family::H => vec![gen_h()],
            Family::Blowup => {
                let pattern = self
                    .pattern
                    .as_ref()
                    .ok_or_else(|| GenError::BadParams("blowup needs a pattern".into()))?;
                let pattern = Graph::try_from(pattern)?;
                vec![Graph::blow_up(&pattern, &self.params)?.0]
            }
            Family::RandomClass => gen_random_in_class(
                self.class()?,
                self.single_param()?,
                self.seed,
                self.iters.unwrap_or(100),
                self.stride.unwrap_or(1),
            )?
            .collect(),
            Family::EnumerateClass => enumerate_class(self.class()?, self.single_param()?)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::validate_total;
    use crate::recognize::{is_five_ring, is_k1_join_k1uk3_free, is_p5_free};

    #[test]
    fn f_construction() {
        let f = gen_f();
        assert_eq!((f.n(), f.edge_count()), (10, 25));
        // y_j sees x_j, x_{j-1}, x_{j+2}
        assert_eq!(
            f.neighbors(5).intersection(&VertexSet::full(5)).to_vec(),
            vec![0, 2, 4]
        );
    }

    #[test]
    fn h_construction() {
        let h = gen_h();
        assert_eq!((h.n(), h.edge_count()), (25, 150));
        assert!(is_p5_free(&h).member);
        assert!(is_k1_join_k1uk3_free(&h).member);
        assert!(validate_total(&h, &h_eight_coloring()).is_none());
        let distinct: std::collections::BTreeSet<_> = h_eight_coloring().into_iter().collect();
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn five_ring_examples() {
        assert_eq!(gen_five_ring(&[1; 5]).unwrap().0, Graph::cycle(5).unwrap());
        let (g, _) = gen_five_ring(&[3, 1, 4, 1, 5]).unwrap();
        assert!(is_five_ring(&g).is_some());
        assert!(gen_five_ring(&[1, 1, 0, 1, 1]).is_err());
        assert!(gen_five_ring(&[1, 1, 1, 1]).is_err());
    }

    #[test]
    fn walk_basics() {
        let start: Vec<_> = gen_random_in_class(GraphClass::P5K1uK3Free, 9, 4, 0, 1)
            .unwrap()
            .collect();
        assert_eq!(start.len(), 1);
        assert_eq!(
            start[0],
            Graph::cycle(5)
                .unwrap()
                .disjoint_union(&Graph::empty(4).unwrap())
                .unwrap()
        );
        let a: Vec<_> = gen_random_in_class(GraphClass::P5K1JoinK1uK3Free, 10, 7, 50, 2)
            .unwrap()
            .collect();
        let b: Vec<_> = gen_random_in_class(GraphClass::P5K1JoinK1uK3Free, 10, 7, 50, 2)
            .unwrap()
            .collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 51);
        assert!(a.iter().all(|g| GraphClass::P5K1JoinK1uK3Free.contains(g)));
    }

    #[test]
    fn walk_in_tiny_graphs_terminates() {
        let v: Vec<_> = gen_random_in_class(GraphClass::P5K3Free, 1, 0, 5, 1)
            .unwrap()
            .collect();
        assert_eq!(v.len(), 1);
        let v: Vec<_> = gen_random_in_class(GraphClass::P5K3Free, 3, 0, 5, 1)
            .unwrap()
            .collect();
        assert_eq!(v.len(), 6);
    }

    #[test]
    fn enumeration_small() {
        let k3free = enumerate_class(GraphClass::P5K3Free, 5).unwrap();
        assert!(k3free.contains(&Graph::cycle(5).unwrap()));
        assert!(k3free.iter().all(|g| GraphClass::P5K3Free.contains(g)));
        assert!(enumerate_class(GraphClass::P5K3Free, 9).is_err());
        // labelled graphs on at most 3 vertices: 1 + 1 + 2 + 8, minus K3
        assert_eq!(enumerate_class(GraphClass::P5K3Free, 3).unwrap().len(), 11);
    }

    #[test]
    fn family_specs() {
        let spec: FamilySpec =
            serde_json::from_str(r#"{"family":"five_ring","params":[2,2,2,2,2]}"#).unwrap();
        assert_eq!(spec.generate().unwrap()[0].n(), 10);
        let spec: FamilySpec = serde_json::from_str(r#"{"family":"H"}"#).unwrap();
        assert_eq!(spec.generate().unwrap()[0], gen_h());
        assert_eq!(
            FamilySpec::new(Family::Cycle, vec![5]).generate().unwrap()[0],
            Graph::cycle(5).unwrap()
        );
        assert!(FamilySpec::new(Family::Cycle, vec![]).generate().is_err());
        assert_eq!("five-ring".parse::<Family>().unwrap(), Family::FiveRing);
    }
}
