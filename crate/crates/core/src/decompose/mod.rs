//! Partition of a graph around a 5-hole `C = v1..v5` by neighbourhood trace, plus checkers
//! for the structural lemmas stated in terms of that partition.

mod antihole;
mod checks;
mod section3;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::recognize::Hole;

pub use antihole::{antihole_decompose, check_lemma_antihole, AntiholeDecomposition};
pub use checks::{check_lemma_2_1, check_lemma_p5free, check_theorem_main2};
pub use section3::{check_section3_lemmas, find_clique_cutset, split_into_two_triangle_free};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("vertices {0} and {1} break the induced 5-cycle")]
    InvalidHole(usize, usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} lies on the hole")]
    OnHole(usize),
    #[error("antihole needs at least 6 vertices, got {0}")]
    AntiholeTooShort(usize),
    #[error("vertices {0} and {1} break the antihole")]
    InvalidAntihole(usize, usize),
}

/// Subset of the hole indices `{1..5}`, bit `i-1` standing for `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Trace(u8);

impl Trace {
    pub const FULL: Trace = Trace(0b11111);

    /// Trace from hole indices taken mod 5 with representatives `1..5`.
    pub fn of(indices: &[isize]) -> Trace {
        Trace(
            indices
                .iter()
                .fold(0, |m, &i| m | 1 << (i - 1).rem_euclid(5)),
        )
    }

    pub fn from_mask(mask: u8) -> Trace {
        Trace(mask & 0b11111)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn contains(self, i: isize) -> bool {
        self.0 >> (i - 1).rem_euclid(5) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn indices(self) -> Vec<usize> {
        (1..=5).filter(|&i| self.0 >> (i - 1) & 1 == 1).collect()
    }
}

impl fmt::Debug for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.indices().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

impl Serialize for Trace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.indices().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Trace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(bad) = v.iter().find(|&&i| !(1..=5).contains(&i)) {
            return Err(serde::de::Error::custom(format!(
                "trace index {bad} outside 1..5"
            )));
        }
        Ok(Trace::of(
            &v.iter().map(|&i| i as isize).collect::<Vec<_>>(),
        ))
    }
}

/// First pair of hole vertices whose adjacency disagrees with a 5-cycle, or a repeated or
/// out-of-range vertex.
pub fn validate_hole(g: &Graph, hole: &Hole) -> Result<(), DecomposeError> {
    if let Some(&v) = hole.iter().find(|&&v| v >= g.n()) {
        return Err(DecomposeError::VertexOutOfRange(v));
    }
    for i in 0..5 {
        for j in i + 1..5 {
            let (a, b) = (hole[i], hole[j]);
            if a == b || g.adj(a, b) != (j - i == 1 || j - i == 4) {
                return Err(DecomposeError::InvalidHole(a, b));
            }
        }
    }
    Ok(())
}

pub fn neighborhood_trace(g: &Graph, hole: &Hole, v: usize) -> Result<Trace, DecomposeError> {
    validate_hole(g, hole)?;
    if v >= g.n() {
        return Err(DecomposeError::VertexOutOfRange(v));
    }
    if hole.contains(&v) {
        return Err(DecomposeError::OnHole(v));
    }
    Ok(trace_unchecked(g, hole, v))
}

fn trace_unchecked(g: &Graph, hole: &Hole, v: usize) -> Trace {
    Trace::from_mask(
        (0..5)
            .filter(|&i| g.adj(v, hole[i]))
            .fold(0, |m, i| m | 1 << i),
    )
}

/// Everything about `G` relative to one 5-hole: trace buckets `N_T(C)`, distance layers
/// `N^i(C)` and `M(C)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolePartition {
    pub hole: Hole,
    buckets: [VertexSet; 32],
    /// `layers[i - 1] = N^i(C)`.
    pub layers: Vec<VertexSet>,
    pub m_set: VertexSet,
}

pub fn partition_by_hole(g: &Graph, hole: &Hole) -> Result<HolePartition, DecomposeError> {
    validate_hole(g, hole)?;
    let c: VertexSet = hole.iter().copied().collect();
    let layers = g.distance_layers(&c);
    let n1 = layers.first().copied().unwrap_or_default();
    let mut buckets = [VertexSet::new(); 32];
    for v in &n1 {
        buckets[trace_unchecked(g, hole, v).mask() as usize].insert(v);
    }
    Ok(HolePartition {
        hole: *hole,
        buckets,
        layers,
        m_set: g.vertices().difference(&c).difference(&n1),
    })
}

impl HolePartition {
    /// `v_i` with `i` taken mod 5.
    pub fn v(&self, i: isize) -> usize {
        self.hole[(i - 1).rem_euclid(5) as usize]
    }

    pub fn hole_set(&self) -> VertexSet {
        self.hole.iter().copied().collect()
    }

    pub fn bucket(&self, indices: &[isize]) -> VertexSet {
        self.buckets[Trace::of(indices).mask() as usize]
    }

    pub fn bucket_by_trace(&self, t: Trace) -> VertexSet {
        self.buckets[t.mask() as usize]
    }

    /// Nonempty buckets in increasing trace order.
    pub fn nonempty_buckets(&self) -> Vec<(Trace, VertexSet)> {
        (0..32u8)
            .map(Trace::from_mask)
            .map(|t| (t, self.bucket_by_trace(t)))
            .filter(|(_, s)| !s.is_empty())
            .collect()
    }

    pub fn trace_of(&self, v: usize) -> Option<Trace> {
        (0..32u8)
            .map(Trace::from_mask)
            .find(|t| self.buckets[t.mask() as usize].contains(v))
    }

    /// `N^i(C)`; empty beyond the last layer and for `i = 0`.
    pub fn layer(&self, i: usize) -> VertexSet {
        if i == 0 {
            return VertexSet::new();
        }
        self.layers.get(i - 1).copied().unwrap_or_default()
    }

    pub fn n1(&self) -> VertexSet {
        self.layer(1)
    }

    fn rotations(&self, pattern: &[isize]) -> VertexSet {
        (1..=5).fold(VertexSet::new(), |acc, i| {
            let shifted: Vec<isize> = pattern.iter().map(|d| i + d).collect();
            acc.union(&self.bucket(&shifted))
        })
    }

    /// `N_{1,2,3,4,5}(C)`.
    pub fn full(&self) -> VertexSet {
        self.bucket_by_trace(Trace::FULL)
    }

    /// 𝒩^(2) = ∪ N_{i,i+2}.
    pub fn script_n2(&self) -> VertexSet {
        self.rotations(&[0, 2])
    }

    /// 𝒩^(3,1) = ∪ N_{i,i+1,i+2}.
    pub fn script_n31(&self) -> VertexSet {
        self.rotations(&[0, 1, 2])
    }

    /// 𝒩^(3,2) = ∪ N_{i,i+1,i+3}.
    pub fn script_n32(&self) -> VertexSet {
        self.rotations(&[0, 1, 3])
    }

    /// 𝒩^(3) = 𝒩^(3,1) ∪ 𝒩^(3,2).
    pub fn script_n3(&self) -> VertexSet {
        self.script_n31().union(&self.script_n32())
    }

    /// 𝒩^(4) = ∪ N_{i,i+1,i+2,i+3}.
    pub fn script_n4(&self) -> VertexSet {
        self.rotations(&[0, 1, 2, 3])
    }

    /// Serializable snapshot with every named set.
    pub fn dump(&self) -> PartitionDump {
        PartitionDump {
            hole: self.hole,
            buckets: self
                .nonempty_buckets()
                .into_iter()
                .map(|(trace, vertices)| BucketDump { trace, vertices })
                .collect(),
            layers: self.layers.clone(),
            m_set: self.m_set,
            n2_script: self.script_n2(),
            n31_script: self.script_n31(),
            n32_script: self.script_n32(),
            n4_script: self.script_n4(),
            full: self.full(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BucketDump {
    pub trace: Trace,
    pub vertices: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDump {
    pub hole: Hole,
    pub buckets: Vec<BucketDump>,
    pub layers: Vec<VertexSet>,
    pub m_set: VertexSet,
    pub n2_script: VertexSet,
    pub n31_script: VertexSet,
    pub n32_script: VertexSet,
    pub n4_script: VertexSet,
    pub full: VertexSet,
}

/// Outcome of one claim on one input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub claim_id: String,
    pub hypothesis_applicable: bool,
    pub pass: bool,
    pub witness_vertices: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StructureCheckReport {
    pub checks: Vec<CheckResult>,
}

impl StructureCheckReport {
    /// Records a claim; `refutation` is `None` when it holds, else the witness.
    pub fn record(
        &mut self,
        claim_id: &str,
        applicable: bool,
        refutation: Option<Vec<usize>>,
    ) -> &mut CheckResult {
        self.checks.push(CheckResult {
            claim_id: claim_id.to_string(),
            hypothesis_applicable: applicable,
            pass: refutation.is_none(),
            witness_vertices: refutation.unwrap_or_default(),
            note: None,
        });
        self.checks.last_mut().unwrap()
    }

    pub fn get(&self, claim_id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.claim_id == claim_id)
    }

    /// Applicable claims that failed.
    pub fn violations(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks
            .iter()
            .filter(|c| c.hypothesis_applicable && !c.pass)
    }

    pub fn is_clean(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn merge(&mut self, other: StructureCheckReport) {
        self.checks.extend(other.checks);
    }
}

// Refutation helpers shared by the checkers: `None` means the property holds.

fn nonempty(s: &VertexSet) -> Option<Vec<usize>> {
    s.first().map(|v| vec![v])
}

fn anticomplete(g: &Graph, a: &VertexSet, b: &VertexSet) -> Option<Vec<usize>> {
    g.edge_between(a, b).map(|(u, v)| vec![u, v])
}

fn complete(g: &Graph, a: &VertexSet, b: &VertexSet) -> Option<Vec<usize>> {
    g.missing_edge_between(a, b).map(|(u, v)| vec![u, v])
}

fn independent(g: &Graph, s: &VertexSet) -> Option<Vec<usize>> {
    g.edge_within(s).map(|(u, v)| vec![u, v])
}

/// A triangle inside `s`.
fn triangle_in(g: &Graph, s: &VertexSet) -> Option<Vec<usize>> {
    for a in s {
        let na = g.neighbors(a).intersection(s);
        for b in na.iter().filter(|&b| b > a) {
            if let Some(c) = na.intersection(g.neighbors(b)).iter().find(|&c| c > b) {
                return Some(vec![a, b, c]);
            }
        }
    }
    None
}

/// `x` is complete or anticomplete to `b`; otherwise `[x, adjacent, non-adjacent]`.
fn split_by(g: &Graph, x: usize, b: &VertexSet) -> Option<Vec<usize>> {
    let hit = g.neighbors(x).intersection(b);
    let miss = b.difference(g.neighbors(x));
    match (hit.first(), miss.first()) {
        (Some(h), Some(m)) => Some(vec![x, h, m]),
        _ => None,
    }
}

/// The 5-ring bags `{v_j} ∪ N_{j-1,j+1}` of `C ∪ 𝒩^(2)`.
pub(crate) fn ring_bags(hp: &HolePartition) -> [VertexSet; 5] {
    std::array::from_fn(|k| {
        let j = k as isize + 1;
        let mut bag = hp.bucket(&[j - 1, j + 1]);
        bag.insert(hp.v(j));
        bag
    })
}

/// First pair breaking the 5-ring structure of the given cyclic bags.
pub(crate) fn ring_violation(g: &Graph, bags: &[VertexSet; 5]) -> Option<Vec<usize>> {
    (0..5).find_map(|j| {
        independent(g, &bags[j])
            .or_else(|| complete(g, &bags[j], &bags[(j + 1) % 5]))
            .or_else(|| anticomplete(g, &bags[j], &bags[(j + 2) % 5]))
    })
}
