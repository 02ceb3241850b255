use serde::Serialize;

use crate::graph::{Graph, VertexSet};
use crate::recognize::{is_c5_free, is_k1_join_k1uk3_free, is_p5_free};

use super::section3::find_clique_cutset;
use super::{independent, nonempty, DecomposeError, StructureCheckReport};

/// Partition around an antihole `A = v1..vk` (consecutive vertices non-adjacent).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntiholeDecomposition {
    pub antihole: Vec<usize>,
    /// `S(A)`: vertices complete to `A`.
    pub s_set: VertexSet,
    /// `t_buckets[i - 1] = T_i(A)`.
    pub t_buckets: Vec<VertexSet>,
    /// `N^2(A)`.
    pub n2: VertexSet,
    /// Vertices at distance 3 or more, or unreachable.
    pub beyond: VertexSet,
}

pub fn antihole_decompose(
    g: &Graph,
    antihole: &[usize],
) -> Result<AntiholeDecomposition, DecomposeError> {
    let k = antihole.len();
    if k < 6 {
        return Err(DecomposeError::AntiholeTooShort(k));
    }
    if let Some(&v) = antihole.iter().find(|&&v| v >= g.n()) {
        return Err(DecomposeError::VertexOutOfRange(v));
    }
    for i in 0..k {
        for j in i + 1..k {
            let (a, b) = (antihole[i], antihole[j]);
            let consecutive = j - i == 1 || j - i == k - 1;
            if a == b || g.adj(a, b) == consecutive {
                return Err(DecomposeError::InvalidAntihole(a, b));
            }
        }
    }
    let a: VertexSet = antihole.iter().copied().collect();
    let layers = g.distance_layers(&a);
    let n1 = layers.first().copied().unwrap_or_default();
    let n2 = layers.get(1).copied().unwrap_or_default();
    let mut s_set = VertexSet::new();
    let mut t_buckets = vec![VertexSet::new(); k];
    for x in &n1 {
        if a.is_subset(g.neighbors(x)) {
            s_set.insert(x);
            continue;
        }
        let i = (0..k)
            .find(|&i| g.adj(x, antihole[i]) && !g.adj(x, antihole[(i + k - 1) % k]))
            .expect("a vertex with some but not all neighbours on a cycle has such an index");
        t_buckets[i].insert(x);
    }
    let beyond = g.vertices().difference(&a).difference(&n1).difference(&n2);
    Ok(AntiholeDecomposition {
        antihole: antihole.to_vec(),
        s_set,
        t_buckets,
        n2,
        beyond,
    })
}

/// Claims `3.6.t_independent` and `3.6.n2_empty`, for (P5, C5, K1+(K1∪K3))-free graphs that
/// are connected and have no clique cutset.
pub fn check_lemma_antihole(g: &Graph, ad: &AntiholeDecomposition) -> StructureCheckReport {
    let applicable = is_p5_free(g).member
        && is_c5_free(g).member
        && is_k1_join_k1uk3_free(g).member
        && find_clique_cutset(g).is_none();
    let mut r = StructureCheckReport::default();
    let t = ad.t_buckets.iter().find_map(|ti| independent(g, ti));
    r.record("3.6.t_independent", applicable, t);
    r.record("3.6.n2_empty", applicable, nonempty(&ad.n2)).note =
        Some(format!("k={}", ad.antihole.len()));
    r
}
