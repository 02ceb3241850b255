//! Colourings of the region around a 5-hole read off fixed class tables: each class is a
//! union of trace buckets plus some hole vertices.

use crate::decompose::{HolePartition, Trace};
use crate::graph::{Graph, VertexSet};

use super::{partial_violation, Algorithm, ColoringCertificate, ColoringError};

struct Class {
    hole: Vec<isize>,
    buckets: Vec<Trace>,
}

fn class(hole: &[isize], buckets: &[&[isize]]) -> Class {
    Class {
        hole: hole.to_vec(),
        buckets: buckets.iter().map(|t| Trace::of(t)).collect(),
    }
}

fn psi_classes() -> Vec<Class> {
    vec![
        class(&[3], &[&[2, 4], &[1, 2, 4]]),
        class(&[4], &[&[3, 5], &[2, 3, 5]]),
        class(&[2, 5], &[&[1, 4], &[1, 3, 4]]),
        class(&[1], &[&[2, 5], &[2, 4, 5]]),
        class(&[], &[&[1, 3], &[1, 3, 5]]),
    ]
}

fn phi_classes() -> Vec<Class> {
    vec![
        class(&[3, 5], &[&[1, 4], &[1, 2, 4], &[2, 4]]),
        class(&[1, 4], &[&[2, 5], &[2, 3, 5], &[3, 5]]),
        class(&[2], &[&[1, 3], &[1, 3, 4], &[1, 3, 5]]),
        class(&[], &[&[2, 4, 5]]),
    ]
}

fn phi3_classes() -> Vec<Class> {
    (1..=5)
        .map(|i| {
            class(
                &[i],
                &[
                    &[i + 2, i + 4],
                    &[i + 1, i + 2, i + 4],
                    &[i + 1, i + 2, i + 3, i + 4],
                ],
            )
        })
        .collect()
}

fn lemma32d_classes() -> Vec<Class> {
    (1..=5)
        .map(|i| {
            class(
                &[i + 3],
                &[
                    &[i, i + 2],
                    &[i - 1, i, i + 1],
                    &[i - 1, i, i + 2],
                    &[i - 1, i, i + 1, i + 2],
                ],
            )
        })
        .collect()
}

/// Colours `domain` by `classes`; every domain vertex must be covered and the result
/// proper on the domain.
fn apply(
    g: &Graph,
    hp: &HolePartition,
    classes: &[Class],
    domain: &VertexSet,
    algorithm: Algorithm,
    claim: &str,
) -> Result<ColoringCertificate, ColoringError> {
    let mut colors = vec![None; g.n()];
    for (c, cl) in classes.iter().enumerate() {
        let mut members: VertexSet = cl.hole.iter().map(|&i| hp.v(i)).collect();
        for &t in &cl.buckets {
            members = members.union(&hp.bucket_by_trace(t));
        }
        for v in members.intersection(domain).iter() {
            colors[v] = Some(c);
        }
    }
    if let Some(v) = domain.iter().find(|&v| colors[v].is_none()) {
        return Err(ColoringError::structural(
            &format!("{claim}.coverage"),
            vec![v],
        ));
    }
    if let Some((u, v)) = partial_violation(g, &colors) {
        return Err(ColoringError::structural(
            &format!("{claim}.proper"),
            vec![u, v],
        ));
    }
    let used: std::collections::BTreeSet<usize> = colors.iter().flatten().copied().collect();
    Ok(ColoringCertificate {
        colors,
        num_colors: used.len(),
        algorithm,
        valid: true,
    })
}

/// `C ∪ N(C) - N_{1..5}(C)`.
fn near_domain(hp: &HolePartition) -> VertexSet {
    hp.hole_set().union(&hp.n1()).difference(&hp.full())
}

/// The 5-class colouring ψ of `G[C ∪ N(C)] - N_{1..5}(C)`.
///
/// In all template colourings colour `c` is class `c + 1` of the table, even when an earlier
/// class is empty, so `num_colors` counts the nonempty classes.
pub fn coloring_psi(g: &Graph, hp: &HolePartition) -> Result<ColoringCertificate, ColoringError> {
    apply(
        g,
        hp,
        &psi_classes(),
        &near_domain(hp),
        Algorithm::Psi,
        "psi",
    )
}

/// The 4-class colouring φ of `G[C ∪ N(C)] - N_{1..5}(C)`, meant for non-dominating holes.
pub fn coloring_phi(g: &Graph, hp: &HolePartition) -> Result<ColoringCertificate, ColoringError> {
    apply(
        g,
        hp,
        &phi_classes(),
        &near_domain(hp),
        Algorithm::Phi,
        "phi",
    )
}

/// The 5-class colouring of `G - N_{1..5}(C) - N^2(C) - N^3(C)` with classes
/// `α_i = {v_i} ∪ N_{i+2,i+4} ∪ N_{i+1,i+2,i+4} ∪ N_{i+1,i+2,i+3,i+4}`.
pub fn coloring_phi3(g: &Graph, hp: &HolePartition) -> Result<ColoringCertificate, ColoringError> {
    let domain = g
        .vertices()
        .difference(&hp.full())
        .difference(&hp.layer(2))
        .difference(&hp.layer(3));
    apply(g, hp, &phi3_classes(), &domain, Algorithm::Phi3, "phi3")
}

/// Result of [`coloring_lemma32d`]: the colouring is produced regardless, and
/// `hypothesis_holds` says whether `G[N_{1..5}(C)]` has a component with an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma32dColoring {
    pub certificate: ColoringCertificate,
    pub hypothesis_holds: bool,
}

/// The 5-class colouring of `G - N_{1..5}(C) - M(C)` with colour `i` on
/// `{v_{i+3}} ∪ N_{i,i+2} ∪ N_{i-1,i,i+1} ∪ N_{i-1,i,i+2} ∪ N_{i-1,i,i+1,i+2}`.
pub fn coloring_lemma32d(g: &Graph, hp: &HolePartition) -> Result<Lemma32dColoring, ColoringError> {
    let full = hp.full();
    let hypothesis_holds = g.edge_within(&full).is_some();
    let domain = g.vertices().difference(&full).difference(&hp.m_set);
    let certificate = apply(
        g,
        hp,
        &lemma32d_classes(),
        &domain,
        Algorithm::Lemma32d,
        "lemma32d",
    )?;
    Ok(Lemma32dColoring {
        certificate,
        hypothesis_holds,
    })
}

/// ψ-based 4-colouring of `C ∪ N(C) - N_{1..5}(C) - N_{1,3,5}(C)`: ψ with `N_{1,3}`
/// moved to class 3.
pub(crate) fn psi_recolored(
    g: &Graph,
    hp: &HolePartition,
) -> Result<Vec<Option<usize>>, ColoringError> {
    let mut classes = psi_classes();
    classes[2].buckets.push(Trace::of(&[1, 3]));
    classes[4].buckets.clear();
    let domain = near_domain(hp).difference(&hp.bucket(&[1, 3, 5]));
    Ok(apply(g, hp, &classes, &domain, Algorithm::Psi, "main0.recolor")?.colors)
}

/// φ classes 1-3 on `C ∪ N(C) - N_{1..5}(C) - N_{2,4,5}(C)`.
pub(crate) fn phi_without_class4(
    g: &Graph,
    hp: &HolePartition,
) -> Result<Vec<Option<usize>>, ColoringError> {
    let mut classes = phi_classes();
    classes.pop();
    let domain = near_domain(hp).difference(&hp.bucket(&[2, 4, 5]));
    Ok(apply(g, hp, &classes, &domain, Algorithm::Phi, "phi")?.colors)
}
