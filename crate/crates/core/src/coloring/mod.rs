//! Colouring certificates and the constructive colourings: Sumner's colouring of
//! (P5, K3)-free graphs, the fixed hole-template colourings, and the recursive
//! `2ω - 1` colouring of (P5, K1∪K3)-free graphs.

mod main0;
mod sumner;
mod templates;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decompose::DecomposeError;
use crate::graph::{Graph, VertexSet};

pub use main0::color_p5_k1uk3;
pub use sumner::color_sumner;
pub use templates::{
    coloring_lemma32d, coloring_phi, coloring_phi3, coloring_psi, Lemma32dColoring,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Main0,
    Sumner,
    Psi,
    Phi,
    Phi3,
    Lemma32d,
    Exact,
}

impl std::str::FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        serde_json::from_value(serde_json::Value::String(s.to_lowercase()))
            .map_err(|_| format!("unknown algorithm `{s}`"))
    }
}

/// A colouring of some or all vertices. `colors[v] = None` marks `v` as outside the
/// coloured part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringCertificate {
    pub colors: Vec<Option<usize>>,
    pub num_colors: usize,
    pub algorithm: Algorithm,
    pub valid: bool,
}

/// Relabels colours to `0..k` preserving their order.
fn normalize(colors: &[Option<usize>]) -> Vec<Option<usize>> {
    let mut map = BTreeMap::new();
    for c in colors.iter().flatten() {
        map.insert(*c, 0);
    }
    for (i, slot) in map.values_mut().enumerate() {
        *slot = i;
    }
    colors.iter().map(|c| c.map(|c| map[&c])).collect()
}

impl ColoringCertificate {
    /// Normalised certificate for a colouring of every vertex, with properness checked.
    pub fn from_total(g: &Graph, colors: Vec<usize>, algorithm: Algorithm) -> Self {
        Self::from_partial(g, colors.into_iter().map(Some).collect(), algorithm)
    }

    /// Normalised certificate; `valid` says whether no edge joins two equal colours.
    pub fn from_partial(g: &Graph, colors: Vec<Option<usize>>, algorithm: Algorithm) -> Self {
        assert_eq!(colors.len(), g.n(), "one colour slot per vertex");
        let colors = normalize(&colors);
        let num_colors = colors.iter().flatten().max().map_or(0, |m| m + 1);
        let valid = partial_violation(g, &colors).is_none();
        ColoringCertificate {
            colors,
            num_colors,
            algorithm,
            valid,
        }
    }

    pub fn is_total(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    pub fn colored_vertices(&self) -> Vec<usize> {
        (0..self.colors.len())
            .filter(|&v| self.colors[v].is_some())
            .collect()
    }

    pub fn class(&self, c: usize) -> VertexSet {
        (0..self.colors.len())
            .filter(|&v| self.colors[v] == Some(c))
            .collect()
    }

    /// Colours of a total certificate.
    pub fn total_colors(&self) -> Option<Vec<usize>> {
        self.colors.iter().copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("colouring leaves vertices {uncolored:?} uncoloured")]
    Partial { uncolored: Vec<usize> },
    #[error("colouring has {got} entries for {expected} vertices")]
    SizeMismatch { got: usize, expected: usize },
    #[error("input is not {class}: it contains {forbidden} on {witness:?}")]
    ClassViolation {
        class: String,
        forbidden: String,
        witness: Vec<usize>,
    },
    #[error("structural claim `{claim_id}` failed on {witness:?}")]
    Structural {
        claim_id: String,
        witness: Vec<usize>,
    },
    #[error(transparent)]
    Hole(#[from] DecomposeError),
}

impl ColoringError {
    pub fn structural(claim_id: &str, witness: Vec<usize>) -> Self {
        ColoringError::Structural {
            claim_id: claim_id.to_string(),
            witness,
        }
    }

    pub fn witness(&self) -> Vec<usize> {
        match self {
            ColoringError::Partial { uncolored } => uncolored.clone(),
            ColoringError::ClassViolation { witness, .. }
            | ColoringError::Structural { witness, .. } => witness.clone(),
            ColoringError::SizeMismatch { .. } | ColoringError::Hole(_) => Vec::new(),
        }
    }
}

/// First edge `(u, v)`, `u < v`, in lexicographic order whose coloured ends share a colour.
pub(crate) fn partial_violation(g: &Graph, colors: &[Option<usize>]) -> Option<(usize, usize)> {
    g.edges()
        .into_iter()
        .find(|&(u, v)| colors[u].is_some() && colors[u] == colors[v])
}

/// First monochromatic edge of a total colouring.
pub fn validate_total(g: &Graph, colors: &[usize]) -> Option<(usize, usize)> {
    g.edges().into_iter().find(|&(u, v)| colors[u] == colors[v])
}

/// `Ok(None)` when proper, `Ok(Some(edge))` with the first monochromatic edge otherwise;
/// a colouring with gaps is rejected.
pub fn validate_coloring(
    g: &Graph,
    c: &ColoringCertificate,
) -> Result<Option<(usize, usize)>, ColoringError> {
    if c.colors.len() != g.n() {
        return Err(ColoringError::SizeMismatch {
            got: c.colors.len(),
            expected: g.n(),
        });
    }
    let uncolored: Vec<usize> = (0..g.n()).filter(|&v| c.colors[v].is_none()).collect();
    if !uncolored.is_empty() {
        return Err(ColoringError::Partial { uncolored });
    }
    Ok(partial_violation(g, &c.colors))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation_examples() {
        let c5 = Graph::cycle(5).unwrap();
        let good = ColoringCertificate::from_total(&c5, vec![0, 1, 0, 1, 2], Algorithm::Exact);
        assert_eq!(validate_coloring(&c5, &good), Ok(None));
        assert!(good.valid && good.num_colors == 3);
        let bad = ColoringCertificate::from_total(&c5, vec![0, 1, 0, 1, 0], Algorithm::Exact);
        assert_eq!(validate_coloring(&c5, &bad), Ok(Some((0, 4))));
        assert!(!bad.valid);
        let e = Graph::empty(0).unwrap();
        let none = ColoringCertificate::from_total(&e, vec![], Algorithm::Exact);
        assert_eq!(validate_coloring(&e, &none), Ok(None));
        assert_eq!(none.num_colors, 0);
    }

    #[test]
    fn partial_is_rejected() {
        let p3 = Graph::path(3).unwrap();
        let c =
            ColoringCertificate::from_partial(&p3, vec![Some(0), None, Some(0)], Algorithm::Psi);
        assert!(c.valid);
        assert_eq!(
            validate_coloring(&p3, &c),
            Err(ColoringError::Partial { uncolored: vec![1] })
        );
    }

    #[test]
    fn normalization_and_json() {
        let p3 = Graph::path(3).unwrap();
        let c =
            ColoringCertificate::from_partial(&p3, vec![Some(7), Some(3), None], Algorithm::Main0);
        assert_eq!(c.colors, vec![Some(1), Some(0), None]);
        assert_eq!(c.num_colors, 2);
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"colors": [1, 0, null], "num_colors": 2, "algorithm": "main0", "valid": true})
        );
        assert_eq!("Phi3".parse::<Algorithm>().unwrap(), Algorithm::Phi3);
    }
}
