use serde::{Deserialize, Serialize};

use crate::coloring::{color_p5_k1uk3, ColoringError};
use crate::graph::Graph;
use crate::oracles::{chromatic_exact, omega_exact, OracleConfig, OracleError};
use crate::recognize::GraphClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// `χ ≤ 2ω - 1` on (P5, K1∪K3)-free graphs.
    TwoOmegaMinusOne,
    /// `χ ≤ max{2ω, 15}` on (P5, K1+(K1∪K3))-free graphs.
    #[serde(rename = "max_two_omega_15")]
    MaxTwoOmega15,
}

impl Bound {
    pub fn class(self) -> GraphClass {
        match self {
            Bound::TwoOmegaMinusOne => GraphClass::P5K1uK3Free,
            Bound::MaxTwoOmega15 => GraphClass::P5K1JoinK1uK3Free,
        }
    }

    pub fn value(self, omega: usize) -> usize {
        match self {
            Bound::TwoOmegaMinusOne => (2 * omega).saturating_sub(1),
            Bound::MaxTwoOmega15 => (2 * omega).max(15),
        }
    }
}

impl std::str::FromStr for Bound {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| format!("unknown bound `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    Constructive,
    Oracle,
    Both,
}

impl std::str::FromStr for VerifyMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| format!("unknown mode `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub bound: Bound,
    pub omega: usize,
    pub bound_value: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_constructive: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_exact: Option<usize>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("graph is not {class}: induced {forbidden} on {witness:?}")]
    ClassMismatch {
        class: String,
        forbidden: String,
        witness: Vec<usize>,
    },
    #[error("no constructive colouring for {0:?}; use the oracle mode")]
    NoConstructive(Bound),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Computes ω exactly and χ constructively and/or exactly, then checks the bound on every
/// computed χ. An exact χ above the oracle cap is skipped with a note in `Both` mode.
pub fn verify_bound(
    g: &Graph,
    bound: Bound,
    mode: VerifyMode,
    cfg: &OracleConfig,
) -> Result<VerifyReport, VerifyError> {
    let class = bound.class();
    if let Some((f, w)) = class.violation(g) {
        return Err(VerifyError::ClassMismatch {
            class: class.name().to_string(),
            forbidden: f.name().to_string(),
            witness: w.to_vec(),
        });
    }
    let omega = omega_exact(g, cfg)?.value;
    let bound_value = bound.value(omega);
    let mut note = None;

    let chi_constructive = match (mode, bound) {
        (VerifyMode::Oracle, _) => None,
        (_, Bound::TwoOmegaMinusOne) => Some(color_p5_k1uk3(g)?.num_colors),
        (VerifyMode::Constructive, b) => return Err(VerifyError::NoConstructive(b)),
        (VerifyMode::Both, _) => None,
    };
    let chi_exact = match mode {
        VerifyMode::Constructive => None,
        VerifyMode::Oracle => Some(chromatic_exact(g, cfg)?.value),
        VerifyMode::Both => match chromatic_exact(g, cfg) {
            Ok(r) => Some(r.value),
            Err(e @ OracleError::TooLarge { .. }) if chi_constructive.is_some() => {
                note = Some(format!("oracle-skipped: {e}"));
                None
            }
            Err(e) => return Err(e.into()),
        },
    };
    let pass = chi_constructive
        .iter()
        .chain(&chi_exact)
        .all(|&c| c <= bound_value);
    Ok(VerifyReport {
        bound,
        omega,
        bound_value,
        chi_constructive,
        chi_exact,
        pass,
        note,
    })
}
