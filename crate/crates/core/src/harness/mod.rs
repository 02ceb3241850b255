//! Verification campaigns: instance checks, replayable findings and their JSONL store.

mod campaign;
mod checks;
mod verify;

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::generators::{enumerate_class, gen_random_in_class, FamilySpec, GenError};
use crate::graph::Graph;
use crate::io::JsonGraph;
use crate::recognize::GraphClass;

pub use campaign::{
    run_campaign, CampaignConfig, CampaignError, CampaignResult, CampaignSummary, CheckStats,
    Instance, Source, WalkSpec,
};
pub use checks::{
    default_checks, CheckContext, CheckOutcome, HoleStructureCheck, InstanceCheck, Issue,
    Main0BoundCheck, Main1BoundCheck, RecognizerOracleCheck, Section3Check, SumnerCheck,
};
pub use verify::{verify_bound, Bound, VerifyError, VerifyMode, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FindingKind {
    BoundViolation,
    LemmaViolation,
    StructuralAssumptionFailure,
    OracleDisagreement,
}

/// How to rebuild the graph of a finding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum ReplaySpec {
    /// State `index` of the class walk (0 is the start graph).
    Walk {
        class: GraphClass,
        n: usize,
        seed: u64,
        stride: usize,
        index: usize,
    },
    /// Graph `index` of the class enumeration up to `max_n` vertices.
    Enumerate {
        class: GraphClass,
        max_n: usize,
        index: usize,
    },
    /// Graph `index` generated by a family spec.
    Family { spec: FamilySpec, index: usize },
    /// A graph read from a file.
    File { path: String },
}

impl ReplaySpec {
    /// The graph this spec denotes; `None` for file inputs, whose graph is stored in the
    /// finding itself.
    pub fn regenerate(&self) -> Result<Option<Graph>, GenError> {
        Ok(match self {
            ReplaySpec::Walk {
                class,
                n,
                seed,
                stride,
                index,
            } => gen_random_in_class(*class, *n, *seed, *index, *stride)?.nth(*index),
            ReplaySpec::Enumerate {
                class,
                max_n,
                index,
            } => enumerate_class(*class, *max_n)?.into_iter().nth(*index),
            ReplaySpec::Family { spec, index } => spec.generate()?.into_iter().nth(*index),
            ReplaySpec::File { .. } => None,
        })
    }
}

/// One claim failure on one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub kind: FindingKind,
    pub graph: JsonGraph,
    pub claim_id: String,
    pub witness: Vec<usize>,
    pub replay: ReplaySpec,
    pub timestamp: String,
    /// Name of the check that produced it.
    #[serde(default)]
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Finding {
    pub fn new(check: &str, issue: Issue, g: &Graph, replay: ReplaySpec) -> Self {
        Finding {
            kind: issue.kind,
            graph: JsonGraph::from(g),
            claim_id: issue.claim_id,
            witness: issue.witness,
            replay,
            timestamp: chrono::Utc::now().to_rfc3339(),
            check: check.to_string(),
            detail: issue.detail,
        }
    }

    /// Re-runs the producing check on the regenerated graph; true when the graph is
    /// identical and the same claim fails with the same kind again.
    pub fn replays(&self, checks: &[Box<dyn InstanceCheck>], ctx: &CheckContext) -> bool {
        let Ok(stored) = Graph::try_from(&self.graph) else {
            return false;
        };
        let g = match self.replay.regenerate() {
            Ok(Some(g)) => g,
            Ok(None) => stored.clone(),
            Err(_) => return false,
        };
        if g != stored {
            return false;
        }
        let Some(check) = checks.iter().find(|c| c.name() == self.check) else {
            return false;
        };
        check
            .run(&g, ctx)
            .issues
            .iter()
            .any(|i| i.claim_id == self.claim_id && i.kind == self.kind)
    }
}

/// Appends findings, one JSON object per line.
pub fn append_findings(path: &Path, findings: &[Finding]) -> std::io::Result<()> {
    if findings.is_empty() {
        return Ok(());
    }
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut buf = Vec::new();
    for f in findings {
        serde_json::to_writer(&mut buf, f)?;
        buf.push(b'\n');
    }
    file.write_all(&buf)?;
    file.flush()
}

pub fn read_findings(path: &Path) -> std::io::Result<Vec<Finding>> {
    let reader = BufReader::new(std::fs::File::open(path)?);
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(std::io::Error::other)?);
    }
    Ok(out)
}
