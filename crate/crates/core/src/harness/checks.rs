use itertools::Itertools;

use crate::coloring::{color_p5_k1uk3, color_sumner, ColoringError};
use crate::decompose::{
    antihole_decompose, check_lemma_2_1, check_lemma_antihole, check_lemma_p5free,
    check_section3_lemmas, check_theorem_main2, partition_by_hole, StructureCheckReport,
};
use crate::graph::{Graph, VertexSet};
use crate::iso::is_isomorphic;
use crate::oracles::{
    alpha_exact, chromatic_exact, contains_induced_bruteforce, omega_exact, OracleConfig,
};
use crate::recognize::{
    find_hole, five_holes, is_bipartite, is_five_ring, Bipartition, Forbidden, GraphClass,
};

use super::FindingKind;

/// Size caps shared by all checks of a campaign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CheckContext {
    /// Exact χ only up to this many vertices.
    pub max_n_chi: usize,
    /// Exact ω only up to this many vertices.
    pub max_n_omega: usize,
    /// Brute-force recognizer cross-check only up to this many vertices.
    pub max_n_bruteforce: usize,
    /// Holes examined per graph by the structural checks.
    pub max_holes: usize,
}

impl Default for CheckContext {
    fn default() -> Self {
        CheckContext {
            max_n_chi: 14,
            max_n_omega: 32,
            max_n_bruteforce: 8,
            max_holes: 16,
        }
    }
}

impl CheckContext {
    fn oracle(&self) -> OracleConfig {
        OracleConfig {
            max_n_omega: self.max_n_omega,
            max_n_chi: self.max_n_chi,
            node_budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub kind: FindingKind,
    pub claim_id: String,
    pub witness: Vec<usize>,
    pub detail: Option<String>,
}

impl Issue {
    pub fn new(kind: FindingKind, claim_id: &str, witness: Vec<usize>) -> Self {
        Issue {
            kind,
            claim_id: claim_id.to_string(),
            witness,
            detail: None,
        }
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckOutcome {
    /// Some claim of the check had its hypothesis satisfied.
    pub applicable: bool,
    /// An oracle was skipped because of a size cap.
    pub oracle_skipped: bool,
    pub issues: Vec<Issue>,
}

impl CheckOutcome {
    fn absorb(&mut self, report: &StructureCheckReport) {
        self.applicable |= report.checks.iter().any(|c| c.hypothesis_applicable);
        self.issues.extend(report.violations().map(|c| {
            let issue = Issue::new(
                FindingKind::LemmaViolation,
                &c.claim_id,
                c.witness_vertices.clone(),
            );
            match &c.note {
                Some(n) => issue.with_detail(n.clone()),
                None => issue,
            }
        }));
    }
}

/// One verification applied to every campaign instance.
pub trait InstanceCheck: Send + Sync {
    fn name(&self) -> &str;
    fn run(&self, g: &Graph, ctx: &CheckContext) -> CheckOutcome;
}

/// Fast recognizers and clique oracles against brute force on small graphs.
pub struct RecognizerOracleCheck;

fn brute_clique_number(g: &Graph) -> usize {
    (0..=g.n())
        .rev()
        .find(|&k| {
            (0..g.n())
                .combinations(k)
                .any(|s| g.is_clique(&s.into_iter().collect()))
        })
        .unwrap_or(0)
}

impl InstanceCheck for RecognizerOracleCheck {
    fn name(&self) -> &str {
        "recognizer_oracle"
    }

    fn run(&self, g: &Graph, ctx: &CheckContext) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        if g.n() > ctx.max_n_bruteforce {
            out.oracle_skipped = true;
            return out;
        }
        out.applicable = true;
        let disagree = |id: &str, w: Vec<usize>| Issue::new(FindingKind::OracleDisagreement, id, w);
        for f in [
            Forbidden::P5,
            Forbidden::C5,
            Forbidden::K3,
            Forbidden::K1UnionK3,
            Forbidden::K1JoinK1UnionK3,
        ] {
            let fast = f.find(g);
            let slow = contains_induced_bruteforce(g, &f.graph()).expect("patterns are small");
            let id = format!("recognizer.{}", f.name());
            if fast.is_some() != slow.is_some() {
                let w = fast.or(slow).map(|s| s.to_vec()).unwrap_or_default();
                out.issues.push(disagree(&id, w));
            } else if let Some(w) = fast {
                if !is_isomorphic(&g.induced_by_list(&w.to_vec()), &f.graph()) {
                    out.issues
                        .push(disagree(&format!("{id}.witness"), w.to_vec()));
                }
            }
        }
        let cfg = ctx.oracle();
        let omega = omega_exact(g, &cfg).expect("small graph").value;
        if omega != brute_clique_number(g) {
            out.issues.push(disagree("oracle.omega", Vec::new()));
        }
        let alpha = alpha_exact(g, &cfg).expect("small graph");
        let indep: VertexSet = *alpha.vertex_set().unwrap();
        if alpha.value != brute_clique_number(&g.complement()) || !g.is_independent(&indep) {
            out.issues.push(disagree("oracle.alpha", indep.to_vec()));
        }
        out
    }
}

fn holes_to_check(g: &Graph, ctx: &CheckContext) -> Vec<[usize; 5]> {
    let mut holes = five_holes(g);
    holes.truncate(ctx.max_holes);
    holes
}

/// Lemma "P5free", Lemma 2.1 and Theorem main2 on every examined hole.
pub struct HoleStructureCheck;

impl InstanceCheck for HoleStructureCheck {
    fn name(&self) -> &str {
        "hole_structure"
    }

    fn run(&self, g: &Graph, ctx: &CheckContext) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        for hole in holes_to_check(g, ctx) {
            let hp = partition_by_hole(g, &hole).expect("enumerated holes are valid");
            out.absorb(&check_lemma_p5free(g, &hp));
            out.absorb(&check_lemma_2_1(g, &hp));
            out.absorb(&check_theorem_main2(g, &hole).expect("valid hole"));
        }
        out
    }
}

/// The hole lemmas for (P5, K1+(K1∪K3))-free graphs and the antihole lemma.
pub struct Section3Check;

/// Holes examined per graph by [`Section3Check`]; each runs an exact χ.
const SECTION3_HOLES: usize = 4;

impl InstanceCheck for Section3Check {
    fn name(&self) -> &str {
        "section3"
    }

    fn run(&self, g: &Graph, ctx: &CheckContext) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        for hole in holes_to_check(g, ctx).into_iter().take(SECTION3_HOLES) {
            let hp = partition_by_hole(g, &hole).expect("enumerated holes are valid");
            out.absorb(&check_section3_lemmas(g, &hp));
        }
        if let Some(a) = find_hole(&g.complement(), 6, None) {
            let ad = antihole_decompose(g, &a).expect("holes of the complement are antiholes");
            out.absorb(&check_lemma_antihole(g, &ad));
        }
        out
    }
}

fn structural_issue(e: ColoringError) -> Issue {
    match e {
        ColoringError::Structural { claim_id, witness } => {
            Issue::new(FindingKind::StructuralAssumptionFailure, &claim_id, witness)
        }
        other => Issue::new(
            FindingKind::StructuralAssumptionFailure,
            "coloring",
            other.witness(),
        )
        .with_detail(other.to_string()),
    }
}

/// The constructive `2ω - 1` colouring, its budget, and the sandwich with exact χ.
pub struct Main0BoundCheck;

impl InstanceCheck for Main0BoundCheck {
    fn name(&self) -> &str {
        "main0_bound"
    }

    fn run(&self, g: &Graph, ctx: &CheckContext) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        if !GraphClass::P5K1uK3Free.contains(g) {
            return out;
        }
        out.applicable = true;
        let cert = match color_p5_k1uk3(g) {
            Ok(c) => c,
            Err(e) => {
                out.issues.push(structural_issue(e));
                return out;
            }
        };
        let cfg = ctx.oracle();
        let omega = match omega_exact(g, &cfg) {
            Ok(r) => r.value,
            Err(_) => {
                out.oracle_skipped = true;
                return out;
            }
        };
        let budget = (2 * omega).saturating_sub(1);
        if !cert.valid || cert.num_colors > budget {
            out.issues.push(
                Issue::new(
                    FindingKind::BoundViolation,
                    "main0.constructive",
                    Vec::new(),
                )
                .with_detail(format!("colors={} omega={omega}", cert.num_colors)),
            );
        }
        match chromatic_exact(g, &cfg) {
            Ok(r) => {
                if r.value > budget {
                    out.issues.push(
                        Issue::new(FindingKind::BoundViolation, "main0.exact", Vec::new())
                            .with_detail(format!("chi={} omega={omega}", r.value)),
                    );
                }
                if r.value > cert.num_colors {
                    out.issues.push(
                        Issue::new(
                            FindingKind::OracleDisagreement,
                            "main0.sandwich",
                            Vec::new(),
                        )
                        .with_detail(format!("chi={} constructive={}", r.value, cert.num_colors)),
                    );
                }
            }
            Err(_) => out.oracle_skipped = true,
        }
        out
    }
}

/// `χ ≤ max{2ω, 15}` by the exact oracle.
pub struct Main1BoundCheck;

impl InstanceCheck for Main1BoundCheck {
    fn name(&self) -> &str {
        "main1_bound"
    }

    fn run(&self, g: &Graph, ctx: &CheckContext) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        if !GraphClass::P5K1JoinK1uK3Free.contains(g) {
            return out;
        }
        let cfg = ctx.oracle();
        let (Ok(omega), Ok(chi)) = (omega_exact(g, &cfg), chromatic_exact(g, &cfg)) else {
            out.oracle_skipped = true;
            return out;
        };
        out.applicable = true;
        let bound = (2 * omega.value).max(15);
        if chi.value > bound {
            out.issues.push(
                Issue::new(FindingKind::BoundViolation, "main1.exact", Vec::new())
                    .with_detail(format!("chi={} omega={}", chi.value, omega.value)),
            );
        }
        out
    }
}

/// Connected (P5, K3)-free graphs are bipartite or 5-rings, and take at most 3 colours.
pub struct SumnerCheck;

impl InstanceCheck for SumnerCheck {
    fn name(&self) -> &str {
        "sumner"
    }

    fn run(&self, g: &Graph, _ctx: &CheckContext) -> CheckOutcome {
        let mut out = CheckOutcome::default();
        if !GraphClass::P5K3Free.contains(g) {
            return out;
        }
        out.applicable = true;
        for comp in g.components() {
            let sub = g.induced_by_list(&comp.to_vec());
            let ok = matches!(is_bipartite(&sub), Bipartition::TwoColoring(_))
                || is_five_ring(&sub).is_some();
            if !ok {
                out.issues.push(Issue::new(
                    FindingKind::LemmaViolation,
                    "sumner.structure",
                    comp.to_vec(),
                ));
            }
        }
        match color_sumner(g) {
            Ok(c) if c.valid && c.num_colors <= 3 => {}
            Ok(c) => out.issues.push(
                Issue::new(FindingKind::BoundViolation, "sumner.colors", Vec::new())
                    .with_detail(format!("colors={}", c.num_colors)),
            ),
            Err(e) => out.issues.push(structural_issue(e)),
        }
        out
    }
}

/// Checks suited to a class.
pub fn default_checks(class: GraphClass) -> Vec<Box<dyn InstanceCheck>> {
    let mut checks: Vec<Box<dyn InstanceCheck>> = vec![Box::new(RecognizerOracleCheck)];
    match class {
        GraphClass::P5K1uK3Free => {
            checks.push(Box::new(HoleStructureCheck));
            checks.push(Box::new(Main0BoundCheck));
        }
        GraphClass::P5K3Free => {
            checks.push(Box::new(SumnerCheck));
            checks.push(Box::new(HoleStructureCheck));
            checks.push(Box::new(Main0BoundCheck));
        }
        GraphClass::P5K1JoinK1uK3Free => {
            checks.push(Box::new(HoleStructureCheck));
            checks.push(Box::new(Section3Check));
            checks.push(Box::new(Main0BoundCheck));
            checks.push(Box::new(Main1BoundCheck));
        }
        GraphClass::P5C5K1JoinK1uK3Free => {
            checks.push(Box::new(Section3Check));
            checks.push(Box::new(Main1BoundCheck));
        }
    }
    checks
}
