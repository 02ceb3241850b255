//! Acceptance run: one PASS/FAIL line per criterion, then a verdict.
//!
//! A criterion may print FAIL and still leave the run green when its failure is a known,
//! analysed falsification of a claim (listed under `known`). Any other failure exits 1.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use p5color::coloring::{color_sumner, validate_total};
use p5color::decompose::{
    antihole_decompose, check_lemma_antihole, check_section3_lemmas, partition_by_hole,
};
use p5color::generators::{for_each_in_class, gen_f, gen_h, gen_random_in_class, h_eight_coloring};
use p5color::harness::{
    run_campaign, CampaignConfig, CampaignResult, CheckContext, HoleStructureCheck, InstanceCheck,
    Main0BoundCheck, Main1BoundCheck, Source, WalkSpec,
};
use p5color::oracles::{
    alpha_exact, chromatic_exact, contains_induced_bruteforce, omega_exact, OracleConfig,
};
use p5color::recognize::{
    contains_induced, find_hole, five_holes, is_bipartite, is_five_ring, is_k1_join_k1uk3_free,
    is_p5_free, Bipartition, Forbidden,
};
use p5color::{Graph, GraphClass};

struct Outcome {
    pass: bool,
    detail: String,
    /// Failure explained by an analysed counterexample; does not fail the run.
    known: bool,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Outcome {
            pass,
            detail,
            known: false,
        }
    }
}

fn oracle() -> OracleConfig {
    OracleConfig::default()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn c1_extremal() -> Outcome {
    let cfg = oracle();
    let c5 = Graph::cycle(5).unwrap();
    let f = gen_f();
    let (vals, took) = timed(|| {
        [
            chromatic_exact(&c5, &cfg).unwrap().value,
            omega_exact(&c5, &cfg).unwrap().value,
            chromatic_exact(&f, &cfg).unwrap().value,
            alpha_exact(&f, &cfg).unwrap().value,
            omega_exact(&f, &cfg).unwrap().value,
        ]
    });
    let pass =
        vals == [3, 2, 4, 3, 3] && vals[0] == 2 * vals[1] - 1 && took < Duration::from_secs(1);
    Outcome::new(
        pass,
        format!(
            "χ(C5)={} ω(C5)={} χ(F)={} α(F)={} ω(F)={} in {took:.2?}",
            vals[0], vals[1], vals[2], vals[3], vals[4]
        ),
    )
}

fn c2_h() -> Outcome {
    let h = gen_h();
    let cfg = oracle();
    let omega = omega_exact(&h, &cfg).unwrap().value;
    let (chi, took) = timed(|| chromatic_exact(&h, &cfg).unwrap());
    let eight = h_eight_coloring();
    let eight_ok = validate_total(&h, &eight).is_none() && eight.iter().unique().count() == 8;
    let free = is_p5_free(&h).member && is_k1_join_k1uk3_free(&h).member;
    let pass = h.n() == 25
        && omega == 4
        && chi.value == 8
        && chi.value == 2 * omega
        && eight_ok
        && free
        && took <= Duration::from_secs(60);
    Outcome::new(
        pass,
        format!("ω(H)={omega} χ(H)={} in {took:.2?}; 8-class colouring proper={eight_ok}; (P5, K1+(K1∪K3))-free={free}", chi.value),
    )
}

fn campaign(
    class: GraphClass,
    source: Source,
    checks: Vec<Box<dyn InstanceCheck>>,
) -> CampaignResult {
    let cfg = CampaignConfig {
        class,
        source,
        ctx: CheckContext::default(),
        store: None,
    };
    run_campaign(&cfg, Some(checks)).unwrap()
}

fn describe(res: &CampaignResult) -> String {
    res.summary
        .checks
        .iter()
        .map(|(name, s)| {
            format!(
                "{name}: {} applicable, {} oracle-skipped, {} findings",
                s.applicable, s.oracle_skipped, s.findings
            )
        })
        .join("; ")
}

fn c3_enumerated(res: &CampaignResult, took: Duration) -> Outcome {
    let s = &res.summary.checks["main0_bound"];
    let pass = s.findings == 0
        && s.applicable == res.summary.instances
        && s.oracle_skipped == 0
        && took < Duration::from_secs(600);
    Outcome::new(
        pass,
        format!(
            "{} labelled graphs n ≤ 6, constructive and exact χ ≤ 2ω−1, {} findings, {took:.2?}",
            res.summary.instances, s.findings
        ),
    )
}

fn c4_sampled(res: &CampaignResult, took: Duration) -> Outcome {
    let s = &res.summary.checks["main0_bound"];
    let pass =
        s.findings == 0 && res.summary.instances >= 8 * 2000 && took < Duration::from_secs(600);
    Outcome::new(
        pass,
        format!(
            "{} walk states n = 9..16, {} with exact χ (cap n ≤ 14), {} findings, {took:.2?}",
            res.summary.instances,
            s.applicable - s.oracle_skipped,
            s.findings
        ),
    )
}

fn c5_structure(enumerated: &CampaignResult, sampled: &CampaignResult) -> Outcome {
    let a = &enumerated.summary.checks["hole_structure"];
    let b = &sampled.summary.checks["hole_structure"];
    Outcome::new(
        a.findings + b.findings == 0,
        format!(
            "hole checks applicable on {} + {} graphs, {} findings",
            a.applicable,
            b.applicable,
            a.findings + b.findings
        ),
    )
}

/// Per-claim tallies of the section-3 checkers over the sampled corpus.
#[derive(Default)]
struct ClaimTally {
    applicable: usize,
    violations: usize,
    /// Violations grouped by the checker's note (antihole length for the antihole claim).
    by_note: BTreeMap<String, usize>,
}

/// Graphs around the hole 0..4 where a second-neighbourhood vertex `t = 6` sees a vertex
/// `u = 5` of trace {1, 2, 4} and `N_{1..5}` holds the edge `a b` (7, 8). Every choice of
/// the edges u-a, u-b, t-a, t-b and of the neighbourhood of one optional extra vertex;
/// random walks almost never meet this configuration.
fn neighbourhood_corpus() -> Vec<Graph> {
    let mut out = Vec::new();
    for n in [9, 10] {
        let mut free = vec![(5, 7), (5, 8), (6, 7), (6, 8)];
        free.extend((9..n).flat_map(|x| (0..x).map(move |y| (y, x))));
        for mask in 0u32..(1 << free.len()) {
            let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
            edges.extend([(5, 0), (5, 1), (5, 3), (5, 6), (7, 8)]);
            edges.extend((0..5).flat_map(|v| [(7, v), (8, v)]));
            edges.extend(
                free.iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &e)| e),
            );
            out.push(Graph::from_edges(n, &edges).unwrap());
        }
    }
    out
}

fn c6_main1() -> Outcome {
    let walks: Vec<WalkSpec> = (0..8).map(|seed| WalkSpec { n: 14, seed }).collect();
    let source = Source::Walk {
        walks: walks.clone(),
        iters: 1000,
        stride: 4,
    };
    let (res, took) = timed(|| {
        campaign(
            GraphClass::P5K1JoinK1uK3Free,
            source,
            vec![Box::new(Main1BoundCheck)],
        )
    });
    let bound = &res.summary.checks["main1_bound"];

    let mut tally: BTreeMap<String, ClaimTally> = BTreeMap::new();
    let mut instances = 0;
    let walked = walks.iter().flat_map(|w| {
        gen_random_in_class(GraphClass::P5K1JoinK1uK3Free, w.n, w.seed, 1000, 4).unwrap()
    });
    // C5-free walks reach the antihole claim far more often
    let c5_free = (0..8).flat_map(|seed| {
        gen_random_in_class(GraphClass::P5C5K1JoinK1uK3Free, 12, seed, 500, 4).unwrap()
    });
    for g in walked.chain(c5_free).chain(neighbourhood_corpus()) {
        instances += 1;
        let mut reports = Vec::new();
        for hole in five_holes(&g).into_iter().take(4) {
            reports.push(check_section3_lemmas(
                &g,
                &partition_by_hole(&g, &hole).unwrap(),
            ));
        }
        if let Some(a) = find_hole(&g.complement(), 6, None) {
            reports.push(check_lemma_antihole(
                &g,
                &antihole_decompose(&g, &a).unwrap(),
            ));
        }
        for c in reports.iter().flat_map(|r| &r.checks) {
            let t = tally.entry(c.claim_id.clone()).or_default();
            t.applicable += usize::from(c.hypothesis_applicable);
            if c.hypothesis_applicable && !c.pass {
                t.violations += 1;
                *t.by_note
                    .entry(c.note.clone().unwrap_or_default())
                    .or_default() += 1;
            }
        }
    }
    let violations: usize = tally.values().map(|t| t.violations).sum();
    let counts = tally
        .iter()
        .map(|(id, t)| format!("{id} {}/{}", t.violations, t.applicable))
        .join(", ");
    let by_length = tally
        .get("3.6.n2_empty")
        .map(|t| format!("{:?}", t.by_note))
        .unwrap_or_default();
    // the antihole claim fails only on 6-antiholes (see the k = 6 counterexample)
    let known = tally.iter().all(|(id, t)| {
        t.violations == 0 || (id == "3.6.n2_empty" && t.by_note.keys().all(|k| k == "k=6"))
    });
    let pass = bound.findings == 0 && violations == 0 && took < Duration::from_secs(900);
    Outcome {
        pass,
        known: !pass && known && bound.findings == 0,
        detail: format!(
            "{} states n = 14: χ ≤ max(2ω, 15) findings {} ({took:.2?}); section-3 claims violations/applicable over {instances} graphs (class walks, C5-free walks, targeted corpus): {counts}; 3.6.n2_empty violations by antihole length {by_length}",
            res.summary.instances, bound.findings
        ),
    }
}

fn c7_sumner() -> Outcome {
    let mut connected = 0usize;
    let mut bad: Option<Vec<(usize, usize)>> = None;
    let (_, took) = timed(|| {
        for_each_in_class(GraphClass::P5K3Free, 7, |g| {
            if g.n() == 0 || !g.is_connected() || bad.is_some() {
                return;
            }
            connected += 1;
            let structure =
                matches!(is_bipartite(g), Bipartition::TwoColoring(_)) || is_five_ring(g).is_some();
            let colours = color_sumner(g).is_ok_and(|c| c.valid && c.num_colors <= 3);
            if !(structure && colours) {
                bad = Some(g.edges());
            }
        })
        .unwrap()
    });
    Outcome::new(
        bad.is_none(),
        format!(
            "{connected} connected labelled graphs n ≤ 7 in {took:.2?}; first failure: {bad:?}"
        ),
    )
}

fn c8_cross_validation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let named = [
        Forbidden::P5,
        Forbidden::C5,
        Forbidden::K3,
        Forbidden::K1UnionK3,
        Forbidden::K1JoinK1UnionK3,
    ];
    let mut disagreements = 0;
    let pairs = 2000;
    for i in 0..pairs {
        let g = common::random_graph(rng.gen_range(0..=8), rng.gen_range(0..=100), rng.gen());
        let pattern = if i % 2 == 0 {
            named[rng.gen_range(0..named.len())].graph()
        } else {
            common::random_graph(rng.gen_range(1..=6), rng.gen_range(0..=100), rng.gen())
        };
        let fast = contains_induced(&g, &pattern).unwrap();
        let slow = contains_induced_bruteforce(&g, &pattern).unwrap();
        disagreements += usize::from(fast != slow);
    }
    let cfg = oracle();
    let mut alpha_bad = 0;
    for _ in 0..500 {
        let g = common::random_graph(rng.gen_range(0..=12), rng.gen_range(0..=100), rng.gen());
        let alpha = alpha_exact(&g, &cfg).unwrap().value;
        let brute = (0..=g.n())
            .rev()
            .find(|&k| {
                (0..g.n())
                    .combinations(k)
                    .any(|s| g.is_independent(&s.into_iter().collect()))
            })
            .unwrap();
        alpha_bad += usize::from(
            alpha != brute || alpha != omega_exact(&g.complement(), &cfg).unwrap().value,
        );
    }
    Outcome::new(
        disagreements == 0 && alpha_bad == 0,
        format!("{pairs} (graph, pattern) pairs n ≤ 8: {disagreements} disagreements; 500 α checks: {alpha_bad} disagreements"),
    )
}

fn c9_properties() -> Outcome {
    let mut runner = TestRunner::new(Config {
        cases: common::CASES,
        failure_persistence: None,
        ..Config::default()
    });
    let mut failures = Vec::new();
    let mut note = |name: &str, r: Result<(), String>| {
        if let Err(e) = r {
            failures.push(format!("{name}: {e}"));
        }
    };
    note(
        "complement",
        runner
            .run(&common::graph(), |g| common::complement_involution(&g))
            .map_err(|e| e.to_string()),
    );
    note(
        "de morgan",
        runner
            .run(
                &(common::graph_in(0, 8), common::graph_in(0, 8)),
                |(g, h)| common::de_morgan(&g, &h),
            )
            .map_err(|e| e.to_string()),
    );
    note(
        "blow-up",
        runner
            .run(&common::blow_up_case(), |(p, s)| {
                common::blow_up_laws(&p, &s)
            })
            .map_err(|e| e.to_string()),
    );
    note(
        "round trips",
        runner
            .run(&common::graph_in(0, 80), |g| common::round_trips(&g))
            .map_err(|e| e.to_string()),
    );
    Outcome::new(
        failures.is_empty(),
        format!("4 suites × {} cases; failures: {failures:?}", common::CASES),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(u8, &str, Outcome)> = Vec::new();
    let mut report = |id: u8, name: &'static str, o: Outcome| {
        let tag = match (o.pass, o.known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("[{tag}] criterion {id} {name}: {}", o.detail);
        results.push((id, name, o));
    };

    report(1, "extremal constants", c1_extremal());
    report(2, "H construction", c2_h());

    let (enumerated, t3) = timed(|| {
        campaign(
            GraphClass::P5K1uK3Free,
            Source::Enumerate { max_n: 6 },
            vec![Box::new(Main0BoundCheck), Box::new(HoleStructureCheck)],
        )
    });
    report(3, "main0 exhaustive n ≤ 6", c3_enumerated(&enumerated, t3));

    let (sampled, t4) = timed(|| {
        let walks = (0..8)
            .map(|seed| WalkSpec {
                n: 9 + seed as usize,
                seed,
            })
            .collect();
        campaign(
            GraphClass::P5K1uK3Free,
            Source::Walk {
                walks,
                iters: 2000,
                stride: 4,
            },
            vec![Box::new(Main0BoundCheck), Box::new(HoleStructureCheck)],
        )
    });
    report(4, "main0 sampled n ≤ 16", c4_sampled(&sampled, t4));
    report(
        5,
        "hole-structure checkers",
        c5_structure(&enumerated, &sampled),
    );
    println!("    corpus 3: {}", describe(&enumerated));
    println!("    corpus 4: {}", describe(&sampled));

    report(6, "main1 bound and section-3 lemmas", c6_main1());
    report(7, "sumner structure n ≤ 7", c7_sumner());
    report(
        8,
        "oracle/recognizer cross-validation",
        c8_cross_validation(),
    );
    report(9, "property suites", c9_properties());

    let unexpected: Vec<u8> = results
        .iter()
        .filter(|(_, _, o)| !o.pass && !o.known)
        .map(|r| r.0)
        .collect();
    let known: Vec<u8> = results
        .iter()
        .filter(|(_, _, o)| !o.pass && o.known)
        .map(|r| r.0)
        .collect();
    println!(
        "acceptance: {} passed, {} failed with analysed counterexample {known:?}, {} unexpected failures {unexpected:?}",
        results.iter().filter(|r| r.2.pass).count(),
        known.len(),
        unexpected.len()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
