//! `p5color` command-line front end.
//!
//! Exit codes: 0 pass, 1 class or bound violation (with witness), 2 input error,
//! 3 structural-assumption finding.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use p5color::coloring::{
    color_p5_k1uk3, color_sumner, Algorithm, ColoringCertificate, ColoringError,
};
use p5color::decompose::{
    antihole_decompose, check_lemma_2_1, check_lemma_antihole, check_lemma_p5free,
    check_section3_lemmas, check_theorem_main2, partition_by_hole, StructureCheckReport,
};
use p5color::generators::{Family, FamilySpec};
use p5color::harness::{
    append_findings, default_checks, run_campaign, verify_bound, Bound, CampaignConfig,
    CheckContext, Finding, FindingKind, Issue, ReplaySpec, Source, VerifyError, VerifyMode,
    WalkSpec,
};
use p5color::io::{encode, parse, sniff_format, Format};
use p5color::oracles::{chromatic_exact, omega_exact, OracleConfig};
use p5color::recognize::{find_five_hole, find_hole, recognize, Hole};
use p5color::{Graph, GraphClass};

const PASS: u8 = 0;
const VIOLATION: u8 = 1;
const INPUT_ERROR: u8 = 2;
const STRUCTURAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "p5color",
    version,
    about = "Structure and colouring of P5-free graph classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate graphs from a family.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "graph6")]
        format: Format,
    },
    /// Class-membership flags with forbidden-subgraph witnesses.
    Recognize {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated flags, e.g. `p5,k1join`; all when omitted.
        #[arg(long, value_delimiter = ',')]
        classes: Vec<String>,
    },
    /// Partition around a 5-hole and run claim checkers.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        /// `auto` or five comma-separated vertices.
        #[arg(long, default_value = "auto")]
        hole: String,
        /// Any of p5free, 2.1, main2, section3, antihole.
        #[arg(long, value_delimiter = ',', default_value = "p5free,2.1,main2")]
        checks: Vec<String>,
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Colour a graph.
    Color {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "main0")]
        algorithm: Algorithm,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Check a chromatic bound constructively and/or with the exact oracle.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value = "two_omega_minus_one")]
        bound: Bound,
        #[arg(long, default_value = "both")]
        mode: VerifyMode,
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Run all checks over an enumerated or sampled stream of a class.
    Campaign {
        /// JSON campaign config; the flags below are ignored when given.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "p5_k1uk3_free")]
        class: GraphClass,
        /// Enumerate every labelled member up to this size.
        #[arg(long)]
        max_n: Option<usize>,
        /// Number of random walks, with seeds `seed..seed+seeds`.
        #[arg(long, default_value_t = 8)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        iters: usize,
        #[arg(long, default_value_t = 4)]
        stride: usize,
        /// Restrict to these check names.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        #[arg(long)]
        store: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct FamilyArgs {
    #[arg(long)]
    family: Option<Family>,
    #[arg(long, value_delimiter = ',')]
    params: Vec<usize>,
    #[arg(long)]
    class: Option<GraphClass>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON FamilySpec file, instead of the flags above.
    #[arg(long)]
    spec: Option<PathBuf>,
}

impl FamilyArgs {
    fn spec(&self) -> Result<Option<FamilySpec>> {
        if let Some(path) = &self.spec {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            return Ok(Some(
                serde_json::from_str(&text).context("parsing family spec")?,
            ));
        }
        Ok(self.family.map(|family| FamilySpec {
            class: self.class,
            seed: self.seed,
            ..FamilySpec::new(family, self.params.clone())
        }))
    }
}

#[derive(Args, Clone)]
struct InputArgs {
    /// Graph file; the format is guessed unless `--format` is given.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    #[arg(long)]
    format: Option<Format>,
    #[command(flatten)]
    family: FamilyArgs,
}

/// A graph together with how to rebuild it.
struct Loaded {
    graph: Graph,
    replay: ReplaySpec,
}

impl InputArgs {
    fn load(&self) -> Result<Loaded> {
        if let Some(path) = &self.input {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let format = self.format.unwrap_or_else(|| sniff_format(&text));
            let graph =
                parse(&text, format).with_context(|| format!("parsing {}", path.display()))?;
            return Ok(Loaded {
                graph,
                replay: ReplaySpec::File {
                    path: path.display().to_string(),
                },
            });
        }
        let spec = self
            .family
            .spec()?
            .ok_or_else(|| anyhow!("give an input with --in, --family or --spec"))?;
        let graph = spec
            .generate()?
            .into_iter()
            .next()
            .ok_or_else(|| anyhow!("family produced no graph"))?;
        Ok(Loaded {
            graph,
            replay: ReplaySpec::Family { spec, index: 0 },
        })
    }
}

/// Writes to stdout; a closed pipe downstream is not an error.
fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    emit(&serde_json::to_string_pretty(value)?)
}

fn record(store: Option<&Path>, findings: &[Finding]) -> Result<()> {
    for f in findings {
        eprintln!("finding: {}", serde_json::to_string(f)?);
    }
    if let Some(path) = store {
        append_findings(path, findings).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn cmd_gen(family: &FamilyArgs, out: Option<&Path>, format: Format) -> Result<u8> {
    let spec = family
        .spec()?
        .ok_or_else(|| anyhow!("--family or --spec is required"))?;
    let graphs = spec.generate()?;
    match (out, format, graphs.len()) {
        (Some(out), Format::Dimacs, k) if k > 1 => {
            let stem = out.with_extension("");
            for (i, g) in graphs.iter().enumerate() {
                let path = PathBuf::from(format!("{}_{i}.col", stem.display()));
                fs::write(&path, encode(g, format))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
        _ => {
            let mut text = String::new();
            for g in &graphs {
                text.push_str(encode(g, format).trim_end());
                text.push('\n');
            }
            match out {
                Some(path) => {
                    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => emit(text.trim_end())?,
            }
        }
    }
    Ok(PASS)
}

fn cmd_recognize(input: &InputArgs, classes: &[String]) -> Result<u8> {
    let g = input.load()?.graph;
    let names: Vec<&str> = classes.iter().map(String::as_str).collect();
    let report = recognize(&g, &names).map_err(|e| anyhow!(e))?;
    print_json(&report)?;
    Ok(if report.flags.values().all(|&f| f) {
        PASS
    } else {
        VIOLATION
    })
}

fn parse_hole(g: &Graph, hole: &str) -> Result<Hole> {
    if hole == "auto" {
        return find_five_hole(g).ok_or_else(|| anyhow!("no 5-hole"));
    }
    let vs: Vec<usize> = hole
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()
        .context("hole must be five comma-separated vertices")?;
    vs.try_into()
        .map_err(|_| anyhow!("hole must have exactly five vertices"))
}

fn cmd_decompose(
    input: &InputArgs,
    hole: &str,
    checks: &[String],
    store: Option<&Path>,
) -> Result<u8> {
    let loaded = input.load()?;
    let g = &loaded.graph;
    let hole = parse_hole(g, hole)?;
    let hp = partition_by_hole(g, &hole)?;
    let mut reports = serde_json::Map::new();
    let mut findings = Vec::new();
    for name in checks {
        let report: StructureCheckReport = match name.as_str() {
            "p5free" => check_lemma_p5free(g, &hp),
            "2.1" => check_lemma_2_1(g, &hp),
            "main2" => check_theorem_main2(g, &hole)?,
            "section3" => check_section3_lemmas(g, &hp),
            "antihole" => match find_hole(&g.complement(), 6, None) {
                Some(a) => check_lemma_antihole(g, &antihole_decompose(g, &a)?),
                None => StructureCheckReport::default(),
            },
            other => bail!("unknown check `{other}`"),
        };
        for c in report.violations() {
            let issue = Issue::new(
                FindingKind::LemmaViolation,
                &c.claim_id,
                c.witness_vertices.clone(),
            );
            findings.push(Finding::new(name, issue, g, loaded.replay.clone()));
        }
        reports.insert(name.clone(), serde_json::to_value(&report)?);
    }
    print_json(&json!({ "partition": hp.dump(), "reports": reports }))?;
    record(store, &findings)?;
    Ok(if findings.is_empty() { PASS } else { VIOLATION })
}

fn coloring_failure(e: &ColoringError) -> (u8, FindingKind) {
    match e {
        ColoringError::Structural { .. } => (STRUCTURAL, FindingKind::StructuralAssumptionFailure),
        _ => (VIOLATION, FindingKind::BoundViolation),
    }
}

fn cmd_color(
    input: &InputArgs,
    algorithm: Algorithm,
    out: Option<&Path>,
    store: Option<&Path>,
) -> Result<u8> {
    let loaded = input.load()?;
    let g = &loaded.graph;
    let cfg = OracleConfig::default();
    let result: Result<(ColoringCertificate, usize), ColoringError> = match algorithm {
        Algorithm::Main0 => color_p5_k1uk3(g).map(|c| {
            let omega = omega_exact(g, &cfg)
                .map(|r| r.value)
                .unwrap_or(c.num_colors);
            (c, (2 * omega).saturating_sub(1))
        }),
        Algorithm::Sumner => color_sumner(g).map(|c| (c, 3)),
        Algorithm::Exact => {
            let r = chromatic_exact(g, &cfg)?;
            let cert = r
                .coloring()
                .context("oracle returned no colouring")?
                .clone();
            Ok((cert, r.value))
        }
        other => bail!("`{other:?}` colours only part of a graph; use main0, sumner or exact"),
    };
    match result {
        Ok((cert, budget)) => {
            let text = serde_json::to_string_pretty(&cert)?;
            match out {
                Some(path) => {
                    fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?
                }
                None => emit(&text)?,
            }
            Ok(if cert.valid && cert.num_colors <= budget {
                PASS
            } else {
                VIOLATION
            })
        }
        Err(e) => {
            eprintln!("error: {e}");
            let (code, kind) = coloring_failure(&e);
            print_json(&json!({ "error": e.to_string(), "witness": e.witness() }))?;
            if code == STRUCTURAL {
                let claim = match &e {
                    ColoringError::Structural { claim_id, .. } => claim_id.clone(),
                    _ => unreachable!(),
                };
                let issue = Issue::new(kind, &claim, e.witness());
                record(
                    store,
                    &[Finding::new("color", issue, g, loaded.replay.clone())],
                )?;
            }
            Ok(code)
        }
    }
}

fn cmd_verify(
    input: &InputArgs,
    bound: Bound,
    mode: VerifyMode,
    store: Option<&Path>,
) -> Result<u8> {
    let loaded = input.load()?;
    let g = &loaded.graph;
    let cfg = OracleConfig::default();
    match verify_bound(g, bound, mode, &cfg) {
        Ok(report) => {
            print_json(&report)?;
            if report.pass {
                return Ok(PASS);
            }
            let issue = Issue::new(
                FindingKind::BoundViolation,
                &format!("verify.{bound:?}"),
                Vec::new(),
            );
            record(
                store,
                &[Finding::new("verify", issue, g, loaded.replay.clone())],
            )?;
            Ok(VIOLATION)
        }
        Err(VerifyError::ClassMismatch {
            class,
            forbidden,
            witness,
        }) => {
            print_json(
                &json!({ "error": "class mismatch", "class": class, "forbidden": forbidden, "witness": witness }),
            )?;
            Ok(VIOLATION)
        }
        Err(VerifyError::Coloring(ColoringError::Structural { claim_id, witness })) => {
            print_json(
                &json!({ "error": "structural", "claim_id": claim_id, "witness": witness }),
            )?;
            let issue = Issue::new(FindingKind::StructuralAssumptionFailure, &claim_id, witness);
            record(
                store,
                &[Finding::new("verify", issue, g, loaded.replay.clone())],
            )?;
            Ok(STRUCTURAL)
        }
        Err(e) => Err(e.into()),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_campaign(
    config: Option<&Path>,
    class: GraphClass,
    max_n: Option<usize>,
    (seed, seeds, n, iters, stride): (u64, u64, usize, usize, usize),
    checks: &[String],
    store: Option<PathBuf>,
) -> Result<u8> {
    let cfg = match config {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).context("parsing campaign config")?
        }
        None => CampaignConfig {
            class,
            source: match max_n {
                Some(max_n) => Source::Enumerate { max_n },
                None => Source::Walk {
                    walks: (seed..seed + seeds)
                        .map(|seed| WalkSpec { n, seed })
                        .collect(),
                    iters,
                    stride,
                },
            },
            ctx: CheckContext::default(),
            store,
        },
    };
    let selected = if checks.is_empty() {
        None
    } else {
        let all = default_checks(cfg.class);
        let known: Vec<String> = all.iter().map(|c| c.name().to_string()).collect();
        if let Some(bad) = checks.iter().find(|c| !known.contains(c)) {
            bail!("unknown check `{bad}`; available: {}", known.join(", "));
        }
        Some(
            all.into_iter()
                .filter(|c| checks.iter().any(|n| n == c.name()))
                .collect(),
        )
    };
    let res = run_campaign(&cfg, selected)?;
    print_json(&res.summary)?;
    let structural_only = res
        .findings
        .iter()
        .all(|f| f.kind == FindingKind::StructuralAssumptionFailure);
    Ok(match (res.findings.is_empty(), structural_only) {
        (true, _) => PASS,
        (false, true) => STRUCTURAL,
        (false, false) => VIOLATION,
    })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Gen {
            family,
            out,
            format,
        } => cmd_gen(&family, out.as_deref(), format),
        Command::Recognize { input, classes } => cmd_recognize(&input, &classes),
        Command::Decompose {
            input,
            hole,
            checks,
            store,
        } => cmd_decompose(&input, &hole, &checks, store.as_deref()),
        Command::Color {
            input,
            algorithm,
            out,
            store,
        } => cmd_color(&input, algorithm, out.as_deref(), store.as_deref()),
        Command::Verify {
            input,
            bound,
            mode,
            store,
        } => cmd_verify(&input, bound, mode, store.as_deref()),
        Command::Campaign {
            config,
            class,
            max_n,
            seeds,
            seed,
            n,
            iters,
            stride,
            checks,
            store,
        } => cmd_campaign(
            config.as_deref(),
            class,
            max_n,
            (seed, seeds, n, iters, stride),
            &checks,
            store,
        ),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
