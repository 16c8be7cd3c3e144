//! Command-line front end for the `facering` library.
//!
//! Subcommands compute reduced cohomology, links, graded local cohomology
//! (single degree or the whole per-cone table), the Cohen–Macaulay,
//! Buchsbaum and order-complex consistency checks, KP-module cohomology
//! and flasqueness, and run the built-in engine-versus-oracle suite.
//!
//! Exit codes: 0 on success (and positive verdicts), 1 when a check fails
//! (the witness is part of the output), 2 on malformed or invalid input.
//! Output is deterministic: identical inputs give byte-identical output.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use facering::cech::cech_cohomology;
use facering::corpus;
use facering::fan::FanInput;
use facering::kpmod::KpModuleInput;
use facering::simplicial::ComplexInput;
use facering::toric::{
    buchsbaum_test, cm_test, degree_sheaf, embed, hilbert_value, stanley_check, CriterionReport,
    LocalCohomologyTable,
};
use facering::{BettiVector, Error, Fan, Field, Result, SimplicialComplex};

#[derive(Parser)]
#[command(
    name = "facering",
    version,
    about = "Exact multigraded local cohomology of toric face rings",
    after_help = "The bound on exhaustive lower-set enumeration (command `flasque \
                  --exhaustive`) can be raised with the FACERING_OPEN_SET_BOUND \
                  environment variable."
)]
struct Cli {
    /// Coefficient field: `q` (exact rationals) or `gf:<p>` (prime field).
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Output format; `text` prints bare verdicts and numbers, `json` a
    /// full machine-readable report.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

/// Exactly one source for a fan: an explicit fan file, or a simplicial
/// complex whose fan is built through the degree embedding.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct FanSource {
    /// Simplicial complex JSON: {"vertices": [...], "facets": [[...], ...]}.
    #[arg(long)]
    complex: Option<PathBuf>,
    /// Fan JSON: {"ambient_dim": d, "cones": [[[..], ...], ...]} listing
    /// generators of the maximal cones.
    #[arg(long)]
    fan: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced simplicial cohomology of a complex.
    Betti {
        /// Simplicial complex JSON.
        #[arg(long)]
        complex: PathBuf,
    },
    /// The link of a face, as a complex on the remaining vertices.
    Link {
        /// Simplicial complex JSON.
        #[arg(long)]
        complex: PathBuf,
        /// Face to take the link at: comma-separated vertex labels, empty
        /// string for the empty face.
        #[arg(long, default_value = "")]
        face: String,
    },
    /// Graded local cohomology dimensions in one multidegree.
    Lch {
        #[command(flatten)]
        source: FanSource,
        /// Multidegree, comma-separated integers. Ring coordinates (length
        /// n) are embedded automatically; fan coordinates (length d) are
        /// used as given.
        #[arg(long, allow_hyphen_values = true)]
        degree: String,
        /// Report this single cohomological degree only.
        #[arg(long)]
        i: Option<i64>,
    },
    /// The full local cohomology table: one contribution per cone.
    LchTable {
        #[command(flatten)]
        source: FanSource,
    },
    /// Cohen–Macaulay test through interval cohomology, with witnesses.
    CmTest {
        #[command(flatten)]
        source: FanSource,
    },
    /// Buchsbaum test (the same vanishing with the zero cone exempted);
    /// requires a fan built from a complex.
    BuchsbaumTest {
        #[command(flatten)]
        source: FanSource,
    },
    /// Check "Cohen–Macaulay order complex implies Cohen–Macaulay ring".
    StanleyCheck {
        #[command(flatten)]
        source: FanSource,
    },
    /// Poset cohomology (derived limit) of a KP-module.
    Ext {
        /// KP-module JSON: {"poset": {...}, "stalks": {...}, "edges": {...}}.
        #[arg(long)]
        module: PathBuf,
    },
    /// Flasqueness of a KP-module, with a witness open set on failure.
    Flasque {
        /// KP-module JSON.
        #[arg(long)]
        module: PathBuf,
        /// Compare restrictions between all pairs of open sets instead of
        /// the principal reduction (exponential in the poset size).
        #[arg(long)]
        exhaustive: bool,
    },
    /// Run the decomposition-versus-Čech suite over a built-in corpus.
    Verify {
        /// `small`: every complex on ≤ 3 vertices plus the named
        /// instances; `full`: every complex on ≤ 4 vertices, 50 seeded
        /// random complexes on 5–6 vertices, and the named instances.
        #[arg(long, default_value = "small")]
        corpus: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Executes the command; `Ok(true)` is success, `Ok(false)` a negative
/// verdict whose witness has been printed.
fn run(cli: &Cli) -> Result<bool> {
    let field = Field::parse(&cli.field)?;
    let out = cli.output;
    match &cli.command {
        Command::Betti { complex } => {
            let sc = load_complex(complex)?;
            let betti = sc.reduced_cohomology(&field)?;
            emit(
                out,
                &betti_text(&betti),
                json!({ "field": field.to_string(), "reduced_cohomology": betti_json(&betti) }),
            );
            Ok(true)
        }
        Command::Link { complex, face } => {
            let sc = load_complex(complex)?;
            let labels: Vec<String> = face
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            let link = sc.link(sc.mask_of_labels(&labels)?)?;
            let value = complex_json(&link);
            emit(out, &facet_text(&link), value);
            Ok(true)
        }
        Command::Lch { source, degree, i } => {
            let fan = load_fan(source)?;
            let raw = parse_degree(degree)?;
            let (point, embedded) = embed_if_needed(&fan, &raw)?;
            let table = LocalCohomologyTable::new(fan, &field)?;
            let dims = table.dims_at(&point)?;
            let mut report = json!({
                "field": field.to_string(),
                "degree": raw,
                "local_cohomology": betti_json(&dims),
            });
            if embedded {
                report["embedded_degree"] = json!(bigint_json(&point));
            }
            let text = match i {
                Some(i) => dims.get(i).copied().unwrap_or(0).to_string(),
                None => betti_text(&dims),
            };
            if let Some(i) = i {
                report["i"] = json!(i);
                report["dim"] = json!(dims.get(i).copied().unwrap_or(0));
            }
            emit(out, &text, report);
            Ok(true)
        }
        Command::LchTable { source } => {
            let fan = load_fan(source)?;
            let table = LocalCohomologyTable::new(fan, &field)?;
            let cones: Vec<Value> = table
                .fan()
                .cones()
                .iter()
                .enumerate()
                .map(|(c, cone)| {
                    json!({
                        "cone": cone.label(),
                        "dim": cone.dim(),
                        "local_cohomology": betti_json(table.cone_contribution(c)),
                    })
                })
                .collect();
            let text = table
                .fan()
                .cones()
                .iter()
                .enumerate()
                .map(|(c, cone)| {
                    format!("{} {}", cone.label(), betti_text(table.cone_contribution(c)))
                })
                .collect::<Vec<_>>()
                .join("\n");
            emit(
                out,
                &text,
                json!({
                    "field": field.to_string(),
                    "krull_dimension": table.krull(),
                    "cones": cones,
                }),
            );
            Ok(true)
        }
        Command::CmTest { source } => {
            let fan = load_fan(source)?;
            let report = cm_test(&fan, &field)?;
            emit_criterion(out, &field, &report);
            Ok(report.holds)
        }
        Command::BuchsbaumTest { source } => {
            let fan = load_fan(source)?;
            let report = buchsbaum_test(&fan, &field)?;
            emit_criterion(out, &field, &report);
            Ok(report.holds)
        }
        Command::StanleyCheck { source } => {
            let fan = load_fan(source)?;
            let report = stanley_check(&fan, &field)?;
            let text = format!(
                "order_complex_cm={} ring_cm={} consistent={}",
                report.order_complex_cm,
                report.ring_cm,
                report.consistent()
            );
            emit(
                out,
                &text,
                json!({
                    "field": field.to_string(),
                    "order_complex_cm": report.order_complex_cm,
                    "ring_cm": report.ring_cm,
                    "consistent": report.consistent(),
                }),
            );
            Ok(report.consistent())
        }
        Command::Ext { module } => {
            let input: KpModuleInput = read_json(module)?;
            let m = input.into_module(&field)?;
            let h = m.poset_cohomology()?;
            emit(
                out,
                &betti_text(&h),
                json!({ "field": field.to_string(), "poset_cohomology": betti_json(&h) }),
            );
            Ok(true)
        }
        Command::Flasque { module, exhaustive } => {
            let input: KpModuleInput = read_json(module)?;
            let m = input.into_module(&field)?;
            let witness: Option<Value> = if *exhaustive {
                m.is_flasque_exhaustive()?.map(|(u, v)| {
                    json!({ "open_set": u, "smaller_open_set": v })
                })
            } else {
                m.is_flasque()?.map(|w| {
                    json!({ "element": w.element, "open_set": w.open_set })
                })
            };
            let flasque = witness.is_none();
            let text = match &witness {
                None => "true".to_string(),
                Some(w) => format!("false\nwitness: {w}"),
            };
            emit(
                out,
                &text,
                json!({
                    "field": field.to_string(),
                    "flasque": flasque,
                    "witness": witness,
                }),
            );
            Ok(flasque)
        }
        Command::Verify { corpus } => verify(out, &field, corpus),
    }
}

// ---------------------------------------------------------------------------
// input loading

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn load_complex(path: &Path) -> Result<SimplicialComplex> {
    SimplicialComplex::try_from(read_json::<ComplexInput>(path)?)
}

fn load_fan(source: &FanSource) -> Result<Fan> {
    match (&source.complex, &source.fan) {
        (Some(path), None) => Fan::fan_of_complex(&load_complex(path)?),
        (None, Some(path)) => Fan::try_from(read_json::<FanInput>(path)?),
        _ => unreachable!("clap enforces exactly one source"),
    }
}

fn parse_degree(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad degree entry `{part}`")))
        })
        .collect()
}

/// Interprets the degree against the fan's grading: length `d` is used as
/// given, length `d − 1` is ring coordinates and gets the sum appended.
fn embed_if_needed(fan: &Fan, raw: &[i64]) -> Result<(Vec<BigInt>, bool)> {
    let d = fan.ambient_dim();
    if raw.len() == d {
        Ok((raw.iter().map(|&x| BigInt::from(x)).collect(), false))
    } else if raw.len() + 1 == d {
        Ok((embed(raw), true))
    } else {
        Err(Error::Parse(format!(
            "degree has {} entries; expected {d} (fan coordinates) or {} (ring coordinates)",
            raw.len(),
            d.saturating_sub(1)
        )))
    }
}

// ---------------------------------------------------------------------------
// output shaping

fn emit(out: Output, text: &str, value: Value) {
    match out {
        Output::Text => println!("{text}"),
        Output::Json => println!("{}", serde_json::to_string_pretty(&value).expect("valid JSON")),
    }
}

/// Degree/dimension pairs in degree order, e.g. `[[1, 2], [3, 1]]`.
fn betti_json(b: &BettiVector) -> Value {
    Value::Array(
        b.iter()
            .filter(|&(_, &v)| v != 0)
            .map(|(&i, &v)| json!([i, v]))
            .collect(),
    )
}

fn betti_text(b: &BettiVector) -> String {
    let parts: Vec<String> = b
        .iter()
        .filter(|&(_, &v)| v != 0)
        .map(|(&i, &v)| format!("{i}:{v}"))
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

fn bigint_json(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn complex_json(sc: &SimplicialComplex) -> Value {
    json!({
        "vertices": sc.vertex_labels(),
        "facets": sc.facet_labels(),
    })
}

fn facet_text(sc: &SimplicialComplex) -> String {
    let facets: Vec<String> = sc
        .facet_labels()
        .iter()
        .map(|f| format!("{{{}}}", f.join(",")))
        .collect();
    if facets.is_empty() {
        "{}".to_string()
    } else {
        facets.join(" ")
    }
}

fn emit_criterion(out: Output, field: &Field, report: &CriterionReport) {
    let witnesses: Vec<Value> = report
        .witnesses
        .iter()
        .map(|w| json!({ "cone": w.cone, "degree": w.degree, "dim": w.dim }))
        .collect();
    let mut text = report.holds.to_string();
    for w in &report.witnesses {
        text.push_str(&format!(
            "\nwitness: {} has interval cohomology of dimension {} in degree {}",
            w.cone, w.dim, w.degree
        ));
    }
    emit(
        out,
        &text,
        json!({
            "field": field.to_string(),
            "holds": report.holds,
            "witnesses": witnesses,
        }),
    );
}

// ---------------------------------------------------------------------------
// verify

/// One disagreement, with everything needed to reproduce it.
fn mismatch_json(sc: &SimplicialComplex, a: &[i64], i: i64, via_fan: usize, via_cech: usize) -> Value {
    json!({
        "complex": complex_json(sc),
        "degree": a,
        "i": i,
        "decomposition": via_fan,
        "cech": via_cech,
    })
}

struct CaseOutcome {
    degrees: u64,
    comparisons: u64,
    mismatches: Vec<Value>,
}

/// Sweeps one complex: every degree in `{−1,0,1}^n`, every cohomological
/// degree `0 ≤ i ≤ n + 1`, decomposition against the Čech complex. Also
/// cross-checks the degree-0 sheaf sections against the Hilbert value as a
/// cheap flasqueness canary.
fn verify_one(sc: &SimplicialComplex, field: &Field) -> Result<CaseOutcome> {
    let n = sc.vertex_count();
    let fan = Fan::fan_of_complex(sc)?;
    let table = LocalCohomologyTable::new(fan.clone(), field)?;
    let mut outcome = CaseOutcome {
        degrees: 0,
        comparisons: 0,
        mismatches: Vec::new(),
    };
    let mut boxes: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(boxes.len() * 3);
        for v in &boxes {
            for x in [-1i64, 0, 1] {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        boxes = next;
    }
    for a in &boxes {
        let cech = cech_cohomology(sc, a, field)?;
        let ring = table.dims_at(&embed(a))?;
        outcome.degrees += 1;
        for i in 0..=(n as i64 + 1) {
            let via_fan = ring.get(&i).copied().unwrap_or(0);
            let via_cech = cech.get(&i).copied().unwrap_or(0);
            outcome.comparisons += 1;
            if via_fan != via_cech {
                outcome.mismatches.push(mismatch_json(sc, a, i, via_fan, via_cech));
            }
        }
    }
    // Hilbert-function canary in degree 0 of the sheaf route.
    let zero: Vec<BigInt> = vec![BigInt::from(0); fan.ambient_dim()];
    let sheaf = degree_sheaf(&fan, field, &zero)?;
    let h = sheaf.poset_cohomology()?;
    let h0 = h.get(&0).copied().unwrap_or(0);
    if sheaf.is_flasque()?.is_some() || h0 != hilbert_value(&fan, &zero)? {
        outcome.mismatches.push(json!({
            "complex": complex_json(sc),
            "degree_sheaf": "0",
            "flasque_or_hilbert": false,
        }));
    }
    Ok(outcome)
}

fn verify(out: Output, field: &Field, corpus_name: &str) -> Result<bool> {
    let mut complexes = match corpus_name {
        "small" => corpus::all_complexes_up_to(3),
        "full" => {
            let mut v = corpus::all_complexes_up_to(4);
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(0xFACE);
            for k in 0..50 {
                v.push(corpus::random_complex(&mut rng, if k % 2 == 0 { 5 } else { 6 }));
            }
            v.push(corpus::projective_plane());
            v
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown corpus `{other}` (expected `small` or `full`)"
            )))
        }
    };
    complexes.extend([
        corpus::two_disjoint_points(),
        corpus::hollow_triangle(),
        corpus::two_disjoint_edges(),
        corpus::edge_and_point(),
    ]);

    let outcomes: Result<Vec<CaseOutcome>> = complexes
        .par_iter()
        .map(|sc| verify_one(sc, field))
        .collect();
    let outcomes = outcomes?;
    let degrees: u64 = outcomes.iter().map(|o| o.degrees).sum();
    let comparisons: u64 = outcomes.iter().map(|o| o.comparisons).sum();
    let mismatches: Vec<Value> = outcomes.into_iter().flat_map(|o| o.mismatches).collect();
    let ok = mismatches.is_empty();
    let text = format!(
        "{}: {} complexes, {} degrees, {} comparisons, {} mismatches",
        if ok { "ok" } else { "FAILED" },
        complexes.len(),
        degrees,
        comparisons,
        mismatches.len()
    );
    emit(
        out,
        &text,
        json!({
            "field": field.to_string(),
            "corpus": corpus_name,
            "complexes": complexes.len(),
            "degrees": degrees,
            "comparisons": comparisons,
            "mismatches": mismatches,
        }),
    );
    Ok(ok)
}
