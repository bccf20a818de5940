//! Command-line front end: loads an arrangement and a flat family, runs one analysis and
//! renders the report as text or JSON.

mod golden;

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use arrgroup::arrangement::io::{parse_arrangement, parse_family, parse_multinet, write_arrangement};
use arrgroup::arrangement::{
    auto_family, decone, multinet_verify, rank_two_flats, Arrangement, FlatFamily, FlatKind,
};
use arrgroup::corpus;
use arrgroup::presentation::{
    conjugation_free_check, derive_commuting_pairs, injectivity_test, projectivized_injectivity, randell_presentation,
    verify_certificate, verify_certificate_for, word_problem, InjectivityCertificate, InjectivityOutcome, Presentation,
    WordVerdict,
};
use arrgroup::topology::{
    bestvina_brady_basis, cokernel_rank, decomposability_test, discriminantal_poincare, finiteness_type,
    living_vertices, poincare_deletion_contraction, poincare_polynomial, BestvinaBradyBasis, Elimination,
};
use arrgroup::words::{enumerate_kernel_generators, stanford_decompose, Word, DEFAULT_COMMUTATOR_CAP, DEFAULT_MAX_WEIGHT};

pub use golden::{golden_outputs, GoldenOutputs};

#[derive(Parser, Debug)]
#[command(name = "arrgroup", version, about = "Flats, groups and finiteness of hyperplane arrangements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Arrangement JSON file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Named corpus arrangement, e.g. `x3-cone` or `acm(2,2,2)`.
    #[arg(long, global = true)]
    pub example: Option<String>,
    /// `auto` (multiple points and parallel classes) or a JSON file of label sets.
    #[arg(long, global = true, default_value = "auto")]
    pub flats: String,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_WEIGHT)]
    pub max_weight: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for the genericity retries of generated arrangements.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank-two flats and the selected family.
    Flats,
    /// Sweep presentation of a real line arrangement (a central one is deconed first).
    Presentation {
        /// Hyperplane to decone at; defaults to the last one.
        #[arg(long)]
        decone: Option<String>,
    },
    /// Injectivity of the map into the product of local groups.
    Inject {
        /// Presentation text to use instead of the sweep.
        #[arg(long)]
        presentation: Option<PathBuf>,
        /// Write the certificate as JSON.
        #[arg(long)]
        certificate_out: Option<PathBuf>,
        /// Check a certificate file instead of searching for one.
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Rank and torsion of the cokernel of the projectivized map.
    Cokernel,
    /// Living vertices of the incidence graph.
    Living {
        /// One label per family member, in family order; defaults to the best choice.
        #[arg(long, value_delimiter = ',')]
        eliminate: Option<Vec<String>>,
    },
    /// Finiteness type of the projectivized image.
    Finiteness,
    /// Bestvina-Brady free bases of the local groups.
    BbBasis,
    /// Poincare polynomial of the arrangement, or of a discriminantal arrangement.
    Poincare {
        #[arg(long, requires = "k")]
        mu: Option<usize>,
        #[arg(long, requires = "mu")]
        k: Option<usize>,
    },
    /// Checks a multinet partition.
    Multinet {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Transverse monic commutators up to `--max-weight`.
    KernelGens,
    /// Decides whether a word is trivial in the arrangement group.
    Word {
        /// Letters separated by spaces, e.g. `a1 a2^-1`.
        word: String,
        /// Also print the Stanford decomposition over all generators.
        #[arg(long)]
        stanford: bool,
    },
    /// Decomposability over Q through the holonomy Lie algebra.
    Decompose,
    /// Lists the corpus, or prints one entry with its golden outputs.
    Example { name: Option<String> },
}

/// Definite answers exit 0; INCONCLUSIVE, UNKNOWN and PARTIAL exit 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Definite,
    Undetermined,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Definite => 0,
            Status::Undetermined => 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub status: Status,
    pub text: String,
    pub json: Value,
}

impl Report {
    fn definite(text: String, json: Value) -> Self {
        Self { status: Status::Definite, text, json }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("serializable") + "\n",
        }
    }
}

fn load_arrangement(cli: &Cli) -> anyhow::Result<Arrangement> {
    match (&cli.input, &cli.example) {
        (Some(p), None) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(parse_arrangement(&text)?)
        }
        (None, Some(name)) => match corpus::parse_acm_name(name) {
            Some(ns) => Ok(corpus::acm_arrangement(&ns, cli.seed)?),
            None => Ok(corpus::example(name)?),
        },
        (Some(_), Some(_)) => bail!("give either --input or --example, not both"),
        (None, None) => bail!("an arrangement is required: --input <file> or --example <name>"),
    }
}

fn load_family(cli: &Cli, a: &Arrangement) -> anyhow::Result<FlatFamily> {
    if cli.flats == "auto" {
        return Ok(auto_family(a));
    }
    let text = fs::read_to_string(&cli.flats).with_context(|| format!("reading {}", cli.flats))?;
    Ok(parse_family(a, &text)?)
}

fn family_json(a: &Arrangement, x: &FlatFamily) -> Value {
    x.members()
        .iter()
        .map(|m| {
            let kind = match m.kind {
                FlatKind::Interior => "interior",
                FlatKind::ParallelClass => "parallel",
            };
            json!({ "kind": kind, "hyperplanes": m.labels(a) })
        })
        .collect()
}

fn family_text(a: &Arrangement, x: &FlatFamily) -> String {
    x.display(a).join(" ")
}

pub fn run(cli: &Cli) -> anyhow::Result<Report> {
    if let Command::Example { name } = &cli.command {
        return example(cli, name.as_deref());
    }
    if let Command::Poincare { mu: Some(mu), k: Some(k) } = &cli.command {
        let p = discriminantal_poincare(*mu, *k);
        return Ok(Report::definite(format!("discriminantal({mu},{k}): {p}\n"), json!({ "mu": mu, "k": k, "poincare": p })));
    }
    let a = load_arrangement(cli)?;
    let x = load_family(cli, &a)?;
    match &cli.command {
        Command::Flats => flats(&a, &x),
        Command::Presentation { decone: at } => presentation(&a, &x, at.as_deref()),
        Command::Inject { presentation, certificate_out, verify } => {
            inject(&a, &x, presentation.as_ref(), certificate_out.as_ref(), verify.as_ref())
        }
        Command::Cokernel => {
            let r = cokernel_rank(&a, &x)?;
            let text = format!(
                "cokernel rank {} ({}), components {}\nformula {}, Q-nullity {}, SNF zero factors {}\ninvariant factors [{}]\n",
                r.rank,
                if r.torsion_free { "torsion-free" } else { "torsion" },
                r.components,
                r.formula,
                r.nullity,
                r.snf_zero_count,
                r.invariant_factors.join(", ")
            );
            Ok(Report::definite(text, serde_json::to_value(&r)?))
        }
        Command::Living { eliminate } => {
            let choice = match eliminate {
                None => Elimination::Auto,
                Some(ls) => Elimination::Explicit(a.indices_of(ls)?),
            };
            let r = living_vertices(&a, &x, &choice)?;
            let mut text = format!("eliminated: {}\n", r.eliminated.join(", "));
            for v in &r.vertices {
                text.push_str(&format!("{} {}: {}\n", v.member, v.hyperplane, if v.living { "living" } else { "dead" }));
            }
            text.push_str(&format!("all living: {}\n", r.all_living));
            Ok(Report::definite(text, serde_json::to_value(&r)?))
        }
        Command::Finiteness => {
            let r = finiteness_type(&a, &x)?;
            let status = if r.is_definite() { Status::Definite } else { Status::Undetermined };
            let text = format!("{}\nliving counts {:?}, eliminated {}\n", r.verdict, r.living.living_counts, r.living.eliminated.join(", "));
            Ok(Report { status, text, json: serde_json::to_value(&r)? })
        }
        Command::BbBasis => {
            let r = bestvina_brady_basis(&a, &x, &Elimination::Auto)?;
            let mut text = String::new();
            let status = match &r {
                BestvinaBradyBasis::Applicable { factors, .. } => {
                    for f in factors {
                        text.push_str(&format!("{} (eliminated {}): {} -> {:?}\n", f.member, f.eliminated, f.basis.join(", "), f.images));
                    }
                    Status::Definite
                }
                BestvinaBradyBasis::NotApplicable { reason } => {
                    text.push_str(&format!("NOT APPLICABLE: {reason}\n"));
                    Status::Undetermined
                }
            };
            Ok(Report { status, text, json: serde_json::to_value(&r)? })
        }
        Command::Poincare { .. } => {
            let p = poincare_polynomial(&a);
            let q = poincare_deletion_contraction(&a);
            if p != q {
                bail!("Mobius route {p} and deletion-contraction {q} disagree");
            }
            Ok(Report::definite(format!("{p}\n"), json!({ "poincare": p })))
        }
        Command::Multinet { spec } => {
            let text = fs::read_to_string(spec).with_context(|| format!("reading {}", spec.display()))?;
            let r = multinet_verify(&a, &parse_multinet(&a, &text)?)?;
            let text = format!(
                "multinet: {}\nblock degree: {}\nbase points: {}\nconnectivity: {}\n",
                r.is_multinet, r.block_degree.detail, r.base_point_balance.detail, r.connectivity.detail
            );
            Ok(Report::definite(text, serde_json::to_value(&r)?))
        }
        Command::KernelGens => {
            let labels = a.labels();
            let gens: Vec<String> = enumerate_kernel_generators(&a, &x, cli.max_weight)?.iter().map(|c| c.format(&labels)).collect();
            let text = gens.iter().map(|g| format!("{g}\n")).collect();
            Ok(Report::definite(text, json!({ "max_weight": cli.max_weight, "generators": gens })))
        }
        Command::Word { word, stanford } => word_cmd(&a, &x, word, *stanford),
        Command::Decompose => {
            let r = decomposability_test(&a)?;
            let text = format!(
                "dim h2 {}, dim h3 {}, local sum {}\ndecomposable over Q: {}\n",
                r.dim_h2, r.dim_h3, r.local_sum, r.decomposable_over_q
            );
            Ok(Report::definite(text, serde_json::to_value(&r)?))
        }
        Command::Example { .. } => unreachable!("handled above"),
    }
}

fn flats(a: &Arrangement, x: &FlatFamily) -> anyhow::Result<Report> {
    let all: Vec<Vec<String>> = rank_two_flats(a, 2).iter().map(|f| f.labels(a)).collect();
    let mut text = String::from("rank-two flats:\n");
    for f in all.iter().filter(|f| f.len() >= 3) {
        text.push_str(&format!("  {{{}}} multiplicity {}\n", f.join(","), f.len()));
    }
    text.push_str(&format!("  {} double points\n", all.iter().filter(|f| f.len() == 2).count()));
    text.push_str(&format!("family: {}\n", family_text(a, x)));
    Ok(Report::definite(text, json!({ "rank_two_flats": all, "family": family_json(a, x) })))
}

/// Sweeps `a`, deconing first when it is central in dimension 3.
fn sweep_target(a: &Arrangement, at: Option<&str>) -> anyhow::Result<Arrangement> {
    if a.ambient_dim() == 2 {
        if let Some(l) = at {
            bail!("cannot decone a plane arrangement at {l}");
        }
        return Ok(a.clone());
    }
    if a.ambient_dim() == 3 && a.is_central() {
        let label = at.map(str::to_string).unwrap_or_else(|| a.label(a.len() - 1).to_string());
        return Ok(decone(a, &label)?);
    }
    bail!("the sweep needs lines in the plane or a central arrangement in dimension 3")
}

fn presentation(a: &Arrangement, x: &FlatFamily, at: Option<&str>) -> anyhow::Result<Report> {
    let d = sweep_target(a, at)?;
    let p = randell_presentation(&d)?;
    let labels = p.generators();
    let log = derive_commuting_pairs(&p);
    let pairs: Vec<String> = log.pairs().iter().map(|&(s, t)| format!("{{{},{}}}", labels[s], labels[t])).collect();
    let orders: Vec<String> = log
        .knowledge
        .flats()
        .values()
        .map(|o| format!("({})", o.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(",")))
        .collect();
    let mut text = p.to_text();
    text.push_str(&format!("commuting pairs: {}\n", pairs.join(" ")));
    text.push_str(&format!("local relations: {}\n", orders.join(" ")));
    let mut out = json!({
        "arrangement": d.name(),
        "generators": labels,
        "relators": p.relators().iter().map(|r| r.format(labels)).collect::<Vec<_>>(),
        "commuting_pairs": pairs,
        "local_orders": orders,
    });
    // the family refers to the input; it only applies when nothing was deconed
    if a.ambient_dim() == 2 {
        let cf = conjugation_free_check(&p, a, x)?;
        text.push_str(&format!("conjugation-free: raw {}, after normalization {}\n", cf.raw, cf.normalized));
        out["conjugation_free"] = json!({ "raw": cf.raw, "normalized": cf.normalized, "unresolved": cf.unresolved });
    }
    Ok(Report::definite(text, out))
}

fn certificate_summary(c: &InjectivityCertificate) -> String {
    let split = c.routes.iter().filter(|r| matches!(r.route, arrgroup::presentation::Route::Split { .. })).count();
    format!(
        "CERTIFIED: {} facts, {} transverse pairs, {} routes ({} by splitting)\n",
        c.facts.len(),
        c.transverse_pairs.len(),
        c.routes.len(),
        split
    )
}

fn inject(
    a: &Arrangement,
    x: &FlatFamily,
    pres: Option<&PathBuf>,
    out: Option<&PathBuf>,
    verify: Option<&PathBuf>,
) -> anyhow::Result<Report> {
    let user = match pres {
        Some(path) => Some(Presentation::parse(&fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)?),
        None => None,
    };
    if let Some(path) = verify {
        let c: InjectivityCertificate = serde_json::from_str(&fs::read_to_string(path)?).context("parsing certificate")?;
        match (&user, a.ambient_dim()) {
            (Some(p), _) => verify_certificate_for(p, &c)?,
            (None, 2) => verify_certificate_for(&randell_presentation(a)?, &c)?,
            (None, _) => verify_certificate(&c)?,
        }
        return Ok(Report::definite("certificate verified\n".into(), json!({ "verified": true })));
    }
    let (outcome, extra) = if a.ambient_dim() == 2 {
        let p = match user {
            Some(p) => p,
            None => randell_presentation(a)?,
        };
        (injectivity_test(a, x, &p)?, json!({}))
    } else {
        let r = projectivized_injectivity(a, x, user.as_ref())?;
        let extra = json!({
            "cone_hyperplane": r.cone_hyperplane,
            "decone_family": family_json(&r.decone, &r.family),
            "kernel_transfer": r.kernel_transfer,
            "rho_bar_injective": r.rho_bar_injective(),
        });
        (r.outcome, extra)
    };
    match outcome {
        InjectivityOutcome::Certified(c) => {
            if let Some(path) = out {
                fs::write(path, serde_json::to_string_pretty(&*c)? + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            let mut text = certificate_summary(&c);
            if let Some(h) = extra.get("cone_hyperplane") {
                text.push_str(&format!("deconed at {}; rho-bar injective\n", h.as_str().unwrap_or_default()));
            }
            let json = json!({ "verdict": "CERTIFIED", "certificate": *c, "projectivized": extra });
            Ok(Report::definite(text, json))
        }
        InjectivityOutcome::Inconclusive(reasons) => {
            let mut text = String::from("INCONCLUSIVE\n");
            for r in &reasons {
                text.push_str(&format!("  {r}\n"));
            }
            let json = json!({ "verdict": "INCONCLUSIVE", "reasons": reasons, "projectivized": extra });
            Ok(Report { status: Status::Undetermined, text, json })
        }
    }
}

fn word_cmd(a: &Arrangement, x: &FlatFamily, text: &str, stanford: bool) -> anyhow::Result<Report> {
    let labels = a.labels();
    let w = Word::parse(text, &labels)?;
    let cert = if a.ambient_dim() == 2 {
        injectivity_test(a, x, &randell_presentation(a)?)?.certificate().cloned()
    } else {
        None
    };
    let verdict = word_problem(&w, a, x, cert.as_ref())?;
    let (name, status) = match verdict {
        WordVerdict::Trivial => ("TRIVIAL", Status::Definite),
        WordVerdict::Nontrivial => ("NONTRIVIAL", Status::Definite),
        WordVerdict::Unknown => ("UNKNOWN", Status::Undetermined),
    };
    let mut out = format!("{name}\n");
    let mut json = json!({ "word": w.format(&labels), "verdict": name, "certified": cert.is_some() });
    if stanford {
        let gens: Vec<usize> = (0..a.len()).collect();
        let blocks = stanford_decompose(&w, &gens, DEFAULT_COMMUTATOR_CAP)?;
        let shown: Vec<Value> = blocks
            .iter()
            .map(|b| {
                json!({
                    "support": b.support.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>(),
                    "factors": b.factors.iter().map(|c| c.format(&labels)).collect::<Vec<_>>(),
                })
            })
            .collect();
        for b in &shown {
            out.push_str(&format!("{}: {}\n", b["support"], b["factors"]));
        }
        json["stanford"] = Value::Array(shown);
    }
    Ok(Report { status, text: out, json })
}

fn example(cli: &Cli, name: Option<&str>) -> anyhow::Result<Report> {
    let Some(name) = name else {
        let text = corpus::CORPUS.iter().map(|n| format!("{n}\n")).collect::<String>() + "acm(n1,...,nr)\n";
        return Ok(Report::definite(text, json!({ "corpus": corpus::CORPUS })));
    };
    let a = match corpus::parse_acm_name(name) {
        Some(ns) => corpus::acm_arrangement(&ns, cli.seed)?,
        None => corpus::example(name)?,
    };
    let g = golden_outputs(&a).map_err(|e| anyhow!("{name}: {e}"))?;
    let mut text = write_arrangement(&a);
    text.push_str(&g.to_text());
    let file: Value = serde_json::from_str(&write_arrangement(&a))?;
    Ok(Report::definite(text, json!({ "arrangement": file, "golden": g })))
}
