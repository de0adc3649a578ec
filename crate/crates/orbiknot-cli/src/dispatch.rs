//! Argument parsing, file I/O and command dispatch.
//!
//! Every command reads JSON inputs, runs pure library operations, and prints
//! a JSON document (DOT for the poset export, simple `key,value` lines under
//! `--format csv`). Identical inputs produce byte-identical outputs for every
//! worker count: search results are merged in a schedule-independent order.

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use orbiknot::construct::TwoBridgeParams;
use orbiknot::homsearch::{self, SearchOptions};
use orbiknot::invariants;
use orbiknot::montesinos::{self, Fraction, LinkClass, MontesinosLink};
use orbiknot::pd::PdCode;
use orbiknot::presentation::{orbifold_quotient, wirtinger, GroupPresentation};
use orbiknot::symunion;
use orbiknot::triangle::{self, TriangleParams};
use orbiknot::verdict::DominationVerdict;
use orbiknot::{fixtures, Error, Result};

/// Resolved run configuration shared by all commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub budget: u64,
    pub workers: Option<usize>,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Dot,
}

#[derive(Parser, Debug)]
#[command(
    name = "orbiknot",
    about = "Exact link invariants and finite-quotient domination certificates",
    version
)]
struct Cli {
    /// Node budget for homomorphism searches (overrides ORBIKNOT_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads for search parallelism (default: rayon's choice).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Output format; csv covers scalar reports, dot only the poset export.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Link determinant of a diagram.
    Det { pd: PathBuf },
    /// Homology of the 2-fold branched cover.
    H1 { pd: PathBuf },
    /// Fox colorings over Z/n.
    Color {
        pd: PathBuf,
        #[arg(short = 'n', long = "modulus")]
        n: u64,
        /// Include a dihedrally surjective witness coloring if one exists.
        #[arg(long)]
        witness: bool,
    },
    /// Enumerate homomorphisms from a diagram's group into a finite group.
    Hom {
        pd: PathBuf,
        #[arg(long)]
        target: String,
        /// Quotient by meridian squares first (π-orbifold group).
        #[arg(long)]
        orbifold: bool,
        /// Restrict meridian images to involutions even without --orbifold.
        #[arg(long)]
        involutions: bool,
        /// List only surjections.
        #[arg(long)]
        epi_only: bool,
        /// Print counts only, no assignment lists.
        #[arg(long)]
        count: bool,
    },
    /// First battery quotient of dst that src misses (non-domination witness).
    Evidence {
        src: PathBuf,
        dst: PathBuf,
        #[arg(long, default_value = "default")]
        battery: String,
    },
    /// Montesinos calculus.
    Montesinos {
        #[command(subcommand)]
        cmd: MontesinosCmd,
    },
    /// Triangle group classification and obstructions.
    Triangle {
        #[command(subcommand)]
        cmd: TriangleCmd,
    },
    /// π-minimality certifiers.
    Minimal {
        #[command(subcommand)]
        cmd: MinimalCmd,
    },
    /// Symmetric union reports.
    Symunion {
        #[command(subcommand)]
        cmd: SymunionCmd,
    },
    /// Candidate-domination DAG over normalized Montesinos links.
    Poset(PosetArgs),
    /// Write the fixture diagrams shipped with the library.
    Fixtures {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum MontesinosCmd {
    /// Determinant from the tangle data.
    Det { fractions: String },
    /// Seifert data and canonical tangle sequence.
    Normalize { fractions: String },
    /// Equality of two Montesinos links (r >= 3 each).
    Equiv { a: String, b: String },
    /// Necessary-condition filter for domination targets.
    Filter {
        #[arg(long)]
        src: String,
        #[arg(long)]
        candidate: String,
    },
}

#[derive(Subcommand, Debug)]
enum TriangleCmd {
    Classify { a: u64, b: u64, c: u64 },
    Obstruct {
        a: u64,
        b: u64,
        c: u64,
        a2: u64,
        b2: u64,
        c2: u64,
    },
}

#[derive(Subcommand, Debug)]
enum MinimalCmd {
    Torus { p: u64, q: u64 },
    Montesinos { fractions: String },
}

#[derive(Subcommand, Debug)]
enum SymunionCmd {
    Report {
        pd: PathBuf,
        /// Class descriptor of the knot, e.g. `montesinos:1/3,2/3,4/5`.
        #[arg(long = "class")]
        class: Option<String>,
    },
}

#[derive(Args, Debug)]
struct PosetArgs {
    #[arg(long = "alpha-max")]
    alpha_max: u64,
    #[arg(long = "r-max")]
    r_max: usize,
    #[arg(long)]
    out: PathBuf,
}

/// Entry point: parse arguments, run, return the serialized output.
pub fn run(args: &[String]) -> Result<String> {
    let mut argv = vec!["orbiknot".to_string()];
    argv.extend(args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e)
            if e.kind() == clap::error::ErrorKind::DisplayHelp
                || e.kind() == clap::error::ErrorKind::DisplayVersion =>
        {
            return Ok(e.to_string());
        }
        Err(e) => return Err(Error::InvalidInput(e.to_string())),
    };
    let budget = cli
        .budget
        .or_else(|| {
            std::env::var("ORBIKNOT_BUDGET")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(homsearch::DEFAULT_BUDGET);
    if budget == 0 {
        return Err(Error::InvalidInput("budget must be positive".into()));
    }
    let config = RunConfig {
        budget,
        workers: cli.workers,
        format: cli.format,
    };
    match config.workers {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))?;
            pool.install(|| execute(&cli.command, &config))
        }
        None => execute(&cli.command, &config),
    }
}

fn search_options(config: &RunConfig, meridians_to_involutions: bool) -> SearchOptions {
    SearchOptions {
        meridians_to_involutions,
        budget: config.budget,
    }
}

#[derive(Serialize, Deserialize)]
struct DetOut {
    det: u64,
}

#[derive(Serialize, Deserialize)]
struct H1Out {
    torsion: Vec<u64>,
    free_rank: usize,
}

#[derive(Serialize, Deserialize)]
struct ColorOut {
    colorings: ColoringOut,
}

#[derive(Serialize, Deserialize)]
struct ColoringOut {
    modulus: u64,
    count: u64,
    basis: Vec<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<u64>>,
    criterion_dependent: bool,
}

#[derive(Serialize, Deserialize)]
struct HomOut {
    target: String,
    hom_count: u64,
    epi_count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    assignments: Option<Vec<Vec<u16>>>,
}

#[derive(Serialize, Deserialize)]
struct EvidenceOut {
    witness: Option<String>,
    checked: Vec<CheckOut>,
}

#[derive(Serialize, Deserialize)]
struct CheckOut {
    target: String,
    dst_epi: Option<bool>,
    src_epi: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct NormalizeOut {
    e0: String,
    exceptional_fibers: Vec<String>,
    canonical: Vec<String>,
    det: u64,
    elliptic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    two_bridge: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct SymunionOut {
    det: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    gate: Option<String>,
    candidates: Vec<CandidateOut>,
    survivors: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct CandidateOut {
    name: String,
    p: u64,
    q: u64,
    det: u64,
    survived: bool,
    evidence: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    excluded_by: Option<String>,
    budget_errors: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PosetOut {
    nodes: usize,
    edges: usize,
    out: String,
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string(value).map_err(|e| Error::InvalidInput(format!("serialize: {e}")))
}

fn execute(cmd: &Command, config: &RunConfig) -> Result<String> {
    if config.format == OutputFormat::Dot && !matches!(cmd, Command::Poset(_)) {
        return Err(Error::InvalidInput(
            "dot output is only available for `poset`".into(),
        ));
    }
    match cmd {
        Command::Det { pd } => {
            let code = read_pd(pd)?;
            let out = DetOut {
                det: invariants::determinant(&code)?,
            };
            match config.format {
                OutputFormat::Csv => Ok(format!("det,{}", out.det)),
                _ => to_json(&out),
            }
        }
        Command::H1 { pd } => {
            let code = read_pd(pd)?;
            let h1 = invariants::h1_double_cover(&code)?;
            let out = H1Out {
                torsion: h1.torsion,
                free_rank: h1.free_rank,
            };
            match config.format {
                OutputFormat::Csv => Ok(format!(
                    "torsion,{}\nfree_rank,{}",
                    out.torsion
                        .iter()
                        .map(|t| t.to_string())
                        .collect::<Vec<_>>()
                        .join(";"),
                    out.free_rank
                )),
                _ => to_json(&out),
            }
        }
        Command::Color { pd, n, witness } => {
            let code = read_pd(pd)?;
            let space = invariants::fox_colorings(&code, *n)?;
            let count = u64::try_from(space.count)
                .map_err(|_| Error::InvalidInput("coloring count overflows u64".into()))?;
            let witness_coloring = if *witness {
                invariants::dihedral_epi_exists(&code, *n)?.witness
            } else {
                None
            };
            let out = ColorOut {
                colorings: ColoringOut {
                    modulus: *n,
                    count,
                    basis: space.basis.iter().map(|(v, _)| v.clone()).collect(),
                    witness: witness_coloring,
                    criterion_dependent: *n % 2 == 0 && code.component_count()? >= 2,
                },
            };
            match config.format {
                OutputFormat::Csv => Ok(format!("modulus,{}\ncount,{}", *n, count)),
                _ => to_json(&out),
            }
        }
        Command::Hom {
            pd,
            target,
            orbifold,
            involutions,
            epi_only,
            count,
        } => {
            let pres = read_presentation_like(pd, *orbifold)?;
            let group = homsearch::group_by_name(target)?;
            let opts = search_options(config, *orbifold || *involutions);
            let homs = homsearch::all_homomorphisms(&pres, &group, &opts)?;
            let epis: Vec<Vec<u16>> = homs
                .iter()
                .filter(|image| group.generates(image))
                .cloned()
                .collect();
            let (hom_count, epi_count) = (homs.len() as u64, epis.len() as u64);
            let assignments = if *count {
                None
            } else if *epi_only {
                Some(epis)
            } else {
                Some(homs)
            };
            let out = HomOut {
                target: group.name.clone(),
                hom_count,
                epi_count,
                assignments,
            };
            match config.format {
                OutputFormat::Csv => Ok(format!(
                    "target,{}\nhom_count,{}\nepi_count,{}",
                    out.target, hom_count, epi_count
                )),
                _ => to_json(&out),
            }
        }
        Command::Evidence { src, dst, battery } => {
            if battery != "default" {
                return Err(Error::InvalidInput(format!(
                    "unknown battery `{battery}`; only `default` is available"
                )));
            }
            let src_pres = read_presentation_like(src, true)?;
            let dst_pres = read_presentation_like(dst, true)?;
            let battery = homsearch::default_battery();
            let opts = search_options(config, true);
            let report =
                homsearch::non_domination_evidence(&src_pres, &dst_pres, &battery, &opts)?;
            let out = EvidenceOut {
                witness: report.witness,
                checked: report
                    .checked
                    .into_iter()
                    .map(|c| CheckOut {
                        target: c.target,
                        dst_epi: c.dst_epi,
                        src_epi: c.src_epi,
                        error: c.error,
                    })
                    .collect(),
            };
            match config.format {
                OutputFormat::Csv => Ok(format!(
                    "witness,{}",
                    out.witness.clone().unwrap_or_else(|| "none".into())
                )),
                _ => to_json(&out),
            }
        }
        Command::Montesinos { cmd } => montesinos_cmd(cmd, config),
        Command::Triangle { cmd } => triangle_cmd(cmd, config),
        Command::Minimal { cmd } => minimal_cmd(cmd, config),
        Command::Symunion { cmd } => symunion_cmd(cmd, config),
        Command::Poset(args) => poset_cmd(args, config),
        Command::Fixtures { out } => fixtures_cmd(out),
    }
}

fn montesinos_cmd(cmd: &MontesinosCmd, config: &RunConfig) -> Result<String> {
    match cmd {
        MontesinosCmd::Det { fractions } => {
            let m = MontesinosLink::parse(fractions)?;
            let out = DetOut { det: m.det() };
            match config.format {
                OutputFormat::Csv => Ok(format!("det,{}", out.det)),
                _ => to_json(&out),
            }
        }
        MontesinosCmd::Normalize { fractions } => {
            let m = MontesinosLink::parse(fractions)?;
            let (si, canonical) = m.normalize();
            // r <= 2 closes to a 2-bridge link; the e0 = 0 degenerate pair
            // has no Schubert form and reports no reroute
            let two_bridge = m
                .as_two_bridge()
                .and_then(|tb| tb.ok())
                .map(|tb| tb.to_string());
            let out = NormalizeOut {
                e0: fraction_string(&si.e0),
                exceptional_fibers: si.exceptional_fibers.iter().map(fraction_string).collect(),
                canonical: canonical.iter().map(fraction_string).collect(),
                det: m.det(),
                elliptic: m.is_elliptic(),
                two_bridge,
            };
            to_json(&out)
        }
        MontesinosCmd::Equiv { a, b } => {
            let ma = MontesinosLink::parse(a)?;
            let mb = MontesinosLink::parse(b)?;
            let eq = montesinos::equivalent(&ma, &mb)?;
            to_json(&serde_json::json!({ "equivalent": eq }))
        }
        MontesinosCmd::Filter { src, candidate } => {
            let m = MontesinosLink::parse(src)?;
            let cand = parse_descriptor(candidate)?;
            let verdict = montesinos::theorem13_filter(&m, &cand)?;
            to_json(&verdict)
        }
    }
}

fn triangle_cmd(cmd: &TriangleCmd, _config: &RunConfig) -> Result<String> {
    match cmd {
        TriangleCmd::Classify { a, b, c } => {
            let t = TriangleParams::new(*a, *b, *c)?;
            let class = match t.classify() {
                triangle::TriangleType::Elliptic => "elliptic",
                triangle::TriangleType::Euclidean => "euclidean",
                triangle::TriangleType::Hyperbolic => "hyperbolic",
            };
            to_json(&serde_json::json!({
                "type": class,
                "minus_chi": fraction_string(&t.minus_chi()),
                "elliptic_order": t.elliptic_order(),
            }))
        }
        TriangleCmd::Obstruct {
            a,
            b,
            c,
            a2,
            b2,
            c2,
        } => {
            let src = TriangleParams::new(*a, *b, *c)?;
            let dst = TriangleParams::new(*a2, *b2, *c2)?;
            let verdict = match triangle::epi_obstruction(&src, &dst) {
                triangle::EpiObstruction::ExcludedByChi => "excluded-by-chi",
                triangle::EpiObstruction::ExcludedByTorsion => "excluded-by-torsion",
                triangle::EpiObstruction::NotExcluded => "not-excluded",
            };
            to_json(&serde_json::json!({
                "obstruction": verdict,
                "src_minus_chi": fraction_string(&src.minus_chi()),
                "dst_minus_chi": fraction_string(&dst.minus_chi()),
                "note": "the torsion divisibility rule is a heuristic generalization; verdicts never assert existence",
            }))
        }
    }
}

fn minimal_cmd(cmd: &MinimalCmd, _config: &RunConfig) -> Result<String> {
    let verdict = match cmd {
        MinimalCmd::Torus { p, q } => triangle::torus_knot_pi_minimal(*p, *q)?,
        MinimalCmd::Montesinos { fractions } => {
            let m = MontesinosLink::parse(fractions)?;
            triangle::montesinos_pi_minimal(&m)?
        }
    };
    to_json(&verdict)
}

fn symunion_cmd(cmd: &SymunionCmd, config: &RunConfig) -> Result<String> {
    match cmd {
        SymunionCmd::Report { pd, class } => {
            let code = read_pd(pd)?;
            let class = class.as_deref().map(parse_descriptor).transpose()?;
            let battery = homsearch::default_battery();
            let opts = search_options(config, true);
            let report =
                symunion::partial_knot_report(&code, class.as_ref(), &battery, &opts)?;
            let candidates: Vec<CandidateOut> = report
                .candidates
                .iter()
                .map(|c| CandidateOut {
                    name: c.params.to_string(),
                    p: c.params.p,
                    q: c.params.q,
                    det: c.det,
                    survived: c.survived(),
                    evidence: c.evidence.clone(),
                    excluded_by: c.excluded_by.clone(),
                    budget_errors: c.budget_errors.clone(),
                })
                .collect();
            let survivors = report
                .survivors()
                .iter()
                .map(|c| c.params.to_string())
                .collect();
            let out = SymunionOut {
                det: report.det,
                gate: report.gate,
                candidates,
                survivors,
            };
            to_json(&out)
        }
    }
}

fn poset_cmd(args: &PosetArgs, _config: &RunConfig) -> Result<String> {
    if args.r_max < 3 {
        return Err(Error::InvalidInput(
            "poset needs --r-max at least 3; the class filter applies to sources with r >= 3"
                .into(),
        ));
    }
    if args.alpha_max < 2 {
        return Err(Error::InvalidInput("poset needs --alpha-max at least 2".into()));
    }
    // normalized slots β/α, 0 < β < α <= alpha_max
    let mut slots: BTreeSet<Fraction> = BTreeSet::new();
    for alpha in 2..=args.alpha_max as i64 {
        for beta in 1..alpha {
            // Fraction::new reduces, so non-coprime pairs collapse into the set
            slots.insert(Fraction::new(beta, alpha));
        }
    }
    let slots: Vec<Fraction> = slots.into_iter().collect();
    let mut canonical: BTreeSet<Vec<Fraction>> = BTreeSet::new();
    for r in 3..=args.r_max {
        let mut idx = vec![0usize; r];
        loop {
            let tangles: Vec<_> = idx.iter().map(|&i| slots[i]).collect();
            let m = MontesinosLink::new(tangles).expect("slots are valid");
            canonical.insert(m.canonical_sequence());
            let mut i = 0;
            loop {
                if i == r {
                    break;
                }
                idx[i] += 1;
                if idx[i] < slots.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == r {
                break;
            }
        }
    }
    let links: Vec<MontesinosLink> = canonical
        .iter()
        .map(|seq| MontesinosLink::new(seq.clone()).expect("canonical data is valid"))
        .collect();
    let mut dot = String::from("digraph domination_candidates {\n");
    dot.push_str("  rankdir=TB;\n");
    for (i, m) in links.iter().enumerate() {
        dot.push_str(&format!(
            "  n{} [label=\"{} det={}\"];\n",
            i,
            LinkClass::Montesinos(m.clone()).describe(),
            m.det()
        ));
    }
    let mut edges = 0usize;
    for (i, src) in links.iter().enumerate() {
        for (j, dst) in links.iter().enumerate() {
            if i == j {
                continue;
            }
            let verdict = montesinos::theorem13_filter(src, &LinkClass::Montesinos(dst.clone()))?;
            let style = match &verdict {
                DominationVerdict::Excluded { .. } => "dashed",
                DominationVerdict::Consistent { .. } => "solid",
                DominationVerdict::Certified { .. } => "bold",
            };
            let label = match &verdict {
                DominationVerdict::Excluded { rule, .. } => rule.clone(),
                DominationVerdict::Consistent { .. } => "consistent".into(),
                DominationVerdict::Certified { rule } => rule.clone(),
            };
            dot.push_str(&format!(
                "  n{i} -> n{j} [style={style}, label=\"{label}\"];\n"
            ));
            edges += 1;
        }
    }
    dot.push_str("}\n");
    std::fs::write(&args.out, &dot)
        .map_err(|e| Error::InvalidInput(format!("write {}: {e}", args.out.display())))?;
    to_json(&PosetOut {
        nodes: links.len(),
        edges,
        out: args.out.display().to_string(),
    })
}

fn fixtures_cmd(out_dir: &Path) -> Result<String> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| Error::InvalidInput(format!("create {}: {e}", out_dir.display())))?;
    let mut written = Vec::new();
    for f in fixtures::all() {
        let path = out_dir.join(format!("{}.pd.json", f.name));
        let body = serde_json::to_string_pretty(&f.pd)
            .map_err(|e| Error::InvalidInput(format!("serialize {}: {e}", f.name)))?;
        std::fs::write(&path, body + "\n")
            .map_err(|e| Error::InvalidInput(format!("write {}: {e}", path.display())))?;
        written.push(f.name.to_string());
    }
    to_json(&serde_json::json!({ "written": written, "dir": out_dir.display().to_string() }))
}

fn fraction_string(f: &Fraction) -> String {
    format!("{}/{}", f.numer(), f.denom())
}

/// Read a PD code from a JSON file.
pub fn read_pd(path: &Path) -> Result<PdCode> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("read {}: {e}", path.display())))?;
    let code: PdCode = serde_json::from_str(&body)
        .map_err(|e| Error::InvalidInput(format!("parse {}: {e}", path.display())))?;
    let report = code.validate();
    if !report.is_valid() {
        return Err(Error::InvalidDiagram(report.violations.join("; ")));
    }
    Ok(code)
}

/// Read a group presentation, either directly or as the (orbifold) Wirtinger
/// presentation of a PD file. Presentations without marked meridians are
/// used as given.
fn read_presentation_like(path: &Path, orbifold: bool) -> Result<GroupPresentation> {
    let body = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("read {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&body)
        .map_err(|e| Error::InvalidInput(format!("parse {}: {e}", path.display())))?;
    let pres = if value.get("crossings").is_some() {
        let code: PdCode = serde_json::from_value(value)
            .map_err(|e| Error::InvalidInput(format!("parse {}: {e}", path.display())))?;
        wirtinger(&code)?
    } else {
        serde_json::from_value(value)
            .map_err(|e| Error::InvalidInput(format!("parse {}: {e}", path.display())))?
    };
    if orbifold && !pres.meridians.is_empty() {
        orbifold_quotient(&pres)
    } else {
        Ok(pres)
    }
}

/// Descriptor grammar: `unknot`, `twobridge:p/q`, `montesinos:b/a,...`,
/// `torus:p,q`, `seifert:tag`, and `sum:part+part+...` of the former.
pub fn parse_descriptor(s: &str) -> Result<LinkClass> {
    let s = s.trim();
    if s == "unknot" {
        return Ok(LinkClass::Unknot);
    }
    if let Some(rest) = s.strip_prefix("sum:") {
        let factors = rest
            .split('+')
            .map(|part| parse_descriptor(part.trim()))
            .collect::<Result<Vec<_>>>()?;
        let class = LinkClass::ConnectedSum(factors);
        class.validate()?;
        return Ok(class);
    }
    if let Some(rest) = s.strip_prefix("twobridge:") {
        let (p, q) = rest
            .split_once('/')
            .ok_or_else(|| Error::InvalidInput(format!("bad 2-bridge fraction `{rest}`")))?;
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad p in `{rest}`")))?;
        let q: u64 = q
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad q in `{rest}`")))?;
        return Ok(LinkClass::TwoBridge(TwoBridgeParams::new(p, q)?));
    }
    if let Some(rest) = s.strip_prefix("montesinos:") {
        return Ok(LinkClass::Montesinos(MontesinosLink::parse(rest)?));
    }
    if let Some(rest) = s.strip_prefix("torus:") {
        let (p, q) = rest
            .split_once(',')
            .ok_or_else(|| Error::InvalidInput(format!("bad torus parameters `{rest}`")))?;
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad p in `{rest}`")))?;
        let q: u64 = q
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad q in `{rest}`")))?;
        let class = LinkClass::TorusKnot(p, q);
        class.validate()?;
        return Ok(class);
    }
    if let Some(rest) = s.strip_prefix("seifert:") {
        return Ok(LinkClass::SeifertLink(rest.to_string()));
    }
    Err(Error::InvalidInput(format!("unknown descriptor `{s}`")))
}

/// Convenience used by tests: run and capture both output and exit code.
pub fn run_capture(args: &[&str]) -> (Option<String>, u8) {
    let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    match run(&owned) {
        Ok(out) => (Some(out), 0),
        Err(e) => (None, crate::exit_code(&e)),
    }
}
