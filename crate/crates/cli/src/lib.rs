//! Command-line front end: argument parsing, the reproduction catalog and
//! report rendering. `main.rs` only forwards to [`run`].

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use mincomp::oracle::{DEFAULT_ORACLE_BOUND, HARD_ORACLE_CAP};
use mincomp::sweep::{
    prop_fini_sweep, remark_family_sweep, robust_family_sweep, soundness_groups, soundness_sweep,
    stabilizer_identity_exhaustive, stabilizer_identity_random,
};
use mincomp::{
    check_cardinality, check_prop_coset, check_prop_fini, check_thm_cminusc, check_thm_f_avoids,
    check_thm_q_finite, check_thm_single_coset, finite_quotient, oracle_minimality_status, parse_structured,
    remark_family, robust_family, run_all_checkers, verdict, z_check, z_check_all, z_check_cofinite, Certificate,
    FiniteGroup, GroupSubset, Membership, OracleConfig, OracleReport, OracleSide, OracleStatus, StructuredZSet,
    Subgroup, SweepSummary, Tag, TheoremId, TheoremInstance, Verdict, VerdictOptions, VerdictReport, ZSetSpec,
};

pub const WORKERS_ENV: &str = "MINCOMP_WORKERS";

const CATALOG: &str = include_str!("catalog.toml");

#[derive(Parser, Debug)]
#[command(name = "mincomp", version, about = "Minimal complement certificates and exhaustive checks")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest group order the oracle will search.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_BOUND, value_parser = parse_bound)]
    pub bound: usize,
    /// Worker threads for the oracle and sweeps.
    #[arg(long, global = true, env = WORKERS_ENV, default_value_t = 1)]
    pub workers: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run certificate checkers on an explicit decomposition.
    Check(CheckArgs),
    /// Decide minimality by exhaustive search.
    Oracle(OracleArgs),
    /// Search for a decomposition that some checker certifies.
    Verdict(VerdictArgs),
    /// Check a structured subset of the integers.
    Zcheck(ZcheckArgs),
    /// Print membership of a structured subset of the integers over a window.
    Show(ShowArgs),
    /// Build and check a member of a parametrized family.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Run the built-in catalog of worked examples.
    Reproduce(ReproduceArgs),
    /// Run the exhaustive checker-versus-oracle suites.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExpectVerdict {
    NonMinimal,
    Inconclusive,
}

impl ExpectVerdict {
    fn matches(self, non_minimal: bool) -> bool {
        non_minimal == (self == ExpectVerdict::NonMinimal)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExpectStatus {
    Minimal,
    NotMinimal,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long)]
    pub group: String,
    /// Ambient subgroup; defaults to the whole group.
    #[arg(long)]
    pub h: Option<String>,
    /// Normal subgroup of H; defaults to the trivial subgroup.
    #[arg(long)]
    pub k: Option<String>,
    #[arg(long)]
    pub c: String,
    #[arg(long, default_value = "{}")]
    pub e: String,
    #[arg(long, default_value = "{}")]
    pub f: String,
    /// A single theorem, or every applicable one when omitted.
    #[arg(long)]
    pub theorem: Option<TheoremId>,
    #[arg(long, value_enum)]
    pub expect: Option<ExpectVerdict>,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub set: String,
    #[arg(long, default_value = "both")]
    pub side: OracleSide,
    #[arg(long, value_enum)]
    pub expect: Option<ExpectStatus>,
}

#[derive(Args, Debug)]
pub struct VerdictArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub set: String,
    /// Confirm certificates by exhaustive search.
    #[arg(long)]
    pub oracle: bool,
    #[arg(long, value_enum)]
    pub expect: Option<ExpectVerdict>,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct ZSource {
    /// Structured set as inline JSON.
    #[arg(long)]
    pub spec: Option<String>,
    /// Structured set read from a JSON file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// `hZ` minus the points given by `--removed`.
    #[arg(long, requires = "removed")]
    pub cofinite: Option<u64>,
}

#[derive(Args, Debug)]
pub struct ZcheckArgs {
    #[command(flatten)]
    pub source: ZSource,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub removed: Vec<i64>,
    #[arg(long)]
    pub theorem: Option<TheoremId>,
    #[arg(long, value_enum)]
    pub expect: Option<ExpectVerdict>,
}

#[derive(Args, Debug)]
pub struct ShowArgs {
    #[arg(long)]
    pub spec: Option<String>,
    #[arg(long, conflicts_with = "spec")]
    pub file: Option<PathBuf>,
    /// Half-width of the window around zero.
    #[arg(long, default_value_t = 40)]
    pub window: i64,
}

#[derive(Subcommand, Debug)]
pub enum FamilyCommand {
    /// `p - a` residue classes mod a prime `p`, sparse points elsewhere.
    Robust {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: u64,
        /// Residues in `1..=p` forming the periodic part.
        #[arg(long, value_delimiter = ',')]
        residues: Vec<u64>,
        /// Tags for the other classes as `r:tag`; unlisted ones are sparse.
        #[arg(long, value_delimiter = ',')]
        tags: Vec<String>,
        /// Also search the exact quotient mod `p`.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum)]
        expect: Option<ExpectVerdict>,
    },
    /// Even classes mod `2n` with the classes `2r` removed.
    Remark {
        #[arg(long)]
        n: u64,
        #[arg(long, value_delimiter = ',')]
        removed: Vec<u64>,
        /// Tags for the removed classes as `class:tag`.
        #[arg(long, value_delimiter = ',')]
        tags: Vec<String>,
        #[arg(long, value_enum)]
        expect: Option<ExpectVerdict>,
    },
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    /// Run a single catalog item.
    #[arg(long)]
    pub item: Option<String>,
    /// List the catalog without running it.
    #[arg(long)]
    pub list: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    CardinalityBound,
    Soundness,
    Stabilizer,
    Robust,
    Remark,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Suites to run; all of them when omitted.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub suite: Vec<Suite>,
}

fn parse_bound(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n == 0 || n > HARD_ORACLE_CAP {
        return Err(format!("must be between 1 and {HARD_ORACLE_CAP}"));
    }
    Ok(n)
}

/// Rendered output plus whether every requested expectation held.
#[derive(Debug)]
pub struct Outcome {
    pub output: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub group: String,
    pub certificates: Vec<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ZCheckReport {
    pub set: String,
    pub certificates: Vec<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WindowReport {
    pub set: String,
    pub points: Vec<(i64, Membership)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyReport {
    pub set: ZSetSpec,
    pub certificate: Certificate,
    pub quotient: Option<OracleReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ItemStatus {
    Pass,
    Fail,
    OutOfScope,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ItemResult {
    pub id: String,
    pub title: String,
    pub status: ItemStatus,
    pub theorem: Option<TheoremId>,
    pub certificate: Option<Certificate>,
    pub oracle: Option<OracleReport>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReproduceReport {
    pub items: Vec<ItemResult>,
}

impl ReproduceReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.status != ItemStatus::Fail)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepReport {
    pub suites: Vec<SweepSummary>,
}

#[derive(Clone, Debug, Deserialize)]
struct Catalog {
    item: Vec<CatalogItem>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum ItemKind {
    Zset,
    Cofinite,
    Finite,
    RemarkFamily,
    RobustFamily,
    OutOfScope,
}

/// One row of the catalog; which fields are needed depends on `kind`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogItem {
    pub id: String,
    pub title: String,
    kind: ItemKind,
    theorem: Option<TheoremId>,
    set: Option<String>,
    group: Option<String>,
    quotient: Option<u64>,
    h: Option<u64>,
    n: Option<u64>,
    p: Option<u64>,
    a: Option<u64>,
    #[serde(default)]
    removed: Vec<i64>,
    #[serde(default)]
    residues: Vec<u64>,
    note: Option<String>,
}

pub fn catalog() -> anyhow::Result<Vec<CatalogItem>> {
    let c: Catalog = toml::from_str(CATALOG).context("embedded catalog")?;
    Ok(c.item)
}

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let cfg = OracleConfig::with_bound(cli.bound).with_workers(cli.workers);
    let fmt = cli.format;
    match &cli.command {
        Command::Check(a) => run_check(a, fmt),
        Command::Oracle(a) => run_oracle(a, &cfg, fmt),
        Command::Verdict(a) => run_verdict(a, &cfg, fmt),
        Command::Zcheck(a) => run_zcheck(a, fmt),
        Command::Show(a) => run_show(a, fmt),
        Command::Family(f) => run_family(f, &cfg, fmt),
        Command::Reproduce(a) => run_reproduce(a, &cfg, fmt),
        Command::Sweep(a) => run_sweep(a, &cfg, fmt),
    }
}

fn structured<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn render<T: Serialize>(fmt: Format, value: &T, text: impl FnOnce(&T) -> String) -> anyhow::Result<String> {
    match fmt {
        Format::Text => Ok(text(value)),
        Format::Structured => structured(value),
    }
}

fn group(spec: &str) -> anyhow::Result<Arc<FiniteGroup>> {
    FiniteGroup::parse_and_construct(spec).with_context(|| format!("group {spec:?}"))
}

fn subset(g: &Arc<FiniteGroup>, spec: &str, what: &str) -> anyhow::Result<GroupSubset> {
    GroupSubset::parse(g, spec).with_context(|| format!("--{what} {spec:?}"))
}

fn subgroup(g: &Arc<FiniteGroup>, spec: &str, what: &str) -> anyhow::Result<Subgroup> {
    Subgroup::from_subset(subset(g, spec, what)?).with_context(|| format!("--{what} {spec:?}"))
}

fn run_check(a: &CheckArgs, fmt: Format) -> anyhow::Result<Outcome> {
    let g = group(&a.group)?;
    let h = match &a.h {
        Some(s) => subgroup(&g, s, "h")?,
        None => Subgroup::whole(&g),
    };
    let k = match &a.k {
        Some(s) => subgroup(&g, s, "k")?,
        None => Subgroup::trivial(&g),
    };
    let c = subset(&g, &a.c, "c")?;
    let e = subset(&g, &a.e, "e")?;
    let f = subset(&g, &a.f, "f")?;
    let certificates = match a.theorem {
        Some(TheoremId::PropFini) => vec![check_prop_fini(&g, &h, &c)?],
        Some(TheoremId::CardinalityObstruction) => vec![check_cardinality(&g, &h, &c)?],
        Some(t) => {
            let inst = TheoremInstance::new(&h, &k, &c, &e, &f)?;
            vec![match t {
                TheoremId::PropCoset => check_prop_coset(&inst)?,
                TheoremId::ThmFAvoids => check_thm_f_avoids(&inst),
                TheoremId::ThmQFinite => check_thm_q_finite(&inst)?,
                TheoremId::ThmSingleCoset => check_thm_single_coset(&inst),
                TheoremId::ThmCMinusC => check_thm_cminusc(&inst),
                other => bail!("{other} applies to subsets of the integers; use zcheck"),
            }]
        }
        None => run_all_checkers(&TheoremInstance::new(&h, &k, &c, &e, &f)?),
    };
    let report = CheckReport {
        group: g.name().to_string(),
        certificates,
    };
    let non_minimal = report.certificates.iter().any(Certificate::is_non_minimal);
    Ok(Outcome {
        output: render(fmt, &report, |r| certificates_text(&r.certificates))?,
        ok: a.expect.is_none_or(|x| x.matches(non_minimal)),
    })
}

fn certificates_text(certs: &[Certificate]) -> String {
    let mut out = String::new();
    for c in certs {
        out += &c.render_text();
    }
    let fired: Vec<String> = certs.iter().filter(|c| c.is_non_minimal()).map(|c| c.theorem.to_string()).collect();
    if fired.is_empty() {
        out += "verdict: Inconclusive\n";
    } else {
        out += &format!("verdict: NonMinimal ({})\n", fired.join(", "));
    }
    out
}

fn brace(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

pub fn oracle_text(r: &OracleReport) -> String {
    let mut out = format!("oracle on {} (order {}), subject {}, side {:?}\n", r.group, r.order, brace(&r.subject), r.side);
    match &r.status {
        OracleStatus::Minimal { witness, side } => {
            out += &format!("status: Minimal, {side} complement to {}\n", brace(witness))
        }
        OracleStatus::NotMinimal => out += "status: NotMinimal\n",
        OracleStatus::NotAComplementToAnything => out += "status: NotAComplementToAnything\n",
    }
    for s in &r.per_side {
        out += &format!("  {}: searched {}, evaluated {}\n", s.side, s.searched, s.evaluated);
    }
    out += &format!("  elapsed {:.3?}\n", r.elapsed);
    out
}

fn run_oracle(a: &OracleArgs, cfg: &OracleConfig, fmt: Format) -> anyhow::Result<Outcome> {
    let g = group(&a.group)?;
    let c = subset(&g, &a.set, "set")?;
    let r = oracle_minimality_status(&c, a.side, cfg)?;
    let ok = match a.expect {
        None => true,
        Some(ExpectStatus::Minimal) => r.status.is_minimal(),
        Some(ExpectStatus::NotMinimal) => r.status == OracleStatus::NotMinimal,
    };
    Ok(Outcome {
        output: render(fmt, &r, oracle_text)?,
        ok,
    })
}

fn run_verdict(a: &VerdictArgs, cfg: &OracleConfig, fmt: Format) -> anyhow::Result<Outcome> {
    let g = group(&a.group)?;
    let s = subset(&g, &a.set, "set")?;
    let opts = VerdictOptions {
        oracle: a.oracle.then_some(*cfg),
        ..Default::default()
    };
    let r = verdict(&s, &opts)?;
    let text = |r: &VerdictReport| {
        let mut out = format!("subject {} in {}\n", brace(&r.subject), r.group);
        out += &certificates_text(&r.certificates);
        if let Some(o) = &r.oracle {
            out += &oracle_text(o);
        }
        out
    };
    Ok(Outcome {
        output: render(fmt, &r, text)?,
        ok: a.expect.is_none_or(|x| x.matches(r.is_non_minimal())),
    })
}

fn load_zset(spec: &Option<String>, file: &Option<PathBuf>) -> anyhow::Result<StructuredZSet> {
    let json = match (spec, file) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        (None, None) => bail!("give --spec or --file"),
    };
    Ok(parse_structured(&json)?)
}

fn run_zcheck(a: &ZcheckArgs, fmt: Format) -> anyhow::Result<Outcome> {
    let (set, certificates) = if let Some(h) = a.source.cofinite {
        let removed: BTreeSet<i64> = a.removed.iter().copied().collect();
        let c = z_check_cofinite(h, &removed)?;
        if a.theorem.is_some_and(|t| t != TheoremId::PropCofinite) {
            bail!("a cofinite subgroup is checked with {}", TheoremId::PropCofinite);
        }
        (format!("{h}Z minus {removed:?}"), vec![c])
    } else {
        let s = load_zset(&a.source.spec, &a.source.file)?;
        let certs = match a.theorem {
            Some(t) => vec![z_check(&s, t)?],
            None => z_check_all(&s),
        };
        (s.to_string(), certs)
    };
    let report = ZCheckReport { set, certificates };
    let non_minimal = report.certificates.iter().any(Certificate::is_non_minimal);
    Ok(Outcome {
        output: render(fmt, &report, |r| format!("{}\n{}", r.set, certificates_text(&r.certificates)))?,
        ok: a.expect.is_none_or(|x| x.matches(non_minimal)),
    })
}

fn run_show(a: &ShowArgs, fmt: Format) -> anyhow::Result<Outcome> {
    let s = load_zset(&a.spec, &a.file)?;
    let report = WindowReport {
        set: s.to_string(),
        points: s.window(a.window),
    };
    let text = |r: &WindowReport| {
        let mut out = format!("{}\n", r.set);
        for m in [Membership::In, Membership::Unknown] {
            let xs: Vec<String> = r.points.iter().filter(|(_, x)| *x == m).map(|(x, _)| x.to_string()).collect();
            out += &format!("{m:?}: {}\n", xs.join(" "));
        }
        out
    };
    Ok(Outcome {
        output: render(fmt, &report, text)?,
        ok: true,
    })
}

pub fn parse_tags<K: std::str::FromStr + Ord>(items: &[String]) -> anyhow::Result<BTreeMap<K, Tag>> {
    items
        .iter()
        .map(|item| {
            let (k, t) = item.split_once(':').ok_or_else(|| anyhow!("tag {item:?} is not of the form class:tag"))?;
            let k = k.trim().parse().map_err(|_| anyhow!("bad class in {item:?}"))?;
            let t: Tag = serde_json::from_value(serde_json::Value::String(t.trim().to_lowercase()))
                .map_err(|_| anyhow!("unknown tag in {item:?}; expected avoids, sparse, thick or full"))?;
            Ok((k, t))
        })
        .collect()
}

fn run_family(cmd: &FamilyCommand, cfg: &OracleConfig, fmt: Format) -> anyhow::Result<Outcome> {
    let (z, quotient, expect) = match cmd {
        FamilyCommand::Robust {
            p,
            a,
            residues,
            tags,
            oracle,
            expect,
        } => {
            let residues: BTreeSet<u64> = residues.iter().copied().collect();
            let mut t: BTreeMap<u64, Tag> = (1..=*p).filter(|r| !residues.contains(r)).map(|r| (r, Tag::Sparse)).collect();
            t.extend(parse_tags::<u64>(tags)?);
            (robust_family(*p, *a, &residues, &t)?, oracle.then_some(*p), *expect)
        }
        FamilyCommand::Remark {
            n,
            removed,
            tags,
            expect,
        } => {
            let removed: BTreeSet<u64> = removed.iter().copied().collect();
            (remark_family(*n, &removed, &parse_tags::<u64>(tags)?)?, None, *expect)
        }
    };
    let certificate = z_check(&z, TheoremId::ThmCMinusC)?;
    let quotient = match quotient {
        Some(m) => Some(oracle_minimality_status(&finite_quotient(&z, m, false, false)?.set, OracleSide::Both, cfg)?),
        None => None,
    };
    let report = FamilyReport {
        set: z.to_spec(),
        certificate,
        quotient,
    };
    let text = |r: &FamilyReport| {
        let mut out = r.certificate.render_text();
        if let Some(q) = &r.quotient {
            out += &oracle_text(q);
        }
        out
    };
    Ok(Outcome {
        output: render(fmt, &report, text)?,
        ok: expect.is_none_or(|x| x.matches(report.certificate.is_non_minimal())),
    })
}

fn need<T: Clone>(v: &Option<T>, item: &CatalogItem, field: &str) -> anyhow::Result<T> {
    v.clone().ok_or_else(|| anyhow!("catalog item {} lacks `{field}`", item.id))
}

/// Checks one catalog item: the named theorem must certify non-minimality,
/// and any finite quotient or finite subject must be confirmed by the oracle.
pub fn run_item(item: &CatalogItem, cfg: &OracleConfig) -> anyhow::Result<ItemResult> {
    let mut result = ItemResult {
        id: item.id.clone(),
        title: item.title.clone(),
        status: ItemStatus::Fail,
        theorem: item.theorem,
        certificate: None,
        oracle: None,
        notes: Vec::new(),
    };
    if let ItemKind::OutOfScope = item.kind {
        result.status = ItemStatus::OutOfScope;
        result.notes.extend(item.note.clone());
        return Ok(result);
    }
    let theorem = need(&item.theorem, item, "theorem")?;
    let (certificate, oracle) = match item.kind {
        ItemKind::Zset => {
            let z = parse_structured(&need(&item.set, item, "set")?)?;
            let o = match item.quotient {
                Some(m) => {
                    let q = finite_quotient(&z, m, false, false)?;
                    if !q.exact {
                        result.notes.push(format!("quotient mod {m} is not exact"));
                    }
                    Some(oracle_minimality_status(&q.set, OracleSide::Both, cfg)?)
                }
                None => None,
            };
            (z_check(&z, theorem)?, o)
        }
        ItemKind::Cofinite => {
            let removed: BTreeSet<i64> = item.removed.iter().copied().collect();
            (z_check_cofinite(need(&item.h, item, "h")?, &removed)?, None)
        }
        ItemKind::Finite => {
            let g = group(&need(&item.group, item, "group")?)?;
            let s = subset(&g, &need(&item.set, item, "set")?, "set")?;
            let r = verdict(
                &s,
                &VerdictOptions {
                    oracle: Some(*cfg),
                    ..Default::default()
                },
            )?;
            let cert = r
                .certificate(theorem)
                .cloned()
                .ok_or_else(|| anyhow!("no {theorem} certificate for {}", item.id))?;
            (cert, r.oracle)
        }
        ItemKind::RemarkFamily => {
            let removed: BTreeSet<u64> = item.removed.iter().map(|&r| r as u64).collect();
            let z = remark_family(need(&item.n, item, "n")?, &removed, &BTreeMap::new())?;
            (z_check(&z, theorem)?, None)
        }
        ItemKind::RobustFamily => {
            let p = need(&item.p, item, "p")?;
            let residues: BTreeSet<u64> = item.residues.iter().copied().collect();
            let tags = (1..=p).filter(|r| !residues.contains(r)).map(|r| (r, Tag::Sparse)).collect();
            let z = robust_family(p, need(&item.a, item, "a")?, &residues, &tags)?;
            let o = match item.quotient {
                Some(m) => Some(oracle_minimality_status(&finite_quotient(&z, m, false, false)?.set, OracleSide::Both, cfg)?),
                None => None,
            };
            (z_check(&z, theorem)?, o)
        }
        ItemKind::OutOfScope => unreachable!(),
    };
    let certified = certificate.theorem == theorem && certificate.verdict == Verdict::NonMinimal;
    if !certified {
        result.notes.push(format!("{theorem} did not certify non-minimality"));
    }
    let confirmed = oracle.as_ref().is_none_or(|o| o.status == OracleStatus::NotMinimal);
    if !confirmed {
        result.notes.push("the oracle found a minimal complement".to_string());
    }
    if certified && confirmed {
        result.status = ItemStatus::Pass;
    }
    result.certificate = Some(certificate);
    result.oracle = oracle;
    Ok(result)
}

fn run_reproduce(a: &ReproduceArgs, cfg: &OracleConfig, fmt: Format) -> anyhow::Result<Outcome> {
    let items = catalog()?;
    let selected: Vec<&CatalogItem> = match &a.item {
        Some(id) => {
            let it = items.iter().find(|i| &i.id == id).ok_or_else(|| {
                let ids: Vec<&str> = items.iter().map(|i| i.id.as_str()).collect();
                anyhow!("no catalog item {id:?}; known items: {}", ids.join(", "))
            })?;
            vec![it]
        }
        None => items.iter().collect(),
    };
    if a.list {
        let mut out = String::new();
        for i in &selected {
            let theorem = i.theorem.map(|t| t.to_string()).unwrap_or_else(|| "out of scope".to_string());
            out += &format!("{:<20} {:<16} {}\n", i.id, theorem, i.title);
        }
        return Ok(Outcome { output: out, ok: true });
    }
    let report = ReproduceReport {
        items: selected.iter().map(|i| run_item(i, cfg)).collect::<anyhow::Result<_>>()?,
    };
    let text = |r: &ReproduceReport| {
        let mut out = String::new();
        for i in &r.items {
            let status = match i.status {
                ItemStatus::Pass => "PASS",
                ItemStatus::Fail => "FAIL",
                ItemStatus::OutOfScope => "SKIP",
            };
            let theorem = i.theorem.map(|t| t.to_string()).unwrap_or_else(|| "out of scope".to_string());
            out += &format!("{status} {:<20} {:<16} {}\n", i.id, theorem, i.title);
            if let Some(o) = &i.oracle {
                out += &format!("     oracle on {}: {}\n", o.group, status_word(&o.status));
            }
            for n in &i.notes {
                out += &format!("     {n}\n");
            }
        }
        out
    };
    Ok(Outcome {
        output: render(fmt, &report, text)?,
        ok: report.passed(),
    })
}

fn status_word(s: &OracleStatus) -> &'static str {
    match s {
        OracleStatus::Minimal { .. } => "Minimal",
        OracleStatus::NotMinimal => "NotMinimal",
        OracleStatus::NotAComplementToAnything => "NotAComplementToAnything",
    }
}

pub fn summary_text(s: &SweepSummary) -> String {
    let mut out = format!(
        "{} {}: {} instances, {} checked, {} failures ({:.2?})\n",
        if s.passed() { "PASS" } else { "FAIL" },
        s.name,
        s.instances,
        s.checked,
        s.failure_count,
        s.elapsed
    );
    for (k, v) in &s.tally {
        out += &format!("     {k}: {v}\n");
    }
    for f in &s.failures {
        out += &format!("     failure: {f}\n");
    }
    out
}

fn run_sweep(a: &SweepArgs, cfg: &OracleConfig, fmt: Format) -> anyhow::Result<Outcome> {
    let suites = if a.suite.is_empty() {
        vec![Suite::CardinalityBound, Suite::Soundness, Suite::Stabilizer, Suite::Robust, Suite::Remark]
    } else {
        a.suite.clone()
    };
    let mut out = Vec::new();
    for s in suites {
        match s {
            Suite::CardinalityBound => out.push(prop_fini_sweep(&(6..=14).collect::<Vec<_>>(), cfg)?),
            Suite::Soundness => out.push(soundness_sweep(&soundness_groups(), cfg)?),
            Suite::Stabilizer => {
                out.push(stabilizer_identity_exhaustive()?);
                out.push(stabilizer_identity_random(10_000, 1)?);
            }
            Suite::Robust => {
                for p in [5, 7, 11] {
                    out.push(robust_family_sweep(p, None, 0, cfg)?);
                }
                out.push(robust_family_sweep(13, Some(1000), 13, cfg)?);
            }
            Suite::Remark => out.push(remark_family_sweep(&(11..=20).collect::<Vec<_>>())?),
        }
    }
    let report = SweepReport { suites: out };
    let ok = report.suites.iter().all(SweepSummary::passed);
    Ok(Outcome {
        output: render(fmt, &report, |r| r.suites.iter().map(summary_text).collect())?,
        ok,
    })
}
