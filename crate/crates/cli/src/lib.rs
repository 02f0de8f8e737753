//! Command surface for the eulersym toolkit.
//!
//! Exit codes: 0 when every check passes, 2 when a mathematical check
//! fails, 1 on usage, parse or input errors.

pub mod parse;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use eulersym::catalog::{
    classify, component_count_check, verify_polynomial, ExpectedInvariants, Family, ProductSpec, VerifyConfig,
};
use eulersym::legendre::{legendre_transform, verify_gradient_identities, IdentityMode, LegendreConfig};
use eulersym::linalg::Scalar;
use eulersym::poly::Polynomial;
use eulersym::symbol::{rank_symmetry_check, symbol_system_of, verify_symbol_system};
use eulersym::variety::{
    bb_limit, curve_limit_at_infinity, quadric_relations, relation_membership, smoothness_report, torus_act,
    translate, AmbientPoint, AmbientSpace, LimitDirection, RelationKind, SmoothnessConfig, SmoothnessVerdict,
};

use crate::parse::parse_polynomial;
use crate::report::{
    CheckSection, ExpectedSection, IdentitySection, LegendreSection, ListingItem, PointSection, RankSection,
    RelationItem, RelationsSection, Report, SmoothnessSection, SymbolSection, Timings,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "eulersym", version, about = "Exact computations for Euler-symmetric varieties")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every sampled procedure.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock timings (makes output run-dependent).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Args)]
struct PolyArg {
    /// A polynomial such as "x1*x4 - x2*x3", a catalog name such as
    /// "det[3]", or a comma-separated product of catalog names.
    poly: String,
    /// Number of variables, when more than the expression mentions.
    #[arg(long)]
    vars: Option<usize>,
}

#[derive(Debug, Args)]
struct PointArg {
    /// File holding an ambient point: one block per line with
    /// comma-separated rationals, or a JSON report or block array.
    #[arg(long)]
    point: Option<PathBuf>,
    /// Embed `(t, w)` instead of reading a point file.
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    t: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Direction {
    Zero,
    Infinity,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension profile, symbol-system verification and rank symmetry.
    Analyze(PolyArg),
    /// Multiplicative Legendre transform and the gradient identities.
    Legendre {
        #[command(flatten)]
        poly: PolyArg,
        /// Expand the identity defect symbolically.
        #[arg(long)]
        certify: bool,
        /// Fresh verification points.
        #[arg(long, default_value_t = 64)]
        points: usize,
    },
    /// Necessary conditions for smoothness.
    SmoothCheck(PolyArg),
    /// The point `embed(t, w)`.
    Embed {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Translate a point by `v` and/or apply the torus element `lambda`.
    Act {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[command(flatten)]
        at: PointArg,
    },
    /// Torus limit of a point at zero or infinity.
    Limit {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, value_enum)]
        dir: Direction,
        #[command(flatten)]
        at: PointArg,
    },
    /// Limit of `s -> translate(s v, p)` as `s` goes to infinity; `p`
    /// defaults to the origin.
    CurveLimit {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[command(flatten)]
        at: PointArg,
    },
    /// The relations of the embedding, evaluated at a point if given.
    Relations {
        #[command(flatten)]
        poly: PolyArg,
        #[command(flatten)]
        at: PointArg,
    },
    /// The catalog of classified examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    /// List the families and their parameter ranges.
    List,
    /// Print an entry's polynomial and expected invariants.
    Build { name: String },
    /// Run the full check suite on an entry or product.
    Verify { name: String },
    /// Classification labels of a product, with a component-count check.
    Classify { names: String },
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }
}

impl From<eulersym::Error> for Failure {
    fn from(e: eulersym::Error) -> Self {
        Failure::usage(e)
    }
}

type CmdResult<T> = std::result::Result<T, Failure>;

struct Source {
    poly: Polynomial,
    spec: Option<ProductSpec>,
}

fn looks_like_catalog(text: &str) -> bool {
    text.contains('[') || text.chars().any(|c| c.is_ascii_alphabetic() && c != 'x')
}

fn resolve(arg: &PolyArg) -> CmdResult<Source> {
    let text = arg.poly.trim();
    if looks_like_catalog(text) {
        if arg.vars.is_some() {
            return Err(Failure::usage("--vars only applies to expressions"));
        }
        let spec = ProductSpec::parse(text)?;
        return Ok(Source {
            poly: spec.polynomial(),
            spec: Some(spec),
        });
    }
    let poly = parse_polynomial(text, arg.vars).map_err(Failure::usage)?;
    Ok(Source { poly, spec: None })
}

fn parse_scalar(text: &str) -> CmdResult<Scalar> {
    let t = text.trim();
    let bad = || Failure::usage(format!("`{t}` is not a rational number"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == num_bigint::BigInt::from(0) {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
        None => Ok(Scalar::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

pub fn parse_csv(text: &str) -> std::result::Result<Vec<Scalar>, String> {
    csv(text).map_err(|f| f.message)
}

fn csv(text: &str) -> CmdResult<Vec<Scalar>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse_scalar).collect()
}

fn json_blocks(value: &serde_json::Value) -> Option<Vec<Vec<String>>> {
    let blocks = match value {
        serde_json::Value::Object(map) => {
            let point = map.get("point")?;
            point.get("blocks").unwrap_or(point)
        }
        other => other,
    };
    blocks
        .as_array()?
        .iter()
        .map(|b| {
            b.as_array()?
                .iter()
                .map(|x| match x {
                    serde_json::Value::String(s) => Some(s.clone()),
                    serde_json::Value::Number(n) => Some(n.to_string()),
                    _ => None,
                })
                .collect()
        })
        .collect()
}

fn read_point(path: &Path, space: &AmbientSpace) -> CmdResult<AmbientPoint> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let trimmed = text.trim_start();
    let raw: Vec<Vec<String>> = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        let value: serde_json::Value =
            serde_json::from_str(trimmed).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        json_blocks(&value).ok_or_else(|| Failure::usage(format!("{}: no point blocks found", path.display())))?
    } else {
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.split(',').map(|s| s.trim().to_string()).collect())
            .collect()
    };
    let blocks = raw
        .iter()
        .map(|b| b.iter().map(|s| parse_scalar(s)).collect::<CmdResult<Vec<_>>>())
        .collect::<CmdResult<Vec<_>>>()?;
    Ok(AmbientPoint::new(blocks, &space.block_dims())?)
}

fn point_from(at: &PointArg, space: &AmbientSpace) -> CmdResult<Option<AmbientPoint>> {
    match (&at.point, &at.w) {
        (Some(_), Some(_)) => Err(Failure::usage("give either --point or --w, not both")),
        (Some(path), None) => read_point(path, space).map(Some),
        (None, Some(w)) => Ok(Some(space.embed(&parse_scalar(&at.t)?, &csv(w)?)?)),
        (None, None) => Ok(None),
    }
}

fn require_point(at: &PointArg, space: &AmbientSpace) -> CmdResult<AmbientPoint> {
    point_from(at, space)?.ok_or_else(|| Failure::usage("a point is required (--point FILE or --w CSV)"))
}

fn describe(report: &mut Report, source: &Source) -> CmdResult<()> {
    let p = &source.poly;
    report.input = Some(p.to_string());
    report.degree = Some(p.homogeneous_degree()?);
    report.num_vars = Some(p.nvars());
    if let Some(spec) = &source.spec {
        report.catalog_name = Some(spec.name());
        report.classification = Some(classify(spec).iter().map(ToString::to_string).collect());
    }
    Ok(())
}

fn legendre_config(seed: u64) -> LegendreConfig {
    LegendreConfig {
        seed,
        ..LegendreConfig::default()
    }
}

fn analyze(report: &mut Report, source: &Source) -> CmdResult<bool> {
    describe(report, source)?;
    let generated = symbol_system_of(&source.poly)?;
    report.dimension_profile = Some(generated.system.profile());
    report.ambient_dim = Some(generated.system.ambient_dim());
    let verdict = verify_symbol_system(&generated.system);
    report.symbol_system = Some(SymbolSection::from_verdict(&verdict));
    let ranks = rank_symmetry_check(&source.poly)?;
    report.rank_symmetry = Some(RankSection::from(&ranks));
    Ok(verdict.passed() && ranks.symmetric())
}

fn legendre(report: &mut Report, source: &Source, seed: u64, certify: bool, points: usize) -> CmdResult<bool> {
    describe(report, source)?;
    let config = LegendreConfig {
        certify,
        verify_points: points,
        ..legendre_config(seed)
    };
    let result = legendre_transform(&source.poly, &config)?;
    let mut section = LegendreSection::from(&result);
    let mut ok = result.is_ekp();
    if let Some(ps) = result.transform() {
        let mode = if certify {
            IdentityMode::Symbolic
        } else {
            IdentityMode::Sampled { points, seed }
        };
        let ids = verify_gradient_identities(&source.poly, ps, mode)?;
        ok &= ids.holds();
        section.gradient_identities = Some(IdentitySection::from(&ids));
    }
    report.legendre = Some(section);
    Ok(ok)
}

fn smooth_check(report: &mut Report, source: &Source, seed: u64) -> CmdResult<bool> {
    describe(report, source)?;
    let config = SmoothnessConfig {
        legendre: legendre_config(seed),
        seed,
        ..SmoothnessConfig::default()
    };
    let rep = smoothness_report(&source.poly, &config)?;
    report.smoothness = Some(SmoothnessSection::from(&rep));
    Ok(rep.verdict == SmoothnessVerdict::PassesAllImplementedConditions)
}

fn relations(report: &mut Report, space: &AmbientSpace, at: Option<&AmbientPoint>) -> CmdResult<bool> {
    let rels = quadric_relations(space)?;
    let mut items = Vec::with_capacity(rels.len());
    for rel in &rels {
        items.push(RelationItem {
            weight: rel.weight,
            index: rel.index,
            kind: match rel.kind {
                RelationKind::Quadric => "quadric",
                RelationKind::Higher => "higher",
            },
            polynomial: rel.poly.to_string(),
            value: at.map(|x| rel.evaluate(x)).transpose()?.map(|v| report::scalar(&v)),
        });
    }
    let member = at.map(|x| relation_membership(space, x)).transpose()?;
    report.relations = Some(RelationsSection {
        count: items.len(),
        relations: items,
        member,
    });
    Ok(member.unwrap_or(true))
}

fn expected_section(e: &ExpectedInvariants) -> ExpectedSection {
    ExpectedSection {
        profile: e.profile.clone(),
        ambient_dim: e.ambient_dim,
        labels: e.labels.iter().map(ToString::to_string).collect(),
    }
}

fn catalog(report: &mut Report, action: &CatalogAction, seed: u64) -> CmdResult<bool> {
    match action {
        CatalogAction::List => {
            report.catalog = Some(
                Family::listing()
                    .into_iter()
                    .map(|(name, description)| ListingItem { name, description })
                    .collect(),
            );
            Ok(true)
        }
        CatalogAction::Build { name } => {
            let spec = ProductSpec::parse(name)?;
            let source = Source {
                poly: spec.polynomial(),
                spec: Some(spec.clone()),
            };
            describe(report, &source)?;
            report.expected = Some(expected_section(&spec.expected()));
            Ok(true)
        }
        CatalogAction::Verify { name } => {
            let spec = ProductSpec::parse(name)?;
            let source = Source {
                poly: spec.polynomial(),
                spec: Some(spec.clone()),
            };
            describe(report, &source)?;
            let config = VerifyConfig {
                seed,
                legendre: legendre_config(seed),
                ..VerifyConfig::default()
            };
            let rep = verify_polynomial(&spec.name(), &source.poly, &spec.expected(), &config)?;
            report.dimension_profile = Some(rep.profile.clone());
            report.ambient_dim = Some(rep.ambient_dim);
            report.expected = Some(expected_section(&spec.expected()));
            report.checks = Some(
                rep.checks
                    .iter()
                    .map(|c| CheckSection {
                        name: c.name.to_string(),
                        outcome: c.outcome.name(),
                        detail: c.detail.clone(),
                    })
                    .collect(),
            );
            Ok(rep.passes())
        }
        CatalogAction::Classify { names } => {
            let spec = ProductSpec::parse(names)?;
            let source = Source {
                poly: spec.polynomial(),
                spec: Some(spec.clone()),
            };
            describe(report, &source)?;
            if spec.polynomial().homogeneous_degree()? < 2 {
                return Ok(true);
            }
            let rep = component_count_check(&spec, &legendre_config(seed))?;
            let detail = format!(
                "{} factors expected, {} found, P_* splits along the blocks: {}",
                rep.expected_factors,
                rep.computed_factors.map_or("not searched".to_string(), |n| n.to_string()),
                if rep.splits_along_blocks { "yes" } else { "no" }
            );
            report.checks = Some(vec![CheckSection {
                name: "component_count".into(),
                outcome: if rep.passes() { "pass" } else { "fail" },
                detail,
            }]);
            Ok(rep.passes())
        }
    }
}

fn execute(cli: &Cli, report: &mut Report) -> CmdResult<bool> {
    let seed = cli.seed;
    match &cli.command {
        Command::Analyze(arg) => analyze(report, &resolve(arg)?),
        Command::Legendre { poly, certify, points } => legendre(report, &resolve(poly)?, seed, *certify, *points),
        Command::SmoothCheck(arg) => smooth_check(report, &resolve(arg)?, seed),
        Command::Embed { poly, t, w } => {
            let source = resolve(poly)?;
            describe(report, &source)?;
            let space = AmbientSpace::new(&source.poly)?;
            let x = space.embed(&parse_scalar(t)?, &csv(w)?)?;
            report.point = Some(PointSection::from(&x));
            Ok(true)
        }
        Command::Act { poly, v, lambda, at } => {
            let source = resolve(poly)?;
            describe(report, &source)?;
            let space = AmbientSpace::new(&source.poly)?;
            let mut x = require_point(at, &space)?;
            if v.is_none() && lambda.is_none() {
                return Err(Failure::usage("act needs --v, --lambda or both"));
            }
            if let Some(v) = v {
                x = translate(&space, &csv(v)?, &x)?;
            }
            if let Some(l) = lambda {
                x = torus_act(&parse_scalar(l)?, &x)?;
            }
            report.point = Some(PointSection::from(&x));
            Ok(true)
        }
        Command::Limit { poly, dir, at } => {
            let source = resolve(poly)?;
            describe(report, &source)?;
            let space = AmbientSpace::new(&source.poly)?;
            let x = require_point(at, &space)?;
            let direction = match dir {
                Direction::Zero => LimitDirection::ToZero,
                Direction::Infinity => LimitDirection::ToInfinity,
            };
            let (limit, weight) = bb_limit(&x, direction);
            report.point = Some(PointSection::from(&limit));
            report.limit_weight = Some(weight);
            Ok(true)
        }
        Command::CurveLimit { poly, v, at } => {
            let source = resolve(poly)?;
            describe(report, &source)?;
            let space = AmbientSpace::new(&source.poly)?;
            let x = point_from(at, &space)?.unwrap_or_else(|| space.origin());
            let limit = curve_limit_at_infinity(&space, &x, &csv(v)?)?;
            report.point = Some(PointSection::from(&limit));
            Ok(true)
        }
        Command::Relations { poly, at } => {
            let source = resolve(poly)?;
            describe(report, &source)?;
            let space = AmbientSpace::new(&source.poly)?;
            let x = point_from(at, &space)?;
            relations(report, &space, x.as_ref())
        }
        Command::Catalog { action } => catalog(report, action, seed),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze(_) => "analyze",
        Command::Legendre { .. } => "legendre",
        Command::SmoothCheck(_) => "smooth-check",
        Command::Embed { .. } => "embed",
        Command::Act { .. } => "act",
        Command::Limit { .. } => "limit",
        Command::CurveLimit { .. } => "curve-limit",
        Command::Relations { .. } => "relations",
        Command::Catalog { action } => match action {
            CatalogAction::List => "catalog list",
            CatalogAction::Build { .. } => "catalog build",
            CatalogAction::Verify { .. } => "catalog verify",
            CatalogAction::Classify { .. } => "catalog classify",
        },
    }
}

/// Runs the command line `args` (program name first), writing the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let start = Instant::now();
    let mut report = Report {
        command: command_name(&cli.command).to_string(),
        seed: cli.seed,
        ..Report::default()
    };
    match execute(&cli, &mut report) {
        Ok(passed) => {
            report.passed = passed;
            if cli.timings {
                report.timings = Some(Timings {
                    total_ms: start.elapsed().as_secs_f64() * 1e3,
                });
            }
            let text = if cli.json { report.to_json() + "\n" } else { report.to_text() };
            let _ = out.write_all(text.as_bytes());
            if passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
