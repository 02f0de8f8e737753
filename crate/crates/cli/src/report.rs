//! The machine-readable report and its text rendering. Every rational is a
//! string `p/q` (or `p` for integers) so nothing is lost in transit.

use std::fmt::Write as _;

use eulersym::legendre::{GradientIdentityReport, IdentityMode, LegendreResult};
use eulersym::linalg::Scalar;
use eulersym::symbol::{RankSymmetryReport, SymbolFailure, SymbolVerdict};
use eulersym::variety::{AmbientPoint, SmoothnessReport};
use serde::Serialize;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog_name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub num_vars: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension_profile: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbol_system: Option<SymbolSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_symmetry: Option<RankSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub legendre: Option<LegendreSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub smoothness: Option<SmoothnessSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectedSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckSection>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<PointSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit_weight: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relations: Option<RelationsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalog: Option<Vec<ListingItem>>,
    pub seed: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymbolSection {
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl SymbolSection {
    pub fn from_verdict(v: &SymbolVerdict) -> Self {
        let failure = match v {
            SymbolVerdict::Pass => None,
            SymbolVerdict::Fail(f) => Some(match f {
                SymbolFailure::ConstantPart => "F^0 is not the constants".to_string(),
                SymbolFailure::LinearPart => "F^1 is not all linear forms".to_string(),
                SymbolFailure::TopVanishes => "the top component vanishes".to_string(),
                SymbolFailure::Inclusion {
                    degree,
                    witness,
                    direction,
                } => format!(
                    "contracting {witness} along e{} leaves F^{degree}",
                    direction + 1
                ),
            }),
        };
        SymbolSection {
            verdict: if v.passed() { "pass" } else { "fail" },
            failure,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RankSection {
    pub ranks: Vec<usize>,
    pub symmetric: bool,
}

impl From<&RankSymmetryReport> for RankSection {
    fn from(r: &RankSymmetryReport) -> Self {
        RankSection {
            ranks: r.ranks.clone(),
            symmetric: r.symmetric(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LegendreSection {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transform: Option<String>,
    pub samples_used: usize,
    pub verified_points: usize,
    pub certified: bool,
    pub rigorous: bool,
    pub unknowns: usize,
    pub rounds: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gradient_identities: Option<IdentitySection>,
}

impl From<&LegendreResult> for LegendreSection {
    fn from(r: &LegendreResult) -> Self {
        LegendreSection {
            status: r.status.name(),
            transform: r.transform().map(ToString::to_string),
            samples_used: r.samples_used,
            verified_points: r.verified_points,
            certified: r.certified,
            rigorous: r.rigorous,
            unknowns: r.unknowns,
            rounds: r.rounds,
            gradient_identities: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentitySection {
    pub mode: String,
    pub forward: bool,
    pub backward: bool,
}

impl From<&GradientIdentityReport> for IdentitySection {
    fn from(r: &GradientIdentityReport) -> Self {
        let mode = match r.mode {
            IdentityMode::Symbolic => "symbolic".to_string(),
            IdentityMode::Sampled { points, .. } => format!("sampled at {points} points"),
        };
        IdentitySection {
            mode,
            forward: r.forward,
            backward: r.backward,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothnessSection {
    pub verdict: String,
    pub items: Vec<CheckSection>,
}

impl From<&SmoothnessReport> for SmoothnessSection {
    fn from(r: &SmoothnessReport) -> Self {
        SmoothnessSection {
            verdict: r.verdict.to_string(),
            items: r
                .items
                .iter()
                .map(|i| CheckSection {
                    name: format!("({}) {}", i.id, i.name),
                    outcome: i.outcome.name(),
                    detail: i.detail.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckSection {
    pub name: String,
    pub outcome: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectedSection {
    pub profile: Vec<usize>,
    pub ambient_dim: usize,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointSection {
    pub blocks: Vec<Vec<String>>,
    pub support_weights: Vec<usize>,
    pub torus_fixed: bool,
    pub boundary: bool,
}

impl From<&AmbientPoint> for PointSection {
    fn from(x: &AmbientPoint) -> Self {
        PointSection {
            blocks: x.blocks().iter().map(|b| b.iter().map(scalar).collect()).collect(),
            support_weights: x.support_weights(),
            torus_fixed: x.is_torus_fixed(),
            boundary: x.is_boundary(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationsSection {
    pub count: usize,
    pub relations: Vec<RelationItem>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub member: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationItem {
    pub weight: usize,
    pub index: usize,
    pub kind: &'static str,
    pub polynomial: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ListingItem {
    pub name: String,
    pub description: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timings {
    pub total_ms: f64,
}

pub fn scalar(x: &Scalar) -> String {
    x.to_string()
}

fn list(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(s, "{k:<18} {v}");
        };
        if let Some(name) = &self.catalog_name {
            line("catalog entry", name.clone());
        }
        if let Some(input) = &self.input {
            line("polynomial", input.clone());
        }
        if let Some(d) = self.degree {
            line("degree", d.to_string());
        }
        if let Some(m) = self.num_vars {
            line("variables", m.to_string());
        }
        if let Some(p) = &self.dimension_profile {
            line("profile", list(p));
        }
        if let Some(a) = self.ambient_dim {
            line("ambient dimension", a.to_string());
        }
        if let Some(sym) = &self.symbol_system {
            let mut v = sym.verdict.to_string();
            if let Some(f) = &sym.failure {
                v = format!("{v}: {f}");
            }
            line("symbol system", v);
        }
        if let Some(r) = &self.rank_symmetry {
            line(
                "catalecticants",
                format!("ranks {}, symmetric: {}", list(&r.ranks), yes_no(r.symmetric)),
            );
        }
        if let Some(l) = &self.legendre {
            line("legendre status", l.status.to_string());
            if let Some(t) = &l.transform {
                line("P_*", t.clone());
            }
            line(
                "legendre detail",
                format!(
                    "{} unknowns, {} samples in {} rounds, {} verified points, certified: {}, rigorous: {}",
                    l.unknowns,
                    l.samples_used,
                    l.rounds,
                    l.verified_points,
                    yes_no(l.certified),
                    yes_no(l.rigorous)
                ),
            );
            if let Some(g) = &l.gradient_identities {
                line(
                    "identities",
                    format!("{}: forward {}, backward {}", g.mode, yes_no(g.forward), yes_no(g.backward)),
                );
            }
        }
        if let Some(sm) = &self.smoothness {
            for item in &sm.items {
                line(&item.name, format!("{}: {}", item.outcome, item.detail));
            }
            line("verdict", sm.verdict.clone());
        }
        if let Some(e) = &self.expected {
            line("expected profile", list(&e.profile));
            line("expected ambient", e.ambient_dim.to_string());
            line("labels", e.labels.join("; "));
        }
        if let Some(c) = &self.classification {
            line("classification", c.join(" x "));
        }
        if let Some(checks) = &self.checks {
            for c in checks {
                line(&c.name, format!("{}: {}", c.outcome, c.detail));
            }
        }
        if let Some(p) = &self.point {
            let blocks: Vec<String> = p.blocks.iter().map(|b| format!("[{}]", b.join(", "))).collect();
            line("point", blocks.join(" "));
            line("support weights", list(&p.support_weights));
            line("torus fixed", yes_no(p.torus_fixed).to_string());
            line("boundary", yes_no(p.boundary).to_string());
        }
        if let Some(w) = self.limit_weight {
            line("limit weight", w.to_string());
        }
        if let Some(r) = &self.relations {
            line("relations", r.count.to_string());
            for rel in &r.relations {
                let mut v = format!("({}, {}) {}: {}", rel.weight, rel.index, rel.kind, rel.polynomial);
                if let Some(val) = &rel.value {
                    v = format!("{v} = {val}");
                }
                line("", v);
            }
            if let Some(m) = r.member {
                line("on the variety", yes_no(m).to_string());
            }
        }
        if let Some(items) = &self.catalog {
            for item in items {
                line(&item.name, item.description.clone());
            }
        }
        if let Some(t) = &self.timings {
            line("time", format!("{:.1} ms", t.total_ms));
        }
        line("seed", self.seed.to_string());
        line("result", if self.passed { "pass" } else { "fail" }.to_string());
        s
    }
}
