//! Entry verification, classification and the block-split component count.

use std::collections::BTreeMap;

use super::{CatalogEntry, ExpectedInvariants, HssLabel, ProductSpec};
use crate::error::{Error, Result};
use crate::legendre::{legendre_transform, LegendreConfig};
use crate::linalg::{self, Matrix, Scalar};
use crate::poly::Polynomial;
use crate::rng;
use crate::symbol::{rank_symmetry_check, symbol_system_of, verify_symbol_system};
use crate::variety::{smoothness_report, AmbientSpace, CheckOutcome, SmoothnessConfig, SmoothnessVerdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub action_samples: usize,
    pub legendre: LegendreConfig,
    pub squarefree_trials: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            action_samples: 10,
            legendre: LegendreConfig::default(),
            squarefree_trials: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryCheck {
    pub name: &'static str,
    pub outcome: CheckOutcome,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryReport {
    pub name: String,
    pub profile: Vec<usize>,
    pub ambient_dim: usize,
    pub checks: Vec<EntryCheck>,
}

impl EntryReport {
    /// No check failed; flagged and inapplicable checks do not count.
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != CheckOutcome::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&EntryCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn outcome(ok: bool) -> CheckOutcome {
    if ok {
        CheckOutcome::Pass
    } else {
        CheckOutcome::Fail
    }
}

fn fmt_list(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn verify_entry(entry: &CatalogEntry, config: &VerifyConfig) -> Result<EntryReport> {
    verify_polynomial(&entry.name(), &entry.polynomial, &entry.expected, config)
}

/// The full check suite against explicit expectations; used for single
/// entries and for products.
pub fn verify_polynomial(
    name: &str,
    p: &Polynomial,
    expected: &ExpectedInvariants,
    config: &VerifyConfig,
) -> Result<EntryReport> {
    let r = p.homogeneous_degree()? as usize;
    let m = p.nvars();
    let generated = symbol_system_of(p)?;
    let profile = generated.system.profile();
    let ambient_dim = generated.system.ambient_dim();
    let mut checks = Vec::new();

    checks.push(EntryCheck {
        name: "degree_and_vars",
        outcome: outcome(r == expected.degree && m == expected.nvars),
        detail: format!("r={r} m={m}, expected r={} m={}", expected.degree, expected.nvars),
    });
    checks.push(EntryCheck {
        name: "profile",
        outcome: outcome(profile == expected.profile),
        detail: format!("{}, expected {}", fmt_list(&profile), fmt_list(&expected.profile)),
    });
    checks.push(EntryCheck {
        name: "ambient_dim",
        outcome: outcome(ambient_dim == expected.ambient_dim),
        detail: format!("{ambient_dim}, expected {}", expected.ambient_dim),
    });
    let verdict = verify_symbol_system(&generated.system);
    checks.push(EntryCheck {
        name: "symbol_system",
        outcome: outcome(verdict.passed()),
        detail: format!("{verdict:?}"),
    });
    let sym = rank_symmetry_check(p)?;
    checks.push(EntryCheck {
        name: "rank_symmetry",
        outcome: outcome(sym.symmetric()),
        detail: format!("catalecticant ranks {}", fmt_list(&sym.ranks)),
    });

    if r >= 2 {
        let sconfig = SmoothnessConfig {
            legendre: config.legendre.clone(),
            squarefree_trials: config.squarefree_trials,
            seed: config.seed,
        };
        let report = smoothness_report(p, &sconfig)?;
        let flagged: Vec<char> = report
            .items
            .iter()
            .filter(|i| i.outcome == CheckOutcome::Flagged)
            .map(|i| i.id)
            .collect();
        checks.push(EntryCheck {
            name: "smoothness_conditions",
            outcome: outcome(report.verdict == SmoothnessVerdict::PassesAllImplementedConditions),
            detail: if flagged.is_empty() {
                report.verdict.to_string()
            } else {
                format!("{}; flagged {:?}", report.verdict, flagged)
            },
        });
        let round_trip = match report.legendre.transform() {
            Some(ps) => {
                let second = legendre_transform(ps, &config.legendre)?;
                let ok = second.transform() == Some(p);
                EntryCheck {
                    name: "legendre_round_trip",
                    outcome: outcome(ok),
                    detail: format!("P_* = {ps}"),
                }
            }
            None => EntryCheck {
                name: "legendre_round_trip",
                outcome: CheckOutcome::Fail,
                detail: format!("transform status {}", report.legendre.status.name()),
            },
        };
        checks.push(round_trip);
    } else {
        for name in ["smoothness_conditions", "legendre_round_trip"] {
            checks.push(EntryCheck {
                name,
                outcome: CheckOutcome::NotApplicable,
                detail: "linear form".to_string(),
            });
        }
    }

    let space = AmbientSpace::from_generated(generated);
    let mut rng = rng::seeded(config.seed, 5);
    let mut consistent = 0;
    while consistent < config.action_samples {
        let t = rng::int_vector(&mut rng, 1, 5).remove(0);
        let w = rng::int_vector(&mut rng, m, 5);
        let v = rng::int_vector(&mut rng, m, 5);
        // t = 0 with P(w) = 0 has no image; draw again
        let Ok(x) = space.embed(&t, &w) else { continue };
        let moved: Vec<Scalar> = w.iter().zip(&v).map(|(a, b)| a + &t * b).collect();
        let lhs = crate::variety::translate(&space, &v, &x)?;
        if space.embed(&t, &moved).map(|y| y == lhs).unwrap_or(false) {
            consistent += 1;
        } else {
            break;
        }
    }
    let attempted = config.action_samples;
    checks.push(EntryCheck {
        name: "action_consistency",
        outcome: outcome(consistent == attempted),
        detail: format!("{consistent} of {attempted} samples"),
    });

    Ok(EntryReport {
        name: name.to_string(),
        profile,
        ambient_dim,
        checks,
    })
}

/// HSS labels of the factors, in order.
pub fn classify(spec: &ProductSpec) -> Vec<HssLabel> {
    spec.expected().labels
}

/// Rank of the coefficient matrix of `p` with rows indexed by the exponents
/// on `subset` and columns by the remaining exponents. Rank 1 means `p`
/// factors as a form in `subset` times a form in the rest.
fn flattening_rank(p: &Polynomial, subset: &[bool]) -> usize {
    let mut rows: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut cols: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut entries = Vec::new();
    for (mono, c) in p.terms() {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (i, &e) in mono.exps().iter().enumerate() {
            if subset[i] {
                a.push(e);
            } else {
                b.push(e);
            }
        }
        let nr = rows.len();
        let i = *rows.entry(a).or_insert(nr);
        let nc = cols.len();
        let j = *cols.entry(b).or_insert(nc);
        entries.push((i, j, c.clone()));
    }
    let mut mat = Matrix::zeros(rows.len(), cols.len());
    for (i, j, c) in entries {
        mat.set(i, j, c);
    }
    linalg::rank(&mat)
}

fn mask(nvars: usize, vars: &[usize]) -> Vec<bool> {
    let mut m = vec![false; nvars];
    for &v in vars {
        m[v] = true;
    }
    m
}

/// Blocks larger than this are not searched for finer splittings.
pub const REFINE_LIMIT: usize = 12;

/// Number of pieces of the finest variable partition of `block` along which
/// `p` splits, assuming `p` already splits off `block` as a whole.
fn finest_split_count(p: &Polynomial, block: &[usize]) -> usize {
    let n = p.nvars();
    let mut remaining: Vec<usize> = block.to_vec();
    let mut count = 0;
    while !remaining.is_empty() {
        let first = remaining[0];
        let others = &remaining[1..];
        let mut chosen: Option<Vec<usize>> = None;
        'sizes: for size in 0..others.len() {
            for combo in combinations(others.len(), size) {
                let mut subset = vec![first];
                subset.extend(combo.iter().map(|&i| others[i]));
                if flattening_rank(p, &mask(n, &subset)) == 1 {
                    chosen = Some(subset);
                    break 'sizes;
                }
            }
        }
        let piece = chosen.unwrap_or_else(|| remaining.clone());
        remaining.retain(|v| !piece.contains(v));
        count += 1;
    }
    count
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentCountReport {
    pub transform: Polynomial,
    /// Factors tracked by the construction.
    pub expected_factors: usize,
    /// `P_*` factors along every construction block.
    pub splits_along_blocks: bool,
    /// Pieces of the finest variable splitting of `P_*`, when every block
    /// was small enough to search.
    pub computed_factors: Option<usize>,
}

impl ComponentCountReport {
    pub fn passes(&self) -> bool {
        self.splits_along_blocks && self.computed_factors.is_none_or(|c| c == self.expected_factors)
    }
}

/// Compares the construction's factor count with the variable-block
/// splitting of the computed transform.
pub fn component_count_check(spec: &ProductSpec, config: &LegendreConfig) -> Result<ComponentCountReport> {
    let p = spec.polynomial();
    let res = legendre_transform(&p, config)?;
    let Some(ps) = res.transform().cloned() else {
        return Err(Error::NotEkp(res.status.name().to_string()));
    };
    let expected = spec.expected();
    let n = ps.nvars();
    let splits = expected.blocks.len() == 1
        || expected
            .blocks
            .iter()
            .all(|b| flattening_rank(&ps, &mask(n, b)) == 1);
    let computed = if splits && expected.blocks.iter().all(|b| b.len() <= REFINE_LIMIT) {
        Some(expected.blocks.iter().map(|b| finest_split_count(&ps, b)).sum())
    } else {
        None
    };
    Ok(ComponentCountReport {
        transform: ps,
        expected_factors: expected.factor_count(),
        splits_along_blocks: splits,
        computed_factors: computed,
    })
}
