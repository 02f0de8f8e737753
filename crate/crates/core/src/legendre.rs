//! Multiplicative Legendre transform and the gradient identities around it.
//!
//! The transform is sought in the cleared form `P_*(dP(w)) = P(w)^{r-1}`:
//! every sample point `w` with `P(w) != 0` gives one linear equation in the
//! coefficients of `P_*` over all degree-`r` monomials.
//!
//! Ranks are tracked modulo a word-sized prime while samples are added. A
//! candidate is only ever accepted after exact checks:
//!
//! * when the sampled system has full column rank mod p it has full column
//!   rank over the rationals, so it has at most one rational solution;
//! * the reconstructed candidate must satisfy every sampled equation exactly,
//!   which makes it that unique solution;
//! * it is then evaluated at fresh points. A failure there proves that no
//!   polynomial transform exists, since the only possible one was rejected.
//!
//! When the Hessian of `P` is nonsingular at some point, the gradient map is
//! dominant and the unknowns shrink to the monomials `β` with `β - α_0` in
//! the span of the differences of the support of `P`. Every diagonal torus
//! symmetry of `P` gives `P_*` a fixed weight, and the components of other
//! weights compose with `dP` to independent pieces that would each have to
//! vanish. So the reduced system is solvable exactly when the full one is,
//! with the same solution.
//!
//! Rank-deficient outcomes are confirmed by exact elimination when the
//! system is small enough; otherwise they are reported as probabilistic.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::modp::{crt_step, nth_prime, rational_reconstruction, ModEchelon, PrimeField};
use crate::linalg::{self, Matrix, Scalar};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendreConfig {
    pub seed: u64,
    /// Fresh exact points used to check an accepted candidate.
    pub verify_points: usize,
    /// Expand `P_*(dP) - P^{r-1}` symbolically after point verification.
    pub certify: bool,
    /// Half-width of the first sampling box; it doubles every round.
    pub initial_box: i64,
    pub max_rounds: usize,
    /// Samples beyond the unknown count in the first round, and per later
    /// round.
    pub extra_samples: usize,
    /// Systems with at most this many unknowns get exact confirmation of
    /// rank-deficient verdicts.
    pub exact_threshold: usize,
    pub max_primes: usize,
}

impl Default for LegendreConfig {
    fn default() -> Self {
        LegendreConfig {
            seed: 0,
            verify_points: 64,
            certify: false,
            initial_box: 4,
            max_rounds: 12,
            extra_samples: 8,
            exact_threshold: 200,
            max_primes: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LegendreStatus {
    Ekp(Polynomial),
    Inconsistent,
    DegenerateGradientImage { solution_dim: usize },
}

impl LegendreStatus {
    pub fn name(&self) -> &'static str {
        match self {
            LegendreStatus::Ekp(_) => "ekp",
            LegendreStatus::Inconsistent => "inconsistent",
            LegendreStatus::DegenerateGradientImage { .. } => "degenerate_gradient_image",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendreResult {
    pub status: LegendreStatus,
    pub samples_used: usize,
    /// Fresh points at which an accepted transform was checked.
    pub verified_points: usize,
    /// The difference polynomial was expanded and found to be zero.
    pub certified: bool,
    /// The verdict follows from exact computations on the samples: an ekp
    /// candidate is the unique solution of the sampled system, an
    /// inconsistent verdict is a proof. Degenerate verdicts are never
    /// rigorous.
    pub rigorous: bool,
    pub unknowns: usize,
    pub rounds: usize,
}

impl LegendreResult {
    pub fn transform(&self) -> Option<&Polynomial> {
        match &self.status {
            LegendreStatus::Ekp(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_ekp(&self) -> bool {
        self.transform().is_some()
    }
}

struct Problem<'a> {
    p: &'a Polynomial,
    r: u32,
    grad: Vec<Polynomial>,
    monos: Vec<Monomial>,
}

impl Problem<'_> {
    fn unknowns(&self) -> usize {
        self.monos.len()
    }

    fn gradient_at(&self, w: &[Scalar]) -> Result<Vec<Scalar>> {
        self.grad.iter().map(|g| g.evaluate(w)).collect()
    }

    /// Row `[(dP(w))^α ..., P(w)^{r-1}]` reduced mod p, or `None` if a
    /// denominator vanishes there.
    fn row_mod(&self, field: PrimeField, w: &[Scalar]) -> Result<Option<Vec<u64>>> {
        let du = self.gradient_at(w)?;
        let rhs = pow_scalar(&self.p.evaluate(w)?, self.r - 1);
        let Some(residues) = du.iter().map(|x| field.from_scalar(x)).collect::<Option<Vec<_>>>() else {
            return Ok(None);
        };
        let Some(rhs) = field.from_scalar(&rhs) else {
            return Ok(None);
        };
        let powers: Vec<Vec<u64>> = residues
            .iter()
            .map(|&u| {
                let mut row = vec![1u64; self.r as usize + 1];
                for e in 1..=self.r as usize {
                    row[e] = field.mul(row[e - 1], u);
                }
                row
            })
            .collect();
        let mut row: Vec<u64> = self
            .monos
            .iter()
            .map(|m| {
                m.support()
                    .fold(1, |acc, (i, e)| field.mul(acc, powers[i][e as usize]))
            })
            .collect();
        row.push(rhs);
        Ok(Some(row))
    }

    fn row_exact(&self, w: &[Scalar]) -> Result<(Vec<Scalar>, Scalar)> {
        let du = self.gradient_at(w)?;
        let row = self.monos.iter().map(|m| m.evaluate(&du)).collect();
        Ok((row, pow_scalar(&self.p.evaluate(w)?, self.r - 1)))
    }

    /// Checks the cleared identity for `candidate` at `w`.
    fn holds_at(&self, candidate: &IntegerForm, w: &[Scalar]) -> Result<bool> {
        let du = self.gradient_at(w)?;
        let rhs = pow_scalar(&self.p.evaluate(w)?, self.r - 1);
        let (num, den) = candidate.evaluate(&du, self.r);
        Ok(num * rhs.denom() == rhs.numer() * den)
    }

    fn polynomial(&self, coeffs: &[Scalar]) -> Polynomial {
        Polynomial::from_terms(
            self.p.nvars(),
            self.monos.iter().cloned().zip(coeffs.iter().cloned()),
        )
    }
}

/// A homogeneous form with its coefficients over a common denominator, for
/// exact evaluation without per-operation gcds.
struct IntegerForm {
    terms: Vec<(Vec<(usize, u32)>, BigInt)>,
    denom: BigInt,
}

impl IntegerForm {
    fn new(p: &Polynomial) -> Self {
        let denom = p
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| num_integer::Integer::lcm(&acc, c.denom()));
        let terms = p
            .terms()
            .map(|(m, c)| (m.support().collect(), c.numer() * (&denom / c.denom())))
            .collect();
        IntegerForm { terms, denom }
    }

    /// Value at `u` as `(numerator, denominator)` for a form of degree `r`.
    fn evaluate(&self, u: &[Scalar], r: u32) -> (BigInt, BigInt) {
        let d = u
            .iter()
            .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
        let powers: Vec<Vec<BigInt>> = u
            .iter()
            .map(|x| {
                let base = x.numer() * (&d / x.denom());
                let mut row = vec![BigInt::one()];
                for e in 1..=r as usize {
                    let next = &row[e - 1] * &base;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut sum = BigInt::zero();
        for (support, c) in &self.terms {
            let mut term = c.clone();
            for &(i, e) in support {
                term *= &powers[i][e as usize];
            }
            sum += term;
        }
        (sum, &self.denom * num_traits::pow(d, r as usize))
    }
}

/// Exact nonsingularity of the Hessian at one of a few sampled points.
fn hessian_nonsingular(p: &Polynomial, seed: u64) -> Result<bool> {
    let m = p.nvars();
    let second: Vec<Vec<Polynomial>> = p.gradient().iter().map(Polynomial::gradient).collect();
    let mut rng = rng::seeded(seed, 6);
    for _ in 0..3 {
        let w = rng::int_vector(&mut rng, m, 1000);
        let rows = second
            .iter()
            .map(|row| row.iter().map(|h| h.evaluate(&w)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if linalg::rank(&Matrix::from_rows(rows)?) == m {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Degree-`r` monomials in the weight class of the support of `p`.
fn weight_compatible_monomials(p: &Polynomial, r: u32) -> Result<Vec<Monomial>> {
    let m = p.nvars();
    let support: Vec<&Monomial> = p.terms().map(|(mono, _)| mono).collect();
    let base = support[0].exps();
    let mut rows = vec![vec![Scalar::zero(); m]];
    rows.extend(support.iter().skip(1).map(|mono| {
        mono.exps()
            .iter()
            .zip(base)
            .map(|(&a, &b)| Scalar::from_integer(BigInt::from(i64::from(a) - i64::from(b))))
            .collect()
    }));
    let weights = linalg::nullspace(&Matrix::from_rows(rows)?);
    let level: Vec<Scalar> = weights
        .iter()
        .map(|a| a.iter().zip(base).map(|(x, &e)| x * Scalar::from_integer(BigInt::from(e))).sum())
        .collect();
    Ok(monomials_of_degree(m, r)
        .into_iter()
        .filter(|beta| {
            weights.iter().zip(&level).all(|(a, c)| {
                let v: Scalar = beta.support().map(|(i, e)| &a[i] * Scalar::from_integer(BigInt::from(e))).sum();
                &v == c
            })
        })
        .collect())
}

fn pow_scalar(x: &Scalar, e: u32) -> Scalar {
    num_traits::pow(x.clone(), e as usize)
}

fn echelon_for(problem: &Problem, field: PrimeField, samples: &[Vec<Scalar>]) -> Result<ModEchelon> {
    let mut ech = ModEchelon::new(field, problem.unknowns() + 1);
    for w in samples {
        if let Some(row) = problem.row_mod(field, w)? {
            ech.insert(row);
        }
    }
    Ok(ech)
}

/// Multi-prime reconstruction of the unique solution of the sampled system.
/// Returns a candidate that satisfies every sampled equation exactly.
fn reconstruct(
    problem: &Problem,
    first: &ModEchelon,
    field: PrimeField,
    samples: &[Vec<Scalar>],
    config: &LegendreConfig,
) -> Result<Option<Polynomial>> {
    let n = problem.unknowns();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut prime_index = 0;
    let mut used = 0;
    while used < config.max_primes {
        let (ech, f) = if used == 0 {
            (first.clone(), field)
        } else {
            prime_index += 1;
            let f = PrimeField::new(nth_prime(prime_index));
            (echelon_for(problem, f, samples)?, f)
        };
        used += 1;
        if ech.rank_before(n) < n {
            continue;
        }
        let Some(x) = ech.solve_augmented() else {
            continue;
        };
        let q = f.modulus();
        acc = if acc.is_empty() {
            x.iter().map(|&v| BigInt::from(v)).collect()
        } else {
            acc.iter()
                .zip(&x)
                .map(|(a, &v)| crt_step(a, &modulus, v, q))
                .collect()
        };
        modulus *= BigInt::from(q);
        let coeffs: Option<Vec<Scalar>> = acc
            .iter()
            .map(|a| rational_reconstruction(a, &modulus))
            .collect();
        if let Some(coeffs) = coeffs {
            let candidate = problem.polynomial(&coeffs);
            let form = IntegerForm::new(&candidate);
            let mut ok = true;
            for w in samples {
                if !problem.holds_at(&form, w)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(Some(candidate));
            }
        }
    }
    Ok(None)
}

/// `P_*(dP) - P^{r-1}` expanded symbolically.
pub fn identity_defect(p: &Polynomial, ps: &Polynomial) -> Result<Polynomial> {
    let r = p.homogeneous_degree()?;
    let lhs = ps.substitute(&p.gradient())?;
    lhs.try_sub(&p.pow(r - 1))
}

pub fn legendre_transform(p: &Polynomial, config: &LegendreConfig) -> Result<LegendreResult> {
    let r = p.homogeneous_degree()?;
    if r < 2 {
        return Err(Error::DegreeTooLow { found: r, min: 2 });
    }
    let m = p.nvars();
    let monos = if p.is_zero() || !hessian_nonsingular(p, config.seed)? {
        monomials_of_degree(m, r)
    } else {
        weight_compatible_monomials(p, r)?
    };
    let problem = Problem {
        p,
        r,
        grad: p.gradient(),
        monos,
    };
    let n = problem.unknowns();
    let field = PrimeField::new(nth_prime(0));
    let mut ech = ModEchelon::new(field, n + 1);
    let mut rng = rng::seeded(config.seed, 0);
    let mut samples: Vec<Vec<Scalar>> = Vec::new();
    let mut history: Vec<(usize, usize)> = Vec::new();
    let mut bound = config.initial_box.max(1);
    for round in 0..config.max_rounds.max(1) {
        let target = if round == 0 { n + config.extra_samples } else { config.extra_samples.max(1) };
        let mut added = 0;
        while added < target {
            let w = rng::int_vector(&mut rng, m, bound);
            if p.evaluate(&w)?.is_zero() {
                continue;
            }
            if let Some(row) = problem.row_mod(field, &w)? {
                ech.insert(row);
            }
            samples.push(w);
            added += 1;
        }
        history.push((ech.rank_before(n), ech.rank()));
        bound = bound.saturating_mul(2);
        let k = history.len();
        if k >= 3 && history[k - 1] == history[k - 2] && history[k - 2] == history[k - 3] {
            break;
        }
    }
    let rounds = history.len();
    let (a_rank, ab_rank) = *history.last().expect("at least one round");
    let mut result = LegendreResult {
        status: LegendreStatus::Inconsistent,
        samples_used: samples.len(),
        verified_points: 0,
        certified: false,
        rigorous: false,
        unknowns: n,
        rounds,
    };

    let candidate = if a_rank == n && ab_rank == n {
        reconstruct(&problem, &ech, field, &samples, config)?
    } else {
        None
    };
    let candidate = match candidate {
        Some(c) => Some(c),
        None if n <= config.exact_threshold => {
            let mut rows = Vec::with_capacity(samples.len());
            let mut rhs = Vec::with_capacity(samples.len());
            for w in &samples {
                let (row, b) = problem.row_exact(w)?;
                rows.push(row);
                rhs.push(b);
            }
            match linalg::solve(&Matrix::from_rows(rows)?, &rhs)? {
                None => {
                    result.rigorous = true;
                    return Ok(result);
                }
                Some(sol) if sol.dim > 0 => {
                    result.status = LegendreStatus::DegenerateGradientImage { solution_dim: sol.dim };
                    return Ok(result);
                }
                Some(sol) => Some(problem.polynomial(&sol.x)),
            }
        }
        None => {
            if ab_rank == a_rank && a_rank < n {
                result.status = LegendreStatus::DegenerateGradientImage { solution_dim: n - a_rank };
            }
            return Ok(result);
        }
    };
    let candidate = candidate.expect("candidate present");
    result.rigorous = true;

    let form = IntegerForm::new(&candidate);
    let mut vrng = rng::seeded(config.seed, 1);
    let mut checked = 0;
    while checked < config.verify_points {
        let w = rng::int_vector(&mut vrng, m, 1000);
        if !problem.holds_at(&form, &w)? {
            return Ok(result);
        }
        checked += 1;
    }
    result.verified_points = checked;
    if config.certify {
        if !identity_defect(p, &candidate)?.is_zero() {
            result.verified_points = 0;
            return Ok(result);
        }
        result.certified = true;
    }
    result.status = LegendreStatus::Ekp(candidate);
    Ok(result)
}

/// True iff the transform exists and passed point verification.
pub fn is_ekp_homaloidal(p: &Polynomial, config: &LegendreConfig) -> Result<(bool, LegendreResult)> {
    let res = legendre_transform(p, config)?;
    let ok = res.is_ekp() && res.verified_points == config.verify_points;
    Ok((ok, res))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityMode {
    Symbolic,
    Sampled { points: usize, seed: u64 },
}

/// Outcome of `dP_*(dP(w)) = P(w)^{r-2} w` (forward) and
/// `dP(dP_*(u)) = P_*(u)^{r-2} u` (backward).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradientIdentityReport {
    pub mode: IdentityMode,
    pub forward: bool,
    pub backward: bool,
}

impl GradientIdentityReport {
    pub fn holds(&self) -> bool {
        self.forward && self.backward
    }
}

fn composed_identity_symbolic(f: &Polynomial, g: &Polynomial, r: u32) -> Result<bool> {
    // dG(dF(x)) - F(x)^{r-2} x
    let df = f.gradient();
    let scale = f.pow(r - 2);
    for (i, dg) in g.gradient().iter().enumerate() {
        let lhs = dg.substitute(&df)?;
        let rhs = &scale * &Polynomial::var(f.nvars(), i);
        if !(&lhs - &rhs).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn composed_identity_at(f: &Polynomial, g: &Polynomial, r: u32, x: &[Scalar]) -> Result<bool> {
    let df: Vec<Scalar> = f.gradient().iter().map(|d| d.evaluate(x)).collect::<Result<_>>()?;
    let scale = pow_scalar(&f.evaluate(x)?, r - 2);
    for (i, dg) in g.gradient().iter().enumerate() {
        if dg.evaluate(&df)? != &scale * &x[i] {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn verify_gradient_identities(
    p: &Polynomial,
    ps: &Polynomial,
    mode: IdentityMode,
) -> Result<GradientIdentityReport> {
    if p.nvars() != ps.nvars() {
        return Err(Error::VarCountMismatch {
            left: p.nvars(),
            right: ps.nvars(),
        });
    }
    let r = p.homogeneous_degree()?;
    let rs = ps.homogeneous_degree()?;
    if r != rs {
        return Err(Error::DimensionMismatch(format!("degrees {r} and {rs} differ")));
    }
    if r < 2 {
        return Err(Error::DegreeTooLow { found: r, min: 2 });
    }
    let (forward, backward) = match mode {
        IdentityMode::Symbolic => (
            composed_identity_symbolic(p, ps, r)?,
            composed_identity_symbolic(ps, p, r)?,
        ),
        IdentityMode::Sampled { points, seed } => {
            let mut rng = rng::seeded(seed, 2);
            let (mut fwd, mut bwd) = (true, true);
            for _ in 0..points {
                let x = rng::int_vector(&mut rng, p.nvars(), 1000);
                fwd &= composed_identity_at(p, ps, r, &x)?;
                bwd &= composed_identity_at(ps, p, r, &x)?;
            }
            (fwd, bwd)
        }
    };
    Ok(GradientIdentityReport {
        mode,
        forward,
        backward,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleTransform {
    pub first: LegendreResult,
    pub second: LegendreResult,
    /// `P_** = P` exactly.
    pub round_trip: bool,
}

pub fn double_transform_check(p: &Polynomial, config: &LegendreConfig) -> Result<DoubleTransform> {
    let first = legendre_transform(p, config)?;
    let Some(ps) = first.transform() else {
        return Err(Error::NotEkp(first.status.name().to_string()));
    };
    let second = legendre_transform(ps, config)?;
    let round_trip = second.transform() == Some(p);
    Ok(DoubleTransform {
        first,
        second,
        round_trip,
    })
}
