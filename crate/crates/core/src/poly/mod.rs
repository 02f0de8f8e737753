//! Sparse multivariate polynomials over the rationals.
//!
//! Monomials are ordered graded-lexicographically with `x1 > x2 > ... > xm`.
//! Terms are kept in a `BTreeMap`, so iteration is ascending and the
//! canonical text form walks it in reverse.
//!
//! Symmetric forms are identified with homogeneous polynomials. Under that
//! identification contraction by a vector is `ι_v φ = (1/deg φ) D_v φ`, and
//! contracting a degree-k form k times by `v` gives `φ(v)`.

mod squarefree;
pub mod univariate;

pub use squarefree::{squarefree_probe, SquarefreeReport, SquarefreeTrial, SquarefreeVerdict};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// Exponent vector with its cached total degree. The derived ordering
/// compares degree first, then exponents lexicographically: graded lex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial {
            degree: exps.iter().sum(),
            exps,
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::new(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::new(exps)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial {
            degree: self.degree - other.degree,
            exps,
        })
    }

    /// Nonzero `(variable, exponent)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
    }

    /// Product of factorials of the exponents.
    pub fn factorial_weight(&self) -> BigInt {
        self.exps.iter().fold(BigInt::one(), |acc, &e| {
            (1..=e).fold(acc, |a, k| a * BigInt::from(k))
        })
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        self.support()
            .fold(Scalar::one(), |acc, (i, e)| acc * num_traits::pow(point[i].clone(), e as usize))
    }
}

/// All monomials of total degree `d` in `nvars` variables, in descending
/// graded-lex order (`x1^d` first).
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(d);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(nvars, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::new(Vec::new()));
        }
        return out;
    }
    rec(nvars, d, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Number of monomials of degree `d` in `nvars` variables.
pub fn count_monomials(nvars: usize, d: u32) -> usize {
    if nvars == 0 {
        return usize::from(d == 0);
    }
    binomial(nvars + d as usize - 1, d as usize)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Scalar::one())
    }

    /// The coordinate function `x_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(nvars, i), Scalar::one())
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial length must match the variable count");
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `Σ coeffs[i] x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Highest total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_ok()
    }

    /// Common degree of all terms. The zero polynomial is rejected.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        let (lo, hi) = match (self.terms.keys().next(), self.terms.keys().next_back()) {
            (Some(lo), Some(hi)) => (lo.degree(), hi.degree()),
            _ => return Err(Error::ZeroPolynomial),
        };
        if lo != hi {
            return Err(Error::NotHomogeneous(hi, lo));
        }
        Ok(hi)
    }

    fn check_vars(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .fold(Scalar::zero(), |acc, (m, c)| acc + c * m.evaluate(point)))
    }

    /// `∂P/∂x_i`.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), c * Scalar::from_integer(e.into()));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    /// `∂^α P` for a multi-index `α`.
    pub fn derivative(&self, alpha: &Monomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let Some(rest) = m.div(alpha) else { continue };
            // falling factorial m_i (m_i - 1) ... (m_i - α_i + 1) per variable
            let factor = m
                .exps
                .iter()
                .zip(&alpha.exps)
                .fold(BigInt::one(), |acc, (&e, &a)| {
                    (0..a).fold(acc, |acc, k| acc * BigInt::from(e - k))
                });
            out.add_term(rest, c * Scalar::from_integer(factor));
        }
        out
    }

    /// All order-`j` partial derivatives `∂^α P`, `|α| = j`, with `α` in
    /// descending graded-lex order.
    pub fn partials(&self, order: u32) -> Vec<Polynomial> {
        monomials_of_degree(self.nvars, order)
            .iter()
            .map(|alpha| self.derivative(alpha))
            .collect()
    }

    /// Directional derivative `D_v P = Σ v_i ∂_i P`.
    pub fn directional_derivative(&self, v: &[Scalar]) -> Result<Polynomial> {
        if v.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                found: v.len(),
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            for (i, e) in m.support() {
                if v[i].is_zero() {
                    continue;
                }
                let mut exps = m.exps.clone();
                exps[i] -= 1;
                out.add_term(
                    Monomial::new(exps),
                    c * &v[i] * Scalar::from_integer(e.into()),
                );
            }
        }
        Ok(out)
    }

    /// Contraction `ι_v φ = (1/k) D_v φ` of a homogeneous form of degree
    /// `k >= 1`. The zero form contracts to zero.
    pub fn contract(&self, v: &[Scalar]) -> Result<Polynomial> {
        if self.is_zero() {
            if v.len() != self.nvars {
                return Err(Error::LengthMismatch {
                    expected: self.nvars,
                    found: v.len(),
                });
            }
            return Ok(self.clone());
        }
        let k = self.homogeneous_degree()?;
        if k == 0 {
            return Err(Error::DegreeTooLow { found: 0, min: 1 });
        }
        Ok(self
            .directional_derivative(v)?
            .scale(&Scalar::new(BigInt::one(), BigInt::from(k))))
    }

    /// `n`-fold contraction by the same vector.
    pub fn contract_times(&self, v: &[Scalar], n: u32) -> Result<Polynomial> {
        let mut cur = self.clone();
        for _ in 0..n {
            cur = cur.contract(v)?;
        }
        Ok(cur)
    }

    /// Substitutes `values[i]` for `x_{i+1}`. All values must share one
    /// variable count, which becomes the variable count of the result.
    pub fn substitute(&self, values: &[Polynomial]) -> Result<Polynomial> {
        if values.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                found: values.len(),
            });
        }
        let target = values.first().map_or(0, Polynomial::nvars);
        if let Some(bad) = values.iter().find(|v| v.nvars != target) {
            return Err(Error::VarCountMismatch {
                left: target,
                right: bad.nvars,
            });
        }
        let mut powers: Vec<Vec<Polynomial>> = values.iter().map(|v| vec![Polynomial::one(target), v.clone()]).collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, e) in m.support() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * &values[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e];
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// `B(s, u) = P(s a + u b)` as a polynomial in two variables.
    pub fn restrict_to_plane(&self, a: &[Scalar], b: &[Scalar]) -> Result<Polynomial> {
        for v in [a, b] {
            if v.len() != self.nvars {
                return Err(Error::LengthMismatch {
                    expected: self.nvars,
                    found: v.len(),
                });
            }
        }
        let lines: Vec<Polynomial> = a
            .iter()
            .zip(b)
            .map(|(ai, bi)| Polynomial::linear(&[ai.clone(), bi.clone()]))
            .collect();
        if lines.is_empty() {
            // a constant in zero variables restricts to the same constant
            return Ok(Polynomial::from_terms(
                2,
                self.terms.values().map(|c| (Monomial::one(2), c.clone())),
            ));
        }
        self.substitute(&lines)
    }

    /// Coefficients against an explicit monomial list.
    pub fn coefficients_in(&self, basis: &[Monomial]) -> Vec<Scalar> {
        basis.iter().map(|m| self.coeff(m)).collect()
    }

    /// Re-embeds into `nvars` variables, sending variable `i` to `offset + i`.
    pub fn shift_vars(&self, nvars: usize, offset: usize) -> Polynomial {
        assert!(offset + self.nvars <= nvars);
        Polynomial::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut exps = vec![0; nvars];
                exps[offset..offset + self.nvars].copy_from_slice(&m.exps);
                (Monomial::new(exps), c.clone())
            }),
        )
    }

    /// Scales to a primitive integer polynomial with positive leading
    /// coefficient.
    pub fn primitive(&self) -> Polynomial {
        let coeffs: Vec<Scalar> = self.terms.values().rev().cloned().collect();
        let prim = crate::linalg::primitive_rational(&coeffs);
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.keys().rev().cloned().zip(prim).collect(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("variable count mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("variable count mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("variable count mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Scalar::one())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, e) in m.support() {
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical text: terms in descending graded-lex order, coefficients as
/// `p/q`, variables `x1..xm`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write_monomial(f, m)?;
            } else {
                write!(f, "{mag}*")?;
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars, self)
    }
}
