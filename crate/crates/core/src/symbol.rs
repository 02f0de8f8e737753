//! Graded subspaces of forms, catalecticants, prolongation and symbol
//! systems.
//!
//! A [`GradedSubspace`] stores the reduced echelon basis of its span with
//! columns ordered by descending graded lex, so each basis element is a
//! primitive integer polynomial whose leading monomial is its pivot and no
//! other basis element mentions that monomial. Two spans are equal exactly
//! when their bases are equal.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Scalar};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    degree: u32,
    nvars: usize,
    basis: Vec<Polynomial>,
    leads: Vec<Monomial>,
    full: bool,
}

impl GradedSubspace {
    pub fn zero(degree: u32, nvars: usize) -> Self {
        GradedSubspace {
            degree,
            nvars,
            basis: Vec::new(),
            leads: Vec::new(),
            full: false,
        }
    }

    /// All of `Sym^degree`, with the monomial basis.
    pub fn full(degree: u32, nvars: usize) -> Self {
        let leads = monomials_of_degree(nvars, degree);
        let basis = leads
            .iter()
            .map(|m| Polynomial::monomial(m.clone(), Scalar::one()))
            .collect();
        GradedSubspace {
            degree,
            nvars,
            basis,
            leads,
            full: true,
        }
    }

    /// Canonical basis of the span of `generators`; each generator must be
    /// zero or homogeneous of `degree` in `nvars` variables.
    pub fn span(degree: u32, nvars: usize, generators: &[Polynomial]) -> Result<Self> {
        let mut columns = BTreeSet::new();
        for g in generators {
            if g.nvars() != nvars {
                return Err(Error::VarCountMismatch {
                    left: nvars,
                    right: g.nvars(),
                });
            }
            if g.is_zero() {
                continue;
            }
            let d = g.homogeneous_degree()?;
            if d != degree {
                return Err(Error::NotHomogeneous(degree, d));
            }
            columns.extend(g.terms().map(|(m, _)| m.clone()));
        }
        let columns: Vec<Monomial> = columns.into_iter().rev().collect();
        let rows: Vec<Vec<Scalar>> = generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.coefficients_in(&columns))
            .collect();
        let ech = linalg::reduced_echelon(&rows, columns.len());
        let basis: Vec<Polynomial> = ech
            .rows
            .iter()
            .map(|row| {
                Polynomial::from_terms(
                    nvars,
                    columns
                        .iter()
                        .zip(row)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(m, c)| (m.clone(), Scalar::from_integer(c.clone()))),
                )
            })
            .collect();
        let leads = ech.pivots.iter().map(|&p| columns[p].clone()).collect();
        let full = basis.len() == crate::poly::count_monomials(nvars, degree);
        Ok(GradedSubspace {
            degree,
            nvars,
            basis,
            leads,
            full,
        })
        .map(|s: GradedSubspace| if s.full { Self::full(degree, nvars) } else { s })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    /// Coordinates in the canonical basis and the residual `g - Σ c_j b_j`.
    /// The residual is zero exactly when `g` lies in the span.
    pub fn reduce(&self, g: &Polynomial) -> (Vec<Scalar>, Polynomial) {
        if self.full {
            return (g.coefficients_in(&self.leads), Polynomial::zero(self.nvars));
        }
        let coords: Vec<Scalar> = self
            .basis
            .iter()
            .zip(&self.leads)
            .map(|(b, lead)| g.coeff(lead) / b.coeff(lead))
            .collect();
        let mut residual = g.clone();
        for (b, c) in self.basis.iter().zip(&coords) {
            if !c.is_zero() {
                residual = &residual - &b.scale(c);
            }
        }
        (coords, residual)
    }

    pub fn contains(&self, g: &Polynomial) -> bool {
        self.reduce(g).1.is_zero()
    }

    pub fn coordinates(&self, g: &Polynomial) -> Option<Vec<Scalar>> {
        let (coords, residual) = self.reduce(g);
        residual.is_zero().then_some(coords)
    }

    /// First basis element of `self` outside `other`, if any.
    pub fn first_outside(&self, other: &GradedSubspace) -> Option<&Polynomial> {
        self.basis.iter().find(|b| !other.contains(b))
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        self.first_outside(other).is_none()
    }
}

/// Graded family `F^0, ..., F^r` of subspaces of forms in `nvars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolSystem {
    nvars: usize,
    components: Vec<GradedSubspace>,
}

impl SymbolSystem {
    /// Assembles a system from `F^0..F^r` without checking the symbol-system
    /// axioms; use [`verify_symbol_system`] for that.
    pub fn from_components(nvars: usize, components: Vec<GradedSubspace>) -> Result<Self> {
        for (k, c) in components.iter().enumerate() {
            if c.degree() as usize != k {
                return Err(Error::DimensionMismatch(format!(
                    "component {k} has degree {}",
                    c.degree()
                )));
            }
            if c.nvars() != nvars {
                return Err(Error::VarCountMismatch {
                    left: nvars,
                    right: c.nvars(),
                });
            }
        }
        if components.is_empty() {
            return Err(Error::DimensionMismatch("a symbol system needs F^0".into()));
        }
        Ok(SymbolSystem { nvars, components })
    }

    pub fn rank(&self) -> usize {
        self.components.len() - 1
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn component(&self, k: usize) -> &GradedSubspace {
        &self.components[k]
    }

    pub fn components(&self) -> &[GradedSubspace] {
        &self.components
    }

    /// `(dim F^0, ..., dim F^r)`.
    pub fn profile(&self) -> Vec<usize> {
        self.components.iter().map(GradedSubspace::dim).collect()
    }

    /// `1 + m + Σ_{k>=2} dim F^k`.
    pub fn ambient_dim(&self) -> usize {
        self.profile().iter().sum()
    }
}

/// The symbol system of one polynomial plus the rank of its order-(r-1)
/// partials, which may fall short of `m` even though `F^1` is all of `W*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedSystem {
    pub polynomial: Polynomial,
    pub system: SymbolSystem,
    pub raw_linear_rank: usize,
}

impl GeneratedSystem {
    pub fn degree(&self) -> usize {
        self.system.rank()
    }

    pub fn is_degenerate_in_linear_degree(&self) -> bool {
        self.raw_linear_rank < self.system.nvars()
    }
}

/// `F^k = <∂^{r-k} P>` for `2 <= k <= r`, `F^1 = W*`, `F^0 = C`.
pub fn symbol_system_of(p: &Polynomial) -> Result<GeneratedSystem> {
    let r = p.homogeneous_degree()?;
    if r == 0 {
        return Err(Error::DegreeTooLow { found: 0, min: 1 });
    }
    let m = p.nvars();
    let mut components = vec![GradedSubspace::full(0, m), GradedSubspace::full(1, m)];
    for k in 2..=r {
        components.push(GradedSubspace::span(k, m, &p.partials(r - k))?);
    }
    let raw_linear_rank = GradedSubspace::span(1, m, &p.partials(r - 1))?.dim();
    Ok(GeneratedSystem {
        polynomial: p.clone(),
        system: SymbolSystem::from_components(m, components)?,
        raw_linear_rank,
    })
}

/// Matrix of `D ↦ D(P)` from order-`j` constant-coefficient operators to
/// degree-`(r-j)` forms. Columns follow the descending graded-lex order of
/// `∂^α`, rows the descending order of the target monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalecticantMap {
    pub source_order: u32,
    pub matrix: Matrix,
}

impl CatalecticantMap {
    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }
}

pub fn catalecticant(p: &Polynomial, j: u32) -> Result<CatalecticantMap> {
    let r = p.homogeneous_degree()?;
    if j > r {
        return Err(Error::DimensionMismatch(format!("order {j} exceeds degree {r}")));
    }
    let m = p.nvars();
    let targets = monomials_of_degree(m, r - j);
    let index: std::collections::HashMap<&Monomial, usize> =
        targets.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let sources = monomials_of_degree(m, j);
    let mut matrix = Matrix::zeros(targets.len(), sources.len());
    for (col, alpha) in sources.iter().enumerate() {
        for (mono, c) in p.derivative(alpha).terms() {
            matrix.set(index[mono], col, c.clone());
        }
    }
    Ok(CatalecticantMap {
        source_order: j,
        matrix,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSymmetryReport {
    /// `ranks[j] = rank P_{j, r-j}` for `j = 0..=r`.
    pub ranks: Vec<usize>,
}

impl RankSymmetryReport {
    /// `(j, rank_j, rank_{r-j})` for `j <= r/2`.
    pub fn pairs(&self) -> Vec<(usize, usize, usize)> {
        let r = self.ranks.len() - 1;
        (0..=r / 2)
            .map(|j| (j, self.ranks[j], self.ranks[r - j]))
            .collect()
    }

    pub fn symmetric(&self) -> bool {
        self.pairs().iter().all(|&(_, a, b)| a == b)
    }
}

pub fn rank_symmetry_check(p: &Polynomial) -> Result<RankSymmetryReport> {
    let r = p.homogeneous_degree()?;
    let ranks = (0..=r)
        .map(|j| catalecticant(p, j).map(|c| c.rank()))
        .collect::<Result<Vec<_>>>()?;
    Ok(RankSymmetryReport { ranks })
}

/// `{φ ∈ Sym^{k+1} : ι_{e_i} φ ∈ F for all i}`, the nullspace of the stacked
/// membership conditions. Scaling `ι` by `1/(k+1)` does not change membership,
/// so the conditions are written on plain partial derivatives.
pub fn prolong(f: &GradedSubspace) -> Result<GradedSubspace> {
    let k = f.degree();
    let m = f.nvars();
    let unknowns = monomials_of_degree(m, k + 1);
    if f.is_full() {
        return Ok(GradedSubspace::full(k + 1, m));
    }
    let lower = monomials_of_degree(m, k);
    let pivot: std::collections::HashMap<&Monomial, usize> =
        f.leads.iter().enumerate().map(|(j, l)| (l, j)).collect();
    let lower_index: std::collections::HashMap<&Monomial, usize> =
        lower.iter().enumerate().map(|(i, l)| (l, i)).collect();
    // membership of g: g[c] - Σ_j g[lead_j] b_j[c] / b_j[lead_j] = 0 for every
    // non-pivot column c; express each as a row over the lower monomials
    let mut membership: Vec<Vec<Scalar>> = Vec::new();
    for c in lower.iter().filter(|c| !pivot.contains_key(c)) {
        let mut row = vec![Scalar::zero(); lower.len()];
        row[lower_index[c]] = Scalar::one();
        for (b, lead) in f.basis.iter().zip(&f.leads) {
            let bc = b.coeff(c);
            if !bc.is_zero() {
                row[lower_index[lead]] -= bc / b.coeff(lead);
            }
        }
        membership.push(row);
    }
    let unknown_index: std::collections::HashMap<&Monomial, usize> =
        unknowns.iter().enumerate().map(|(i, u)| (u, i)).collect();
    let mut rows = Vec::new();
    for i in 0..m {
        // ∂_i x^β = β_i x^{β - e_i}: lower monomial l comes from β = l + e_i
        let shift = Monomial::var(m, i);
        for mrow in &membership {
            let mut row = vec![Scalar::zero(); unknowns.len()];
            let mut any = false;
            for (l, c) in lower.iter().zip(mrow) {
                if c.is_zero() {
                    continue;
                }
                let beta = l.mul(&shift);
                let e = beta.exps()[i];
                row[unknown_index[&beta]] += c * Scalar::from_integer(e.into());
                any = true;
            }
            if any {
                rows.push(row);
            }
        }
    }
    let kernel = if rows.is_empty() {
        linalg::nullspace(&Matrix::zeros(0, unknowns.len()))
    } else {
        linalg::nullspace(&Matrix::from_rows(rows)?)
    };
    let gens: Vec<Polynomial> = kernel
        .iter()
        .map(|v| Polynomial::from_terms(m, unknowns.iter().cloned().zip(v.iter().cloned())))
        .collect();
    GradedSubspace::span(k + 1, m, &gens)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolFailure {
    /// `F^0` is not the constants.
    ConstantPart,
    /// `F^1` is not all linear forms.
    LinearPart,
    /// `F^r = 0`.
    TopVanishes,
    /// `F^{degree+1} ⊄ prolong(F^degree)`: contracting `witness` along the
    /// basis vector `e_{direction+1}` leaves `F^degree`.
    Inclusion {
        degree: usize,
        witness: Polynomial,
        direction: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolVerdict {
    Pass,
    Fail(SymbolFailure),
}

impl SymbolVerdict {
    pub fn passed(&self) -> bool {
        *self == SymbolVerdict::Pass
    }
}

/// Checks the normalisations and `F^{k+1} ⊆ prolong(F^k)` for `1 <= k < r`.
/// The inclusion is tested element-wise: every contraction of every basis
/// element of `F^{k+1}` by a basis vector must reduce to zero against `F^k`.
pub fn verify_symbol_system(s: &SymbolSystem) -> SymbolVerdict {
    let m = s.nvars();
    if *s.component(0) != GradedSubspace::full(0, m) {
        return SymbolVerdict::Fail(SymbolFailure::ConstantPart);
    }
    if s.rank() >= 1 && !s.component(1).is_full() {
        return SymbolVerdict::Fail(SymbolFailure::LinearPart);
    }
    if s.component(s.rank()).dim() == 0 {
        return SymbolVerdict::Fail(SymbolFailure::TopVanishes);
    }
    for k in 1..s.rank() {
        let lower = s.component(k);
        for phi in s.component(k + 1).basis() {
            for i in 0..m {
                if !lower.contains(&phi.partial(i)) {
                    return SymbolVerdict::Fail(SymbolFailure::Inclusion {
                        degree: k,
                        witness: phi.clone(),
                        direction: i,
                    });
                }
            }
        }
    }
    SymbolVerdict::Pass
}

fn check_range(s: &SymbolSystem, from: usize, to: usize) -> Result<()> {
    if to > from || from > s.rank() {
        return Err(Error::InvalidDegreeRange {
            from,
            to,
            rank: s.rank(),
        });
    }
    Ok(())
}

/// Matrix of `ι_v^{from-to}: F^from → F^to` in the canonical bases
/// (`dim F^to` rows, `dim F^from` columns). `to = 0` is accepted and gives
/// the row of evaluations `Q_j(v)`.
pub fn contraction_matrix(s: &SymbolSystem, v: &[Scalar], from: usize, to: usize) -> Result<Matrix> {
    check_range(s, from, to)?;
    if v.len() != s.nvars() {
        return Err(Error::LengthMismatch {
            expected: s.nvars(),
            found: v.len(),
        });
    }
    let source = s.component(from);
    let target = s.component(to);
    let mut out = Matrix::zeros(target.dim(), source.dim());
    for (j, q) in source.basis().iter().enumerate() {
        let image = q.contract_times(v, (from - to) as u32)?;
        let coords = target
            .coordinates(&image)
            .ok_or(Error::ContractionLeavesSystem { from, to })?;
        for (i, c) in coords.into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    Ok(out)
}

/// `chain[k][l]` is the matrix of `ι_v^{k-l}: F^k → F^l` for all
/// `0 <= l <= k <= r`, computed by contracting each basis element once per
/// step.
pub fn contraction_chain(s: &SymbolSystem, v: &[Scalar]) -> Result<Vec<Vec<Matrix>>> {
    if v.len() != s.nvars() {
        return Err(Error::LengthMismatch {
            expected: s.nvars(),
            found: v.len(),
        });
    }
    let r = s.rank();
    let mut chain = Vec::with_capacity(r + 1);
    for k in 0..=r {
        let source = s.component(k);
        let mut mats: Vec<Matrix> = (0..=k)
            .map(|l| Matrix::zeros(s.component(l).dim(), source.dim()))
            .collect();
        mats[k] = Matrix::identity(source.dim());
        for (j, q) in source.basis().iter().enumerate() {
            let mut cur = q.clone();
            for l in (0..k).rev() {
                cur = cur.contract(v)?;
                let coords = s
                    .component(l)
                    .coordinates(&cur)
                    .ok_or(Error::ContractionLeavesSystem { from: k, to: l })?;
                for (i, c) in coords.into_iter().enumerate() {
                    mats[l].set(i, j, c);
                }
            }
        }
        chain.push(mats);
    }
    Ok(chain)
}
