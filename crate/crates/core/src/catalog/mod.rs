//! Catalogued polynomial families, their expected invariants and products
//! over disjoint variable blocks.
//!
//! Variable conventions:
//!
//! * `det[n]`: `x_{ij}` row-major, index `i*n + j`.
//! * `symdet[n]`: `x_{ij}` for `i <= j`, row-major over the upper triangle.
//! * `pfaff[2n]`: `x_{ij}` for `i < j`, row-major over the strict upper
//!   triangle.
//! * `quadline[m]`: `v_1..v_m` then `x`.
//! * `cartan`: the three 3x3 matrices `A`, `B`, `C`, each row-major.

mod families;
mod verify;

use std::fmt;

pub use verify::{
    classify, component_count_check, verify_entry, verify_polynomial, ComponentCountReport, EntryCheck, EntryReport,
    VerifyConfig,
};

use crate::error::{Error, Result};
use crate::poly::{binomial, Polynomial};

/// Irreducible Hermitian symmetric factor types, plus the two flagged cases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HssLabel {
    /// `Gr(n, 2n)`.
    Grassmannian(usize),
    /// `LG(n, 2n)`.
    LagrangianGrassmannian(usize),
    /// Spinor variety for `2n x 2n` skew matrices, carrying `2n`.
    Spinor(usize),
    /// `Q^n`.
    Hyperquadric(usize),
    E7P7,
    /// A linear factor; whether it counts as a degenerate quadric is open.
    ProjectiveLine,
    /// Not reduced, outside the classification.
    NonReduced,
}

impl HssLabel {
    pub fn short(&self) -> String {
        match self {
            HssLabel::Grassmannian(n) => format!("Gr({n},{})", 2 * n),
            HssLabel::LagrangianGrassmannian(n) => format!("LG({n},{})", 2 * n),
            HssLabel::Spinor(n) => format!("S_{n}"),
            HssLabel::Hyperquadric(n) => format!("Q^{n}"),
            HssLabel::E7P7 => "E7/P7".to_string(),
            HssLabel::ProjectiveLine => "P^1 (convention unresolved)".to_string(),
            HssLabel::NonReduced => "non-reduced".to_string(),
        }
    }

    pub fn is_classified(&self) -> bool {
        !matches!(self, HssLabel::ProjectiveLine | HssLabel::NonReduced)
    }
}

impl fmt::Display for HssLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HssLabel::Grassmannian(_) => write!(f, "Grassmannian variety {}", self.short()),
            HssLabel::LagrangianGrassmannian(_) => write!(f, "Lagrangian Grassmannian {}", self.short()),
            HssLabel::Spinor(_) => write!(f, "Spinor variety {}", self.short()),
            HssLabel::Hyperquadric(_) => write!(f, "hyperquadric {}", self.short()),
            HssLabel::E7P7 => write!(f, "27-dimensional E_7/P_7"),
            HssLabel::ProjectiveLine => write!(f, "P^1 (convention unresolved)"),
            HssLabel::NonReduced => write!(f, "non-reduced (outside the classification)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    XCubed,
    Quad(usize),
    QuadLine(usize),
    MonProd(usize),
    Det(usize),
    SymDet(usize),
    /// Carries the matrix size `2n`.
    Pfaff(usize),
    Cartan,
}

const PARAMETRISED: [(&str, usize, usize); 6] = [
    ("quad", 1, 8),
    ("quadline", 1, 8),
    ("monprod", 1, 8),
    ("det", 1, 4),
    ("symdet", 1, 4),
    ("pfaff", 2, 8),
];

impl Family {
    /// Accepts `name[p]`, `namep`, `x_cubed` and `cartan`.
    pub fn parse(text: &str) -> Result<Family> {
        let text = text.trim();
        match text {
            "x_cubed" => return Ok(Family::XCubed),
            "cartan" => return Ok(Family::Cartan),
            _ => {}
        }
        let (name, param) = match text.find('[') {
            Some(open) => {
                let inner = text[open + 1..]
                    .strip_suffix(']')
                    .ok_or_else(|| Error::InvalidParameter(format!("missing `]` in `{text}`")))?;
                (&text[..open], inner)
            }
            None => {
                let split = text.find(|c: char| c.is_ascii_digit()).unwrap_or(text.len());
                (&text[..split], &text[split..])
            }
        };
        let Some(&(family, min, max)) = PARAMETRISED.iter().find(|(n, _, _)| *n == name) else {
            return Err(Error::UnknownCatalogName(text.to_string()));
        };
        if param.is_empty() {
            return Err(Error::InvalidParameter(format!("`{family}` needs a parameter")));
        }
        let value: usize = param
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("`{param}` is not a count")))?;
        if value < min || value > max {
            return Err(Error::ParameterOutOfRange {
                family: family.to_string(),
                value,
                min,
                max,
            });
        }
        Ok(match family {
            "quad" => Family::Quad(value),
            "quadline" => Family::QuadLine(value),
            "monprod" => Family::MonProd(value),
            "det" => Family::Det(value),
            "symdet" => Family::SymDet(value),
            _ => {
                if value % 2 == 1 {
                    return Err(Error::InvalidParameter(format!("pfaff needs an even size, got {value}")));
                }
                Family::Pfaff(value)
            }
        })
    }

    /// Every family with its parameter range, for listings.
    pub fn listing() -> Vec<(String, String)> {
        let mut out = vec![("x_cubed".to_string(), "x^3 in one variable".to_string())];
        let text = [
            "sum of n squares",
            "(v_1^2 + ... + v_m^2) * x",
            "x_1 * ... * x_m",
            "determinant of a generic n x n matrix",
            "determinant of a generic symmetric n x n matrix",
            "Pfaffian of a generic 2n x 2n skew matrix",
        ];
        for ((name, min, max), what) in PARAMETRISED.iter().zip(text) {
            let range = if *name == "pfaff" {
                format!("{name}[2n], 2n in {{{min},4,6,{max}}}")
            } else {
                format!("{name}[n], {min} <= n <= {max}")
            };
            out.push((range, what.to_string()));
        }
        out.push(("cartan".to_string(), "|A| + |B| + |C| - Tr(ABC) on 27 variables".to_string()));
        out
    }

    pub fn polynomial(&self) -> Polynomial {
        match *self {
            Family::XCubed => families::x_cubed(),
            Family::Quad(n) => families::sum_of_squares(n),
            Family::QuadLine(m) => families::quadline(m),
            Family::MonProd(m) => families::monomial_product(m),
            Family::Det(n) => families::determinant(n),
            Family::SymDet(n) => families::symmetric_determinant(n),
            Family::Pfaff(n) => families::pfaffian(n),
            Family::Cartan => families::cartan(),
        }
    }

    pub fn expected(&self) -> ExpectedInvariants {
        let (degree, nvars, profile, labels, blocks): (usize, usize, Vec<usize>, Vec<HssLabel>, Vec<Vec<usize>>) =
            match *self {
                Family::XCubed => (3, 1, vec![1; 4], vec![HssLabel::NonReduced], vec![vec![0]]),
                Family::Quad(n) => {
                    let label = if n == 1 { HssLabel::NonReduced } else { HssLabel::Hyperquadric(n) };
                    (2, n, vec![1, n, 1], vec![label], vec![(0..n).collect()])
                }
                Family::QuadLine(m) => {
                    let label = if m == 1 { HssLabel::NonReduced } else { HssLabel::Hyperquadric(m) };
                    (
                        3,
                        m + 1,
                        vec![1, m + 1, m + 1, 1],
                        vec![label, HssLabel::ProjectiveLine],
                        vec![(0..m).collect(), vec![m]],
                    )
                }
                Family::MonProd(m) => (
                    m,
                    m,
                    (0..=m).map(|k| binomial(m, k)).collect(),
                    vec![HssLabel::ProjectiveLine; m],
                    (0..m).map(|i| vec![i]).collect(),
                ),
                Family::Det(n) => (
                    n,
                    n * n,
                    (0..=n).map(|k| binomial(n, k).pow(2)).collect(),
                    vec![HssLabel::Grassmannian(n)],
                    vec![(0..n * n).collect()],
                ),
                Family::SymDet(n) => (
                    n,
                    n * (n + 1) / 2,
                    (0..=n).map(|k| symmetric_minor_span(n, k)).collect(),
                    vec![HssLabel::LagrangianGrassmannian(n)],
                    vec![(0..n * (n + 1) / 2).collect()],
                ),
                Family::Pfaff(n2) => (
                    n2 / 2,
                    n2 * (n2 - 1) / 2,
                    (0..=n2 / 2).map(|k| binomial(n2, 2 * k)).collect(),
                    vec![HssLabel::Spinor(n2)],
                    vec![(0..n2 * (n2 - 1) / 2).collect()],
                ),
                Family::Cartan => (3, 27, vec![1, 27, 27, 1], vec![HssLabel::E7P7], vec![(0..27).collect()]),
            };
        ExpectedInvariants {
            degree,
            nvars,
            ambient_dim: profile.iter().sum(),
            profile,
            labels,
            blocks,
        }
    }
}

/// Dimension of the span of the `k x k` minors of a generic symmetric
/// `n x n` matrix.
fn symmetric_minor_span(n: usize, k: usize) -> usize {
    let below = if k == 0 { 0 } else { binomial(n, k - 1) * binomial(n + 1, k + 1) };
    binomial(n, k) * binomial(n + 1, k) - below
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::XCubed => write!(f, "x_cubed"),
            Family::Quad(n) => write!(f, "quad[{n}]"),
            Family::QuadLine(m) => write!(f, "quadline[{m}]"),
            Family::MonProd(m) => write!(f, "monprod[{m}]"),
            Family::Det(n) => write!(f, "det[{n}]"),
            Family::SymDet(n) => write!(f, "symdet[{n}]"),
            Family::Pfaff(n) => write!(f, "pfaff[{n}]"),
            Family::Cartan => write!(f, "cartan"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedInvariants {
    pub degree: usize,
    pub nvars: usize,
    pub profile: Vec<usize>,
    pub ambient_dim: usize,
    pub labels: Vec<HssLabel>,
    /// Variable blocks carrying the factors of the construction.
    pub blocks: Vec<Vec<usize>>,
}

impl ExpectedInvariants {
    /// Irreducible factors tracked by construction.
    pub fn factor_count(&self) -> usize {
        self.blocks.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub family: Family,
    pub polynomial: Polynomial,
    pub expected: ExpectedInvariants,
}

impl CatalogEntry {
    pub fn name(&self) -> String {
        self.family.to_string()
    }
}

pub fn build(name: &str) -> Result<CatalogEntry> {
    Ok(build_family(Family::parse(name)?))
}

pub fn build_family(family: Family) -> CatalogEntry {
    CatalogEntry {
        family,
        polynomial: family.polynomial(),
        expected: family.expected(),
    }
}

/// Catalog entries placed on disjoint variable blocks, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpec {
    factors: Vec<CatalogEntry>,
}

impl ProductSpec {
    pub fn new(factors: Vec<CatalogEntry>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyProduct);
        }
        Ok(ProductSpec { factors })
    }

    /// Comma-separated catalog names.
    pub fn parse(text: &str) -> Result<Self> {
        let factors = text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(build)
            .collect::<Result<Vec<_>>>()?;
        ProductSpec::new(factors)
    }

    pub fn factors(&self) -> &[CatalogEntry] {
        &self.factors
    }

    pub fn name(&self) -> String {
        let names: Vec<String> = self.factors.iter().map(CatalogEntry::name).collect();
        names.join(",")
    }

    pub fn nvars(&self) -> usize {
        self.factors.iter().map(|f| f.polynomial.nvars()).sum()
    }

    pub fn polynomial(&self) -> Polynomial {
        let n = self.nvars();
        let mut offset = 0;
        let mut out = Polynomial::one(n);
        for f in &self.factors {
            out = &out * &f.polynomial.shift_vars(n, offset);
            offset += f.polynomial.nvars();
        }
        out
    }

    /// Degrees and variable counts add, profiles convolve, ambient
    /// dimensions multiply, labels and blocks concatenate.
    pub fn expected(&self) -> ExpectedInvariants {
        let mut acc = ExpectedInvariants {
            degree: 0,
            nvars: 0,
            profile: vec![1],
            ambient_dim: 1,
            labels: Vec::new(),
            blocks: Vec::new(),
        };
        for f in &self.factors {
            let e = &f.expected;
            let mut profile = vec![0; acc.profile.len() + e.profile.len() - 1];
            for (i, a) in acc.profile.iter().enumerate() {
                for (j, b) in e.profile.iter().enumerate() {
                    profile[i + j] += a * b;
                }
            }
            acc.blocks
                .extend(e.blocks.iter().map(|b| b.iter().map(|v| v + acc.nvars).collect::<Vec<_>>()));
            acc.degree += e.degree;
            acc.nvars += e.nvars;
            acc.profile = profile;
            acc.ambient_dim *= e.ambient_dim;
            acc.labels.extend(e.labels.iter().copied());
        }
        acc
    }

    /// The product as a single catalog-like entry.
    pub fn as_entry(&self) -> Option<&CatalogEntry> {
        (self.factors.len() == 1).then(|| &self.factors[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::symbol_system_of;

    #[test]
    fn parse_names() {
        assert_eq!(Family::parse("det[3]").unwrap(), Family::Det(3));
        assert_eq!(Family::parse("det3").unwrap(), Family::Det(3));
        assert_eq!(Family::parse("pfaff[6]").unwrap(), Family::Pfaff(6));
        assert_eq!(Family::parse("x_cubed").unwrap(), Family::XCubed);
        assert!(matches!(Family::parse("pfaff[5]"), Err(Error::InvalidParameter(_))));
        assert!(matches!(Family::parse("det[5]"), Err(Error::ParameterOutOfRange { .. })));
        assert!(matches!(Family::parse("quad[0]"), Err(Error::ParameterOutOfRange { .. })));
        assert!(matches!(Family::parse("cubic"), Err(Error::UnknownCatalogName(_))));
        assert!(matches!(Family::parse("det"), Err(Error::InvalidParameter(_))));
        assert!(matches!(Family::parse("det[x]"), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn display_round_trips() {
        for f in [
            Family::XCubed,
            Family::Quad(4),
            Family::QuadLine(2),
            Family::MonProd(3),
            Family::Det(2),
            Family::SymDet(3),
            Family::Pfaff(6),
            Family::Cartan,
        ] {
            assert_eq!(Family::parse(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn expected_table_examples() {
        let e = Family::Det(3).expected();
        assert_eq!((e.degree, e.nvars, e.ambient_dim), (3, 9, 20));
        assert_eq!(e.profile, vec![1, 9, 9, 1]);
        assert_eq!(e.labels[0].short(), "Gr(3,6)");
        assert_eq!(Family::Pfaff(6).expected().ambient_dim, 32);
        assert_eq!(Family::SymDet(3).expected().profile, vec![1, 6, 6, 1]);
        assert_eq!(Family::SymDet(4).expected().ambient_dim, 42);
        assert_eq!(Family::Cartan.expected().ambient_dim, 56);
        assert_eq!(Family::Quad(4).expected().profile, vec![1, 4, 1]);
        assert_eq!(Family::MonProd(3).expected().ambient_dim, 8);
        assert_eq!(Family::QuadLine(3).expected().ambient_dim, 10);
    }

    #[test]
    fn small_profiles_match_computation() {
        for f in [
            Family::XCubed,
            Family::Quad(3),
            Family::QuadLine(2),
            Family::MonProd(4),
            Family::Det(2),
            Family::SymDet(2),
            Family::Pfaff(4),
        ] {
            let e = build_family(f);
            let s = symbol_system_of(&e.polynomial).unwrap();
            assert_eq!(s.system.profile(), e.expected.profile, "{f}");
            assert_eq!(e.polynomial.nvars(), e.expected.nvars);
        }
    }

    #[test]
    fn products() {
        let xy = ProductSpec::parse("monprod[1],monprod[1]").unwrap();
        assert_eq!(xy.polynomial().to_string(), "x1*x2");
        assert_eq!(xy.expected().ambient_dim, 4);
        assert_eq!(xy.expected().factor_count(), 2);
        let ql = ProductSpec::parse("quad[2],monprod[1]").unwrap();
        assert_eq!(ql.polynomial(), build("quadline[2]").unwrap().polynomial);
        assert_eq!(ql.expected().profile, Family::QuadLine(2).expected().profile);
        let three = ProductSpec::parse("monprod[1],monprod[1],monprod[1]").unwrap();
        assert_eq!(three.expected().ambient_dim, 8);
        assert_eq!(three.expected().degree, 3);
        assert_eq!(ProductSpec::parse("").unwrap_err(), Error::EmptyProduct);
    }
}
