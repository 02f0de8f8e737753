//! Relations vanishing on the embedded orbit.
//!
//! For each weight `k >= 2` and basis element `Q^{(k)}_j` the form
//! `t^{k-1} f^k_j - Q^{(k)}_j(w)` vanishes on `embed(t, w)`. The `k = 2`
//! family is the quadric one; higher `k` are extra necessary conditions.

use num_traits::Zero;

use super::{AmbientPoint, AmbientSpace};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationKind {
    Quadric,
    Higher,
}

/// A relation as a polynomial in the flattened ambient coordinates
/// `(t, w_1..w_m, f^2_1, ..., f^r_{m_r})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub weight: usize,
    pub index: usize,
    pub kind: RelationKind,
    pub poly: Polynomial,
}

impl Relation {
    pub fn evaluate(&self, x: &AmbientPoint) -> Result<crate::linalg::Scalar> {
        self.poly.evaluate(&x.coordinates())
    }
}

pub fn quadric_relations(space: &AmbientSpace) -> Result<Vec<Relation>> {
    let r = space.degree();
    if r < 2 {
        return Err(Error::DegreeTooLow { found: r as u32, min: 2 });
    }
    let n = space.dim();
    let m = space.nvars();
    let t = Polynomial::var(n, 0);
    let mut out = Vec::new();
    for k in 2..=r {
        let offset = space.block_offset(k);
        let tk = t.pow(k as u32 - 1);
        for (j, q) in space.system().component(k).basis().iter().enumerate() {
            let poly = &(&tk * &Polynomial::var(n, offset + j)) - &q.shift_vars(n, 1);
            debug_assert_eq!(q.nvars(), m);
            out.push(Relation {
                weight: k,
                index: j,
                kind: if k == 2 { RelationKind::Quadric } else { RelationKind::Higher },
                poly,
            });
        }
    }
    Ok(out)
}

/// True iff every generated relation vanishes at `x`. A necessary condition
/// for `x` to lie on the orbit closure only.
pub fn relation_membership(space: &AmbientSpace, x: &AmbientPoint) -> Result<bool> {
    for rel in quadric_relations(space)? {
        if !rel.evaluate(x)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
