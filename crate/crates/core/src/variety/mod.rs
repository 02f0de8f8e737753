//! The ambient space `ℙV_P`, the embedding, group actions, limits,
//! relations and the smoothness report.
//!
//! Coordinates are grouped into weight blocks `0..=r`. Block `k` has one
//! coordinate per canonical basis element `Q^{(k)}_j` of `F^k`; since
//! `F^0 = span{1}` and `F^1` has the monomial basis `x_1..x_m`, block 0 is
//! the `t` coordinate and block 1 is the `w` vector.

mod action;
mod relations;
mod smoothness;

pub use action::{
    boundary_points, bb_limit, curve_limit_at_infinity, reaching_direction, torus_act, translate,
    BoundaryPoint, ContractionTable, LimitDirection,
};
pub use relations::{quadric_relations, relation_membership, Relation, RelationKind};
pub use smoothness::{
    smoothness_report, CheckOutcome, SmoothnessConfig, SmoothnessItem, SmoothnessReport,
    SmoothnessVerdict,
};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, Scalar};
use crate::poly::Polynomial;
use crate::symbol::{symbol_system_of, GeneratedSystem, SymbolSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientSpace {
    generated: GeneratedSystem,
}

impl AmbientSpace {
    pub fn new(p: &Polynomial) -> Result<Self> {
        Ok(AmbientSpace {
            generated: symbol_system_of(p)?,
        })
    }

    pub fn from_generated(generated: GeneratedSystem) -> Self {
        AmbientSpace { generated }
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.generated.polynomial
    }

    pub fn generated(&self) -> &GeneratedSystem {
        &self.generated
    }

    pub fn system(&self) -> &SymbolSystem {
        &self.generated.system
    }

    pub fn degree(&self) -> usize {
        self.system().rank()
    }

    pub fn nvars(&self) -> usize {
        self.system().nvars()
    }

    pub fn block_dims(&self) -> Vec<usize> {
        self.system().profile()
    }

    pub fn dim(&self) -> usize {
        self.system().ambient_dim()
    }

    /// Offset of block `k` in the flattened coordinate vector.
    pub fn block_offset(&self, k: usize) -> usize {
        self.block_dims()[..k].iter().sum()
    }

    fn point_of(&self, blocks: Vec<Vec<Scalar>>) -> Result<AmbientPoint> {
        AmbientPoint::new(blocks, &self.block_dims())
    }

    /// `o = [1:0:...:0]`.
    pub fn origin(&self) -> AmbientPoint {
        let mut blocks = self.zero_blocks();
        blocks[0][0] = Scalar::one();
        AmbientPoint { blocks }
    }

    /// `z = [0:...:0:1]`; the top block is one-dimensional.
    pub fn terminal_point(&self) -> AmbientPoint {
        let mut blocks = self.zero_blocks();
        let r = self.degree();
        blocks[r][0] = Scalar::one();
        AmbientPoint { blocks }
    }

    pub(crate) fn zero_blocks(&self) -> Vec<Vec<Scalar>> {
        self.block_dims()
            .iter()
            .map(|&d| vec![Scalar::zero(); d])
            .collect()
    }

    /// `[t^r : t^{r-1} w : ... : t^{r-k} Q^{(k)}(w) : ...]`. Fails when the
    /// image is the zero vector, which happens for `t = 0` and `P(w) = 0`.
    pub fn embed(&self, t: &Scalar, w: &[Scalar]) -> Result<AmbientPoint> {
        if w.len() != self.nvars() {
            return Err(Error::LengthMismatch {
                expected: self.nvars(),
                found: w.len(),
            });
        }
        let r = self.degree();
        let mut blocks = Vec::with_capacity(r + 1);
        for (k, comp) in self.system().components().iter().enumerate() {
            let scale: Scalar = num_traits::pow(t.clone(), r - k);
            let block = comp
                .basis()
                .iter()
                .map(|q| q.evaluate(w).map(|v| &scale * v))
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
        }
        self.point_of(blocks)
    }

    /// Coordinates of `embed(t, w)` as polynomials in `(t, w_1..w_m)`, with
    /// `t` as variable 0.
    pub fn embedding_polynomials(&self) -> Vec<Polynomial> {
        let m = self.nvars();
        let r = self.degree();
        let t = Polynomial::var(m + 1, 0);
        let mut out = Vec::with_capacity(self.dim());
        for (k, comp) in self.system().components().iter().enumerate() {
            let tk = t.pow((r - k) as u32);
            for q in comp.basis() {
                out.push(&tk * &q.shift_vars(m + 1, 1));
            }
        }
        out
    }
}

/// A nonzero point of `ℙV_P` stored block by block. Derived equality is
/// coordinate-wise; use [`AmbientPoint::projectively_eq`] for points of
/// projective space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AmbientPoint {
    blocks: Vec<Vec<Scalar>>,
}

impl AmbientPoint {
    /// Checks the block layout against `dims` and rejects the zero vector.
    pub fn new(blocks: Vec<Vec<Scalar>>, dims: &[usize]) -> Result<Self> {
        if blocks.len() != dims.len() || blocks.iter().zip(dims).any(|(b, &d)| b.len() != d) {
            return Err(Error::PointLayout);
        }
        let p = AmbientPoint { blocks };
        if p.is_zero() {
            return Err(Error::ZeroPoint);
        }
        Ok(p)
    }

    pub fn blocks(&self) -> &[Vec<Scalar>] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &[Scalar] {
        &self.blocks[k]
    }

    pub fn t(&self) -> &Scalar {
        &self.blocks[0][0]
    }

    pub fn w(&self) -> &[Scalar] {
        &self.blocks[1]
    }

    pub fn coordinates(&self) -> Vec<Scalar> {
        self.blocks.iter().flatten().cloned().collect()
    }

    fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(Zero::is_zero)
    }

    /// Weights of the nonzero blocks, ascending.
    pub fn support_weights(&self) -> Vec<usize> {
        (0..self.blocks.len())
            .filter(|&k| self.blocks[k].iter().any(|x| !x.is_zero()))
            .collect()
    }

    pub fn is_torus_fixed(&self) -> bool {
        self.support_weights().len() == 1
    }

    pub fn is_boundary(&self) -> bool {
        self.t().is_zero()
    }

    /// Primitive integer representative whose first nonzero coordinate in
    /// block order is positive.
    pub fn canonical(&self) -> AmbientPoint {
        let mut flat = linalg::primitive_rational(&self.coordinates()).into_iter();
        let blocks = self
            .blocks
            .iter()
            .map(|b| flat.by_ref().take(b.len()).collect())
            .collect();
        AmbientPoint { blocks }
    }

    pub fn projectively_eq(&self, other: &AmbientPoint) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn scale(&self, c: &Scalar) -> AmbientPoint {
        AmbientPoint {
            blocks: self
                .blocks
                .iter()
                .map(|b| b.iter().map(|x| x * c).collect())
                .collect(),
        }
    }
}
