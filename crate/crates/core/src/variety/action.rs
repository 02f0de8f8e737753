//! Vector-group and torus actions, fixed-point limits and boundary curves.

use num_traits::{One, Zero};

use super::{AmbientPoint, AmbientSpace};
use crate::error::{Error, Result};
use crate::linalg::{int, Matrix, Scalar};
use crate::poly::binomial;
use crate::rng;
use crate::symbol::contraction_chain;

/// Every `ι_v^{k-l}: F^k → F^l` for one vector `v`.
#[derive(Clone, Debug)]
pub struct ContractionTable {
    v: Vec<Scalar>,
    chain: Vec<Vec<Matrix>>,
}

impl ContractionTable {
    pub fn new(space: &AmbientSpace, v: &[Scalar]) -> Result<Self> {
        Ok(ContractionTable {
            v: v.to_vec(),
            chain: contraction_chain(space.system(), v)?,
        })
    }

    pub fn vector(&self) -> &[Scalar] {
        &self.v
    }

    /// The part of the translated block `k` that is homogeneous of degree
    /// `d` in `v`: `C(k, d) f^{k-d}(ι_v^d Q^{(k)}_j)` for each `j`.
    fn block_part(&self, x: &AmbientPoint, k: usize, d: usize) -> Vec<Scalar> {
        let l = k - d;
        let mat = &self.chain[k][l];
        let coeff = int(binomial(k, d) as i64);
        let f = x.block(l);
        (0..mat.cols())
            .map(|j| {
                let mut acc = Scalar::zero();
                for (i, fi) in f.iter().enumerate() {
                    if !fi.is_zero() {
                        let e = mat.get(i, j);
                        if !e.is_zero() {
                            acc += fi * e;
                        }
                    }
                }
                acc * &coeff
            })
            .collect()
    }

    fn check(&self, x: &AmbientPoint) -> Result<()> {
        let ok = x.blocks().len() == self.chain.len()
            && x
                .blocks()
                .iter()
                .zip(&self.chain)
                .all(|(b, row)| b.len() == row[row.len() - 1].cols());
        if ok {
            Ok(())
        } else {
            Err(Error::PointLayout)
        }
    }

    /// `f'^k = Σ_{l=0}^{k} C(k,l) f^l ∘ ι_v^{k-l}`, where `f^0 = t` and
    /// `f^1` is the `w` block.
    pub fn translate(&self, x: &AmbientPoint) -> Result<AmbientPoint> {
        self.check(x)?;
        let blocks = (0..x.blocks().len())
            .map(|k| {
                let mut block = x.block(k).to_vec();
                for d in 1..=k {
                    for (b, c) in block.iter_mut().zip(self.block_part(x, k, d)) {
                        *b += c;
                    }
                }
                block
            })
            .collect();
        Ok(AmbientPoint { blocks })
    }

    /// Limit of `translate(s v, x)` as `s → ∞`: the coefficients of the top
    /// power of `s` that appears in any coordinate.
    pub fn curve_limit(&self, x: &AmbientPoint) -> Result<AmbientPoint> {
        self.check(x)?;
        let r = x.blocks().len() - 1;
        for d in (0..=r).rev() {
            let blocks: Vec<Vec<Scalar>> = (0..=r)
                .map(|k| {
                    if k >= d {
                        self.block_part(x, k, d)
                    } else {
                        vec![Scalar::zero(); x.block(k).len()]
                    }
                })
                .collect();
            if blocks.iter().flatten().any(|c| !c.is_zero()) {
                return Ok(AmbientPoint { blocks });
            }
        }
        unreachable!("the s^0 part is the nonzero point itself")
    }
}

pub fn translate(space: &AmbientSpace, v: &[Scalar], x: &AmbientPoint) -> Result<AmbientPoint> {
    ContractionTable::new(space, v)?.translate(x)
}

/// `λ·[t : w : f^2 : ... : f^r] = [t : λw : λ^2 f^2 : ... : λ^r f^r]`.
pub fn torus_act(lambda: &Scalar, x: &AmbientPoint) -> Result<AmbientPoint> {
    if lambda.is_zero() {
        return Err(Error::ZeroTorusParameter);
    }
    let mut power = Scalar::one();
    let mut blocks = Vec::with_capacity(x.blocks().len());
    for b in x.blocks() {
        blocks.push(b.iter().map(|c| c * &power).collect());
        power *= lambda;
    }
    Ok(AmbientPoint { blocks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitDirection {
    ToZero,
    ToInfinity,
}

/// Keeps the lowest (`ToZero`) or highest (`ToInfinity`) nonzero weight
/// block and returns it with its weight.
pub fn bb_limit(x: &AmbientPoint, direction: LimitDirection) -> (AmbientPoint, usize) {
    let weights = x.support_weights();
    let keep = match direction {
        LimitDirection::ToZero => weights[0],
        LimitDirection::ToInfinity => weights[weights.len() - 1],
    };
    let blocks = x
        .blocks()
        .iter()
        .enumerate()
        .map(|(k, b)| {
            if k == keep {
                b.clone()
            } else {
                vec![Scalar::zero(); b.len()]
            }
        })
        .collect();
    (AmbientPoint { blocks }, keep)
}

pub fn curve_limit_at_infinity(space: &AmbientSpace, p: &AmbientPoint, v: &[Scalar]) -> Result<AmbientPoint> {
    ContractionTable::new(space, v)?.curve_limit(p)
}

/// A boundary point (`t = 0`) of the orbit closure and how it was made.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub point: AmbientPoint,
    pub construction: String,
}

fn unit(m: usize, i: usize) -> Vec<Scalar> {
    (0..m).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()
}

/// At least `count` boundary constructions. Distinct points come first:
/// the terminal point as a torus limit, curve limits of `o` along
/// coordinate directions and sums of two of them, and translates of those.
/// When the boundary has fewer rational points than requested, further
/// constructions repeat points already found.
pub fn boundary_points(space: &AmbientSpace, count: usize, seed: u64) -> Result<Vec<BoundaryPoint>> {
    let m = space.nvars();
    let mut rng = rng::seeded(seed, 3);
    let mut out: Vec<BoundaryPoint> = Vec::new();
    let push = |out: &mut Vec<BoundaryPoint>, point: AmbientPoint, construction: String, dedupe: bool| {
        if !dedupe || !out.iter().any(|b| b.point.projectively_eq(&point)) {
            out.push(BoundaryPoint {
                point: point.canonical(),
                construction,
            });
        }
    };

    let w = loop {
        let w = rng::int_vector(&mut rng, m, 5);
        if !space.polynomial().evaluate(&w)?.is_zero() {
            break w;
        }
    };
    let (z, _) = bb_limit(&space.embed(&Scalar::one(), &w)?, LimitDirection::ToInfinity);
    push(&mut out, z, "torus limit at infinity of a generic orbit point".into(), true);

    let o = space.origin();
    let mut directions: Vec<(Vec<Scalar>, String)> = (0..m).map(|i| (unit(m, i), format!("e{}", i + 1))).collect();
    for i in 0..m {
        for j in i + 1..m {
            let v: Vec<Scalar> = unit(m, i).iter().zip(unit(m, j)).map(|(a, b)| a + b).collect();
            directions.push((v, format!("e{}+e{}", i + 1, j + 1)));
        }
    }
    for (v, name) in &directions {
        if out.len() >= count.max(1) * 2 {
            break;
        }
        let p = curve_limit_at_infinity(space, &o, v)?;
        push(&mut out, p, format!("curve limit of o along {name}"), true);
    }
    let found = out.len();
    for idx in 1..found {
        if out.len() >= count {
            break;
        }
        let u = rng::int_vector(&mut rng, m, 3);
        let moved = translate(space, &u, &out[idx].point)?;
        let label = format!("translate of [{}] by a sampled vector", out[idx].construction);
        push(&mut out, moved, label, true);
    }
    while out.len() < count {
        let v = rng::int_vector(&mut rng, m, 5);
        if v.iter().all(Zero::is_zero) {
            continue;
        }
        let p = curve_limit_at_infinity(space, &o, &v)?;
        push(&mut out, p, "curve limit of o along a sampled vector".into(), false);
    }
    Ok(out)
}

/// First sampled direction `v` with `curve_limit_at_infinity(p, v) = z`.
pub fn reaching_direction(
    space: &AmbientSpace,
    p: &AmbientPoint,
    tries: usize,
    seed: u64,
) -> Result<Option<Vec<Scalar>>> {
    let z = space.terminal_point();
    let mut rng = rng::seeded(seed, 4);
    for _ in 0..tries {
        let v = rng::int_vector(&mut rng, space.nvars(), 5);
        if curve_limit_at_infinity(space, p, &v)?.projectively_eq(&z) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}
