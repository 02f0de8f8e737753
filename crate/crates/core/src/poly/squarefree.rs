//! Randomised reducedness probe: restrict to random lines and look for a
//! repeated root.

use num_traits::Zero;

use super::univariate::Univariate;
use super::Polynomial;
use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquarefreeVerdict {
    Squarefree,
    NotSquarefree { witness_trial: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeTrial {
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
    /// Degree of `gcd(B, B')` for `B(s) = P(s a + b)`.
    pub gcd_degree: usize,
}

impl SquarefreeTrial {
    pub fn passed(&self) -> bool {
        self.gcd_degree == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeReport {
    pub verdict: SquarefreeVerdict,
    pub trials: Vec<SquarefreeTrial>,
}

impl SquarefreeReport {
    pub fn is_squarefree(&self) -> bool {
        self.verdict == SquarefreeVerdict::Squarefree
    }

    /// A repeated factor seen on every trial rather than on a single
    /// unlucky line.
    pub fn failed_every_trial(&self) -> bool {
        self.trials.iter().all(|t| !t.passed())
    }
}

/// `B(s) = P(s a + b)` with `P(a) != 0`, so `deg B = deg P` and no root is
/// lost at infinity. A squarefree `P` gives a squarefree `B` for generic
/// lines; a repeated factor of `P` always survives restriction, so a single
/// squarefree `B` is a proof.
pub fn squarefree_probe(p: &Polynomial, trials: usize, seed: u64) -> Result<SquarefreeReport> {
    let r = p.homogeneous_degree()?;
    let m = p.nvars();
    let mut rng = rng::seeded(seed, 0x5f_u64);
    let mut out = Vec::with_capacity(trials);
    let mut witness = None;
    for t in 0..trials {
        let bound = 3 + 2 * t as i64;
        let mut attempts = 0;
        let a = loop {
            let a = rng::int_vector(&mut rng, m, bound + attempts / 8);
            if !p.evaluate(&a)?.is_zero() {
                break a;
            }
            attempts += 1;
            if attempts > 10_000 {
                return Err(Error::ZeroPolynomial);
            }
        };
        let b = rng::int_vector(&mut rng, m, bound);
        let restricted = univariate_restriction(p, &a, &b, r)?;
        let g = restricted.gcd(&restricted.derivative());
        let trial = SquarefreeTrial {
            a,
            b,
            gcd_degree: g.degree().unwrap_or(0),
        };
        if !trial.passed() && witness.is_none() {
            witness = Some(t);
        }
        out.push(trial);
    }
    // One squarefree restriction proves `P` squarefree; a repeated root on
    // some lines only is a coincidence of the sampled line.
    let verdict = match witness {
        Some(witness_trial) if out.iter().all(|t| !t.passed()) => SquarefreeVerdict::NotSquarefree { witness_trial },
        _ => SquarefreeVerdict::Squarefree,
    };
    Ok(SquarefreeReport {
        verdict,
        trials: out,
    })
}

fn univariate_restriction(p: &Polynomial, a: &[Scalar], b: &[Scalar], r: u32) -> Result<Univariate> {
    let plane = p.restrict_to_plane(a, b)?;
    // B(s, 1): coefficient of s^i u^{r-i}
    let mut coeffs = vec![Scalar::zero(); r as usize + 1];
    for (mono, c) in plane.terms() {
        coeffs[mono.exps()[0] as usize] += c;
    }
    Ok(Univariate::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use num_traits::One;

    fn mono(exps: &[u32]) -> Polynomial {
        Polynomial::monomial(Monomial::new(exps.to_vec()), Scalar::one())
    }

    #[test]
    fn distinct_linear_factors_are_squarefree() {
        let rep = squarefree_probe(&mono(&[1, 1, 1]), 6, 0).unwrap();
        assert!(rep.is_squarefree());
        assert_eq!(rep.trials.len(), 6);
    }

    #[test]
    fn squared_factor_detected_every_time() {
        let rep = squarefree_probe(&mono(&[2, 1]), 6, 0).unwrap();
        assert_eq!(rep.verdict, SquarefreeVerdict::NotSquarefree { witness_trial: 0 });
        assert!(rep.failed_every_trial());
    }

    #[test]
    fn linear_form_is_squarefree() {
        assert!(squarefree_probe(&mono(&[1]), 4, 3).unwrap().is_squarefree());
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(
            squarefree_probe(&Polynomial::zero(2), 2, 0).unwrap_err(),
            Error::ZeroPolynomial
        );
    }
}
