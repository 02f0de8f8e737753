//! Dense univariate polynomials over the rationals, just enough for the
//! squarefree probe.

use num_traits::{One, Zero};

use crate::linalg::Scalar;

/// Coefficients in ascending powers, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Univariate(Vec<Scalar>);

impl Univariate {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Univariate(coeffs)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Univariate {
        Univariate::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Scalar::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn rem(&self, divisor: &Univariate) -> Univariate {
        let d = divisor.degree().expect("division by the zero polynomial");
        let lead = &divisor.0[d];
        let mut r = self.0.clone();
        while r.len() > d {
            let top = r.len() - 1;
            let q = &r[top] / lead;
            if !q.is_zero() {
                let shift = top - d;
                for (i, c) in divisor.0.iter().enumerate() {
                    r[shift + i] = &r[shift + i] - &q * c;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Univariate::new(r)
    }

    fn monic(&self) -> Univariate {
        match self.0.last() {
            Some(lead) if !lead.is_one() => {
                Univariate(self.0.iter().map(|c| c / lead).collect())
            }
            _ => self.clone(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Univariate) -> Univariate {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn u(v: &[i64]) -> Univariate {
        Univariate::new(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn gcd_of_shared_root() {
        // (s-1)(s+2) and (s-1)(s-3)
        let g = u(&[-2, 1, 1]).gcd(&u(&[3, -4, 1]));
        assert_eq!(g, u(&[-1, 1]));
    }

    #[test]
    fn square_has_nonconstant_gcd_with_derivative() {
        let sq = u(&[1, 2, 1]); // (s+1)^2
        assert_eq!(sq.gcd(&sq.derivative()).degree(), Some(1));
        let sf = u(&[-1, 0, 1]);
        assert_eq!(sf.gcd(&sf.derivative()).degree(), Some(0));
    }
}
