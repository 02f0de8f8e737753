//! Exact rational scalars and fraction-free linear algebra.
//!
//! Rank uses Bareiss elimination on denominator-cleared integer rows. Reduced
//! echelon forms, nullspaces and solves use integer Gauss-Jordan elimination
//! with row-content removal, so every intermediate value stays an integer and
//! the output is canonical for the row space:
//!
//! * pivots are the first nonzero column of each row and are positive,
//! * every other row is zero in a pivot column,
//! * rows are primitive (content 1).

pub mod modp;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Scalar = num_rational::BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must share one length. An empty row
    /// list yields a `0 x cols` matrix only through [`Matrix::zeros`].
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "ragged rows: {} and {}",
                cols,
                bad.len()
            )));
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j) + a * b;
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Scales a rational row by the lcm of its denominators.
pub fn clear_denominators(row: &[Scalar]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Divides by the gcd of the entries and makes the first nonzero entry
/// positive. The zero vector is left alone.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    let negate = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in v.iter_mut() {
        *x = &*x / &g;
        if negate {
            *x = -&*x;
        }
    }
}

/// Primitive integer form of a rational vector, as rationals.
pub fn primitive_rational(v: &[Scalar]) -> Vec<Scalar> {
    let mut ints = clear_denominators(v);
    make_primitive(&mut ints);
    ints.into_iter().map(Scalar::from_integer).collect()
}

/// Rank by fraction-free Bareiss elimination.
pub fn rank(m: &Matrix) -> usize {
    let rows: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| clear_denominators(m.row(i))).collect();
    bareiss_rank(rows, m.cols())
}

pub(crate) fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let n = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        // smallest nonzero entry as pivot keeps the products short
        let Some(p) = (r..n)
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&i, &j| a[i][c].magnitude().cmp(a[j][c].magnitude()))
        else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = &pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Canonical reduced echelon form of a row space with integer rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub cols: usize,
    /// Primitive integer rows; `rows[i]` has its positive pivot at `pivots[i]`.
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Integer Gauss-Jordan elimination with content removal.
pub fn reduced_echelon(rows: &[Vec<Scalar>], cols: usize) -> Echelon {
    let ints: Vec<Vec<BigInt>> = rows.iter().map(|r| clear_denominators(r)).collect();
    reduced_echelon_int(ints, cols)
}

pub fn reduced_echelon_int(mut a: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    for row in a.iter_mut() {
        make_primitive(row);
    }
    a.retain(|r| r.iter().any(|x| !x.is_zero()));
    let n = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n)
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&i, &j| a[i][c].magnitude().cmp(a[j][c].magnitude()))
        else {
            continue;
        };
        a.swap(r, p);
        let pivot_row = std::mem::take(&mut a[r]);
        let pivot = &pivot_row[c];
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let g = pivot.gcd(&row[c]);
            let mul_row = pivot / &g;
            let mul_piv = &row[c] / &g;
            for j in 0..cols {
                if pivot_row[j].is_zero() {
                    row[j] = &row[j] * &mul_row;
                } else {
                    row[j] = &row[j] * &mul_row - &mul_piv * &pivot_row[j];
                }
            }
            make_primitive(row);
        }
        a[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    // rows above a pivot may have flipped sign during elimination
    for row in a.iter_mut() {
        make_primitive(row);
    }
    Echelon {
        cols,
        rows: a,
        pivots,
    }
}

/// Canonical nullspace basis: one vector per free column in ascending order,
/// each a primitive integer vector with positive leading entry.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Scalar>> {
    let ech = reduced_echelon(&m.row_vecs(), m.cols());
    nullspace_of_echelon(&ech)
}

pub fn nullspace_of_echelon(ech: &Echelon) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; ech.cols];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    (0..ech.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); ech.cols];
            v[f] = Scalar::one();
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                if !row[f].is_zero() {
                    v[p] = -Scalar::new(row[f].clone(), row[p].clone());
                }
            }
            primitive_rational(&v)
        })
        .collect()
}

/// One exact solution of `m x = b` together with the dimension of the
/// solution space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub x: Vec<Scalar>,
    pub dim: usize,
}

/// Returns `None` when the system is inconsistent. Free variables are set to
/// zero in the returned particular solution.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Solution>> {
    if b.len() != m.rows() {
        return Err(Error::LengthMismatch {
            expected: m.rows(),
            found: b.len(),
        });
    }
    let n = m.cols();
    let augmented: Vec<Vec<Scalar>> = (0..m.rows())
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let ech = reduced_echelon(&augmented, n + 1);
    if ech.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![Scalar::zero(); n];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        x[p] = Scalar::new(row[n].clone(), row[p].clone());
    }
    Ok(Some(Solution {
        x,
        dim: n - ech.rank(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(2)), 2);
        assert_eq!(rank(&Matrix::zeros(3, 4)), 0);
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4], &[3, 6]]).unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn rank_with_skipped_columns() {
        let m = Matrix::from_i64(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]]).unwrap();
        assert_eq!(rank(&m), 2);
        let m = Matrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(3, 2), int(1)],
        ])
        .unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&Matrix::identity(3)).is_empty());
        let z = nullspace(&Matrix::zeros(2, 3));
        assert_eq!(z, vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]);
        let m = Matrix::from_i64(&[&[1, 1, 0]]).unwrap();
        assert_eq!(nullspace(&m), vec![ints(&[1, -1, 0]), ints(&[0, 0, 1])]);
    }

    #[test]
    fn nullspace_is_primitive() {
        let m = Matrix::from_i64(&[&[2, 3, 0, 1], &[0, 0, 4, 6]]).unwrap();
        let ns = nullspace(&m);
        assert_eq!(ns, vec![ints(&[3, -2, 0, 0]), ints(&[1, 0, 3, -2])]);
        for v in &ns {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_examples() {
        let s = solve(&Matrix::identity(2), &ints(&[5, 7])).unwrap().unwrap();
        assert_eq!(s, Solution { x: ints(&[5, 7]), dim: 0 });

        let m = Matrix::from_i64(&[&[1, 1]]).unwrap();
        let s = solve(&m, &ints(&[3])).unwrap().unwrap();
        assert_eq!(s.dim, 1);
        assert_eq!(&s.x[0] + &s.x[1], int(3));

        let m = Matrix::from_i64(&[&[1], &[1]]).unwrap();
        assert_eq!(solve(&m, &ints(&[1, 2])).unwrap(), None);
    }

    #[test]
    fn solve_rejects_bad_rhs() {
        assert!(solve(&Matrix::identity(2), &ints(&[1])).is_err());
    }

    #[test]
    fn echelon_is_canonical_for_the_span() {
        let a = reduced_echelon(&[ints(&[2, 4, 6]), ints(&[1, 1, 1])], 3);
        let b = reduced_echelon(&[ints(&[3, 3, 3]), ints(&[0, -2, -4]), ints(&[1, 2, 3])], 3);
        assert_eq!(a, b);
        assert_eq!(a.rows, vec![vec![1.into(), 0.into(), BigInt::from(-1)], vec![0.into(), 1.into(), 2.into()]]);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(Matrix::from_rows(vec![ints(&[1, 2]), ints(&[1])]).is_err());
    }
}
