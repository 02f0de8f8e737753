//! Word-sized modular elimination and rational reconstruction.
//!
//! Used for the large dense systems of the Legendre solver. Every answer that
//! leaves this module through the solver is re-checked in exact arithmetic,
//! so the modular layer only ever accelerates, it never decides.
//!
//! Primes stay below 2^26 so a product of two residues fits in 52 bits and a
//! row can absorb [`LAZY_LIMIT`] multiply-adds before it has to be reduced.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Scalar;

const PRIME_CEILING: u64 = 1 << 26;
const LAZY_LIMIT: usize = 4000;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The `index`-th prime below 2^26, counting down from the ceiling.
pub fn nth_prime(index: usize) -> u64 {
    let mut found = 0;
    let mut n = PRIME_CEILING - 1;
    loop {
        if is_prime(n) {
            if found == index {
                return n;
            }
            found += 1;
        }
        n -= 2;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(p < PRIME_CEILING && p > 2, "prime out of range");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn from_int(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }

    /// Image of a rational, or `None` when the denominator vanishes mod p.
    pub fn from_scalar(&self, x: &Scalar) -> Option<u64> {
        let d = self.from_int(x.denom());
        if d == 0 {
            return None;
        }
        Some(self.mul(self.from_int(x.numer()), self.inv(d)))
    }
}

/// Incrementally built row echelon form over a prime field.
///
/// Pivot rows are stored in insertion order, each normalised to a leading 1
/// and zero in the pivot columns of every earlier row.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    field: PrimeField,
    cols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl ModEchelon {
    pub fn new(field: PrimeField, cols: usize) -> Self {
        ModEchelon {
            field,
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Number of pivots strictly left of `col`.
    pub fn rank_before(&self, col: usize) -> usize {
        self.pivots.iter().filter(|&&c| c < col).count()
    }

    fn reduce(&self, row: &mut [u64]) {
        let p = self.field.p;
        let mut pending = 0;
        for (prow, &c) in self.rows.iter().zip(&self.pivots) {
            let v = row[c] % p;
            if v == 0 {
                row[c] = 0;
                continue;
            }
            let f = p - v;
            for (x, &y) in row[c..].iter_mut().zip(&prow[c..]) {
                *x += f * y as u64;
            }
            pending += 1;
            if pending == LAZY_LIMIT {
                row.iter_mut().for_each(|x| *x %= p);
                pending = 0;
            }
        }
        row.iter_mut().for_each(|x| *x %= p);
    }

    /// Reduces `row` (entries already below p) and appends it as a new pivot
    /// row when it is independent. Returns whether the rank grew.
    pub fn insert(&mut self, mut row: Vec<u64>) -> bool {
        assert_eq!(row.len(), self.cols);
        self.reduce(&mut row);
        let Some(lead) = row.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(row[lead]);
        let normalised = row
            .iter()
            .map(|&x| self.field.mul(x, inv) as u32)
            .collect();
        self.rows.push(normalised);
        self.pivots.push(lead);
        true
    }

    /// Treats the last column as a right-hand side and returns the solution
    /// of the system with free variables set to zero, or `None` when a pivot
    /// sits in the right-hand-side column.
    pub fn solve_augmented(&self) -> Option<Vec<u64>> {
        let n = self.cols - 1;
        if self.pivots.contains(&n) {
            return None;
        }
        let p = self.field.p;
        let mut x = vec![0u64; n];
        for (row, &c) in self.rows.iter().zip(&self.pivots).rev() {
            let mut acc = row[n] as u64;
            for j in c + 1..n {
                if row[j] != 0 && x[j] != 0 {
                    acc = (acc + (p - self.field.mul(row[j] as u64, x[j]))) % p;
                }
            }
            x[c] = acc;
        }
        Some(x)
    }
}

/// Chinese remaindering of `residue` mod `p` into an accumulator mod `m`.
pub fn crt_step(acc: &BigInt, modulus: &BigInt, residue: u64, p: u64) -> BigInt {
    let p_big = BigInt::from(p);
    let acc_mod = acc.mod_floor(&p_big);
    let diff = (BigInt::from(residue) - acc_mod).mod_floor(&p_big);
    let m_mod = modulus.mod_floor(&p_big).to_u64().unwrap();
    let field = PrimeField::new(p);
    let t = field.mul(diff.to_u64().unwrap(), field.inv(m_mod));
    acc + modulus * BigInt::from(t)
}

/// Wang's rational reconstruction: the unique `n/d` with `|n|, d <= sqrt(m/2)`
/// congruent to `a` mod `m`, if it exists.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Scalar> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    let (n, d) = if t1.sign() == Sign::Minus { (-r1, -t1) } else { (r1, t1) };
    Some(Scalar::new(n, d))
}
