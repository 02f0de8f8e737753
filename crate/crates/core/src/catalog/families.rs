//! Polynomial constructions for the catalog families.

use crate::linalg::int;
use crate::poly::{Monomial, Polynomial};

pub fn x_cubed() -> Polynomial {
    Polynomial::var(1, 0).pow(3)
}

pub fn sum_of_squares(n: usize) -> Polynomial {
    (0..n).fold(Polynomial::zero(n), |acc, i| &acc + &Polynomial::var(n, i).pow(2))
}

pub fn quadline(m: usize) -> Polynomial {
    sum_of_squares(m).shift_vars(m + 1, 0).try_mul(&Polynomial::var(m + 1, m)).expect("same variable count")
}

pub fn monomial_product(m: usize) -> Polynomial {
    Polynomial::monomial(Monomial::new(vec![1; m]), int(1))
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, bool)>) {
        if rest.is_empty() {
            let inversions = (0..prefix.len())
                .flat_map(|i| (i + 1..prefix.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| prefix[i] > prefix[j])
                .count();
            out.push((prefix.clone(), inversions % 2 == 1));
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            prefix.push(x);
            go(prefix, rest, out);
            prefix.pop();
            rest.insert(k, x);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// Leibniz expansion of the determinant of the matrix whose `(i, j)` entry
/// is variable `index(i, j)`.
fn leibniz(n: usize, nvars: usize, index: impl Fn(usize, usize) -> usize) -> Polynomial {
    let mut out = Polynomial::zero(nvars);
    for (perm, odd) in permutations(n) {
        let mut exps = vec![0u32; nvars];
        for (i, &j) in perm.iter().enumerate() {
            exps[index(i, j)] += 1;
        }
        out.add_term(Monomial::new(exps), int(if odd { -1 } else { 1 }));
    }
    out
}

pub fn determinant(n: usize) -> Polynomial {
    leibniz(n, n * n, |i, j| i * n + j)
}

/// Index of `x_{ij}`, `i <= j`, in the row-major upper triangle.
fn upper_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * i.saturating_sub(1) / 2 + j - i
}

pub fn symmetric_determinant(n: usize) -> Polynomial {
    leibniz(n, n * (n + 1) / 2, |i, j| upper_index(n, i, j))
}

/// Index of `x_{ij}`, `i < j`, in the row-major strict upper triangle.
fn strict_index(n: usize, i: usize, j: usize) -> usize {
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// First-row expansion `Pf(A) = Σ_j (-1)^{j+1} a_{0j} Pf(A_{0j})` over the
/// indices still present.
fn pfaffian_of(indices: &[usize], n: usize, nvars: usize) -> Polynomial {
    if indices.is_empty() {
        return Polynomial::one(nvars);
    }
    let first = indices[0];
    let mut out = Polynomial::zero(nvars);
    for (pos, &j) in indices.iter().enumerate().skip(1) {
        let rest: Vec<usize> = indices.iter().copied().filter(|&k| k != first && k != j).collect();
        let minor = pfaffian_of(&rest, n, nvars);
        let term = &Polynomial::var(nvars, strict_index(n, first, j)) * &minor;
        out = if pos % 2 == 1 { &out + &term } else { &out - &term };
    }
    out
}

pub fn pfaffian(n: usize) -> Polynomial {
    let nvars = n * (n - 1) / 2;
    pfaffian_of(&(0..n).collect::<Vec<_>>(), n, nvars)
}

/// `|A| + |B| + |C| - Tr(ABC)` with `A`, `B`, `C` in variables `0..9`,
/// `9..18`, `18..27`.
pub fn cartan() -> Polynomial {
    let d = determinant(3);
    let mut out = Polynomial::zero(27);
    for block in 0..3 {
        out = &out + &d.shift_vars(27, 9 * block);
    }
    let var = |block: usize, i: usize, j: usize| 9 * block + 3 * i + j;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let mut exps = vec![0u32; 27];
                exps[var(0, i, j)] += 1;
                exps[var(1, j, k)] += 1;
                exps[var(2, k, i)] += 1;
                out.add_term(Monomial::new(exps), int(-1));
            }
        }
    }
    out
}
