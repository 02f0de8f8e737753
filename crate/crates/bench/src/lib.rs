//! Shared fixtures for the benchmark suite.

use eulersym::catalog::build;
use eulersym::linalg::{Matrix, Scalar};
use eulersym::poly::Polynomial;
use eulersym::rng;

/// A catalog polynomial by name; panics on unknown names.
pub fn catalog(name: &str) -> Polynomial {
    build(name).expect("known catalog entry").polynomial
}

/// A seeded integer matrix with entries in `-bound..=bound`.
pub fn random_matrix(rows: usize, cols: usize, bound: i64, seed: u64) -> Matrix {
    let mut rng = rng::seeded(seed, 0);
    let data = (0..rows).map(|_| rng::int_vector(&mut rng, cols, bound)).collect();
    Matrix::from_rows(data).expect("rectangular")
}

/// A seeded integer point with `len` coordinates.
pub fn random_point(len: usize, seed: u64) -> Vec<Scalar> {
    rng::int_vector(&mut rng::seeded(seed, 1), len, 9)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_deterministic() {
        assert_eq!(random_matrix(3, 4, 5, 1), random_matrix(3, 4, 5, 1));
        assert_eq!(random_point(5, 2).len(), 5);
        assert_eq!(catalog("det[2]").nvars(), 4);
    }
}
