//! Seeded sampling helpers shared by every randomised procedure.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::Scalar;

pub type SeededRng = ChaCha8Rng;

/// Independent streams for one seed; `stream` separates uses that must not
/// share draws.
pub fn seeded(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn int_vector(rng: &mut SeededRng, len: usize, bound: i64) -> Vec<Scalar> {
    (0..len)
        .map(|_| Scalar::from_integer(BigInt::from(rng.gen_range(-bound..=bound))))
        .collect()
}

/// A small nonzero rational with numerator and denominator bounded by `bound`.
pub fn nonzero_rational(rng: &mut SeededRng, bound: i64) -> Scalar {
    loop {
        let n: i64 = rng.gen_range(-bound..=bound);
        if n != 0 {
            let d: i64 = rng.gen_range(1..=bound);
            return Scalar::new(BigInt::from(n), BigInt::from(d));
        }
    }
}

pub fn rational_vector(rng: &mut SeededRng, len: usize, bound: i64) -> Vec<Scalar> {
    (0..len)
        .map(|_| {
            let n: i64 = rng.gen_range(-bound..=bound);
            let d: i64 = rng.gen_range(1..=bound);
            Scalar::new(BigInt::from(n), BigInt::from(d))
        })
        .collect()
}
