//! Seeded random instances for tests and benchmarks.

use rand::Rng;

use crate::instance::TwoSetInstance;
use crate::rational::{self, Rational};

/// `n` pairs with both weights uniform in `1..=max_weight`.
pub fn random_two_set<R: Rng + ?Sized>(rng: &mut R, n: usize, max_weight: u64) -> TwoSetInstance {
    let weights = random_weights(rng, 2 * n, max_weight);
    TwoSetInstance::from_weights(weights).expect("positive weights")
}

/// `len` integers uniform in `1..=max_weight`, as rationals.
pub fn random_weights<R: Rng + ?Sized>(rng: &mut R, len: usize, max_weight: u64) -> Vec<Rational> {
    assert!(max_weight >= 1);
    (0..len)
        .map(|_| rational::int(rng.gen_range(1..=max_weight) as i64))
        .collect()
}

/// Raw integer weights, for the exact solver.
pub fn random_u64<R: Rng + ?Sized>(rng: &mut R, len: usize, max_weight: u64) -> Vec<u64> {
    (0..len).map(|_| rng.gen_range(1..=max_weight)).collect()
}
