//! Fixed inputs shared by the benchmarks.

use charp_core::hyperalgebra::{Letter, Word};
use charp_core::{Algebra, Weight};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// `count` random words of length `1..=max_len` with exponents 1 or 2.
pub fn random_words(alg: &Algebra, count: usize, max_len: usize, seed: u64) -> Vec<Word> {
    let mut rng = StdRng::seed_from_u64(seed);
    let roots = alg.num_roots();
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            Word((0..len).map(|_| Letter::new(rng.gen_range(0..roots), rng.gen_range(1..=2))).collect())
        })
        .collect()
}

/// Restricted A5 weights whose rows take milliseconds to a second.
pub fn small_weights() -> Vec<Weight> {
    [[0, 1, 0, 1, 0], [1, 0, 1, 0, 1], [1, 1, 0, 1, 1]]
        .iter()
        .map(|c| Weight::new(c.to_vec()))
        .collect()
}
