//! Shared fixtures for the criterion benches in `benches/`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use paramword::{random_word, ParameterWord};

/// `count` seeded sets of `size` words over `sigma` symbols, `k` parameters each, lengths up to `max_len`.
pub fn word_sets(
    seed: u64,
    count: usize,
    sigma: usize,
    k: usize,
    size: usize,
    max_len: usize,
) -> Vec<Vec<ParameterWord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..size)
                .map(|_| {
                    let len = rng.gen_range(k..=max_len.max(k));
                    random_word(&mut rng, sigma, len, k).expect("k <= len")
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_seeded() {
        let a = word_sets(1, 4, 3, 1, 2, 6);
        assert_eq!(a, word_sets(1, 4, 3, 1, 2, 6));
        assert!(a.iter().flatten().all(|w| w.params() == 1 && w.len() <= 6));
    }
}
