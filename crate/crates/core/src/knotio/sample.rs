use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Word;

/// Seed for the reproducible word samples used in trace identities.
pub const WORD_SEED: u64 = 0x5EED;

/// `count` random words with uniformly chosen lengths `1..=12` before free
/// reduction. Deterministic in `seed`.
pub fn random_words(num_generators: usize, count: usize, seed: u64) -> Vec<Word> {
    assert!(num_generators > 0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=12);
            Word::from_letters((0..len).map(|_| {
                let g = rng.gen_range(0..num_generators);
                let e = if rng.gen_bool(0.5) { 1 } else { -1 };
                (g, e)
            }))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = random_words(3, 50, WORD_SEED);
        assert_eq!(a, random_words(3, 50, WORD_SEED));
        assert_ne!(a, random_words(3, 50, WORD_SEED + 1));
        assert!(a
            .iter()
            .all(|w| w.length() <= 12 && w.max_generator().is_none_or(|g| g < 3)));
    }
}
