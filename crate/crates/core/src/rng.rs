//! Counter-based randomness.
//!
//! Every random choice in a graph is a pure function of
//! `(master seed, vertex, label)`, so a graph on `n` vertices is a prefix of
//! the graph on `n' > n` vertices generated with the same seed, and replicas
//! can be produced in any order or on any number of threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[inline]
fn key(seed: u64, a: u64, b: u64, c: u64) -> u64 {
    let h = mix64(seed.wrapping_add(GOLDEN));
    let h = mix64(h ^ a.wrapping_mul(GOLDEN));
    let h = mix64(h ^ b.wrapping_mul(0xD6E8_FEB8_6659_FD93));
    mix64(h ^ c.wrapping_mul(0xA076_1D64_78BD_642F))
}

/// Uniform draw from `0..range` for slot `(vertex, label)` under `seed`.
///
/// Lemire's multiply-shift with rejection; a rejected attempt moves to the
/// next counter value, so the result is exactly uniform.
#[inline]
pub fn slot_draw(seed: u64, vertex: u64, label: u64, range: u64) -> u64 {
    debug_assert!(range > 0);
    let threshold = range.wrapping_neg() % range;
    let mut attempt = 0u64;
    loop {
        let x = key(seed, vertex, label, attempt);
        let wide = (x as u128) * (range as u128);
        if (wide as u64) >= threshold {
            return (wide >> 64) as u64;
        }
        attempt += 1;
    }
}

/// Seed of replica `index` under a master seed.
#[inline]
pub fn derive_seed(master: u64, index: u64) -> u64 {
    key(master, u64::MAX, index, 0x5EED)
}

/// A conventional stream generator for auxiliary sampling (copy selection,
/// Bernoulli trials) keyed by `(master, stream)`.
pub fn stream_rng(master: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, stream))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_stay_in_range_and_are_deterministic() {
        for range in [1u64, 2, 3, 7, 1000] {
            for v in 0..200 {
                let x = slot_draw(11, v, 1, range);
                assert!(x < range);
                assert_eq!(x, slot_draw(11, v, 1, range));
            }
        }
    }

    #[test]
    fn draws_depend_on_every_key_component() {
        let base = (0..64).map(|v| slot_draw(1, v, 1, 1 << 40)).collect::<Vec<_>>();
        let other_seed = (0..64).map(|v| slot_draw(2, v, 1, 1 << 40)).collect::<Vec<_>>();
        let other_label = (0..64).map(|v| slot_draw(1, v, 2, 1 << 40)).collect::<Vec<_>>();
        assert_ne!(base, other_seed);
        assert_ne!(base, other_label);
    }

    #[test]
    fn small_range_is_roughly_uniform() {
        let mut hist = [0u32; 5];
        for v in 0..50_000 {
            hist[slot_draw(3, v, 0, 5) as usize] += 1;
        }
        for c in hist {
            assert!((c as f64 - 10_000.0).abs() < 400.0, "{hist:?}");
        }
    }
}
