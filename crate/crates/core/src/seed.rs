//! Seed derivation.
//!
//! Every random stream is derived from a single 64-bit base seed by folding
//! stream indices through the SplitMix64 finalizer:
//!
//! ```text
//! s_0 = base
//! s_{k+1} = splitmix64(s_k ^ splitmix64(index_k + 0x9E3779B97F4A7C15))
//! ```
//!
//! The resulting 64-bit value seeds a ChaCha8 generator. Streams derived from
//! distinct index paths are statistically independent for all practical
//! purposes, and a given path always yields the same generator.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream indices used inside one trial.
pub mod stream {
    pub const SIGNAL: u64 = 0;
    pub const SENSING: u64 = 1;
    pub const NOISE: u64 = 2;
    pub const INIT: u64 = 3;
    pub const SPECTRAL_START: u64 = 4;
    pub const LANDSCAPE_DIRECTIONS: u64 = 5;
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from `base` and a path of stream indices.
pub fn derive_seed(base: u64, path: &[u64]) -> u64 {
    path.iter().fold(base, |acc, &idx| {
        splitmix64(acc ^ splitmix64(idx.wrapping_add(GOLDEN)))
    })
}

/// Generator for the stream identified by `path` under `base`.
pub fn stream_rng(base: u64, path: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(base, path))
}

/// Generator seeded directly from `seed`.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
