//! Seed derivation for stochastic sparsifiers.
//!
//! Every random decision is drawn from a stream keyed by `(global seed,
//! domain, index)`, never from a shared generator, so the outcome does not
//! depend on how work is split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream domains. Distinct domains never share a stream for the same index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Domain {
    EdgeKey = 0x5241_4e44,
    KNeighbor = 0x4b4e_4252,
    RankSeeds = 0x5241_4e4b,
}

#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// 64-bit hash of `(seed, domain, index)`.
#[inline]
pub fn mix(seed: u64, domain: Domain, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ (domain as u64).rotate_left(32)) ^ index)
}

/// Independent generator for one vertex, hop or edge.
pub fn stream(seed: u64, domain: Domain, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(seed, domain, index))
}

/// Maps a hash to a uniform draw in `[0, 1)` using its top 53 bits.
#[inline]
pub fn unit_f64(h: u64) -> f64 {
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
