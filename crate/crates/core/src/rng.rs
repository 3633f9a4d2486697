//! Deterministic RNG streams.
//!
//! Every random draw in the crate comes from a ChaCha8 generator keyed by the
//! user seed, a [`Domain`] tag and a stream index (chunk, shard or pool slot).
//! ChaCha supports 2^64 independent streams per key, so work items never share
//! randomness and the result of a chunk does not depend on which thread ran it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Separates the purposes that draw from the same user seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Domain {
    Moments = 1,
    UnitaryPool = 2,
    Trials = 3,
    Codebook = 4,
    Bootstrap = 5,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator for work item `index` of `domain` under `seed`.
pub fn stream(seed: u64, domain: Domain, index: u64) -> ChaCha8Rng {
    let key = splitmix64(seed ^ splitmix64(domain as u64));
    let mut rng = ChaCha8Rng::seed_from_u64(key);
    rng.set_stream(index);
    rng
}

/// A fresh seed from OS entropy, for runs where the user gave none.
pub fn fresh_seed() -> u64 {
    rand::random()
}
