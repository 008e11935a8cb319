//! Deterministic seeding.
//!
//! Every random stream in the crate is a `ChaCha8Rng` seeded from a `u64`.
//! Sub-streams (per trial, per experiment) get their seed from
//! [`derive_seed`], a 64-bit FNV-1a digest of the labelled inputs followed by
//! the SplitMix64 finalizer, so results never depend on evaluation order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// SplitMix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv_bytes(mut h: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(FNV_PRIME);
    }
    h
}

/// Seed for trial `trial` of `experiment` on group `descriptor` under `master`.
///
/// Fields are length-prefixed so that no two distinct tuples share a byte
/// stream.
pub fn derive_seed(master: u64, descriptor: &str, experiment: &str, trial: u64) -> u64 {
    let mut h = FNV_OFFSET;
    h = fnv_bytes(h, &master.to_le_bytes());
    for field in [descriptor, experiment] {
        h = fnv_bytes(h, &(field.len() as u64).to_le_bytes());
        h = fnv_bytes(h, field.as_bytes());
    }
    h = fnv_bytes(h, &trial.to_le_bytes());
    splitmix64(h)
}
