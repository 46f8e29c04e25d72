//! Seeded randomness.
//!
//! Every random draw in the crate goes through SplitMix64 (64-bit state). Child
//! streams are split off by drawing one word from the parent, so per-vertex or
//! per-trial streams do not depend on how many values sibling streams consume.

use rand::{RngCore, SeedableRng};
pub use rand_xoshiro::SplitMix64;

pub fn seeded(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

/// Derives an independent child stream.
pub fn split(parent: &mut SplitMix64) -> SplitMix64 {
    SplitMix64::seed_from_u64(parent.next_u64())
}

/// Uniform draw from `[0, 1)` with 53 bits of precision.
pub fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
