//! Deterministic randomness for table filling and experiment seeding.
//!
//! Every lookup table is filled from ChaCha8 keyed by the user seed, with the
//! 64-bit stream id set to `(role << 32) | table_index`. A table therefore
//! depends only on `(seed, role, table_index)` and never on how many other
//! tables were generated before it, or on the output width it is masked to.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Distinguishes the independent table families that may share one seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u32)]
pub enum TableRole {
    Simple = 0,
    MixedInner = 1,
    MixedOuter = 2,
    DoubleInner = 3,
    DoubleOuter = 4,
    Fingerprint = 5,
    FullyRandom = 6,
    Workload = 7,
}

pub fn table_rng(seed: u64, role: TableRole, index: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((role as u64) << 32) | index as u64);
    rng
}

/// Fills `len` entries of `bits`-bit random values.
pub fn fill_table(seed: u64, role: TableRole, index: u32, len: usize, bits: u32) -> Box<[u64]> {
    let mask = low_mask(bits);
    let mut rng = table_rng(seed, role, index);
    (0..len).map(|_| rng.next_u64() & mask).collect()
}

/// SplitMix64 finalizer; turns (base, index) into well-spread per-trial seeds.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[inline]
pub fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}
