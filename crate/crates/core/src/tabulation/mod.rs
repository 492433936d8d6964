//! Simple, double and mixed tabulation hashing.
//!
//! A key of `c·b` bits is read as `c` characters of `b` bits each, character
//! `i` being bits `[i·b, (i+1)·b)` counted from the least-significant end.
//! Simple tabulation XORs one random table entry per character. Mixed
//! tabulation first derives `d` extra characters with a simple tabulation
//! function and then hashes the concatenated `c + d` characters.

mod codec;
mod double;
mod mixed;
mod simple;

pub use codec::{format_vectors, parse_vectors, TestVector};
pub use double::DoubleTabulation;
pub use mixed::{DerivedKey, MixedTabulation};
pub use simple::{CharTabulation, SimpleTabulation};

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Largest supported character width; a table holds `2^b` words.
pub const MAX_CHAR_BITS: u32 = 24;

/// Shape and seed of a tabulation hash function.
///
/// `d = 0` denotes plain simple tabulation. `derived_bits` is the width of
/// the characters produced by the inner function of mixed or double
/// tabulation; it defaults to `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TabulationParams {
    pub c: u32,
    pub b: u32,
    pub d: u32,
    pub r: u32,
    pub seed: u64,
    pub derived_bits: u32,
}

impl TabulationParams {
    pub fn new(c: u32, b: u32, d: u32, r: u32, seed: u64) -> Self {
        TabulationParams {
            c,
            b,
            d,
            r,
            seed,
            derived_bits: b,
        }
    }

    pub fn simple(c: u32, b: u32, r: u32, seed: u64) -> Self {
        Self::new(c, b, 0, r, seed)
    }

    pub fn with_derived_bits(mut self, bits: u32) -> Self {
        self.derived_bits = bits;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_d(mut self, d: u32) -> Self {
        self.d = d;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let TabulationParams {
            c,
            b,
            d,
            r,
            derived_bits,
            ..
        } = *self;
        if c == 0 || b == 0 || r == 0 {
            return Err(Error::params(format!(
                "c, b and r must be positive (c={c}, b={b}, r={r})"
            )));
        }
        if r > 64 {
            return Err(Error::params(format!("r={r} exceeds 64 output bits")));
        }
        if c as u64 * b as u64 > 64 {
            return Err(Error::params(format!("key width c·b = {} exceeds 64", c * b)));
        }
        if b > MAX_CHAR_BITS || derived_bits > MAX_CHAR_BITS {
            return Err(Error::params(format!(
                "character width above {MAX_CHAR_BITS} bits (b={b}, derived={derived_bits})"
            )));
        }
        if derived_bits == 0 {
            return Err(Error::params("derived character width must be positive"));
        }
        if d as u64 * derived_bits as u64 > 64 {
            return Err(Error::params(format!(
                "derived characters d·{derived_bits} = {} exceed one 64-bit word",
                d as u64 * derived_bits as u64
            )));
        }
        Ok(())
    }

    pub fn key_bits(&self) -> u32 {
        self.c * self.b
    }

    pub fn alphabet_size(&self) -> u64 {
        1u64 << self.b
    }

    pub fn derived_alphabet_size(&self) -> u64 {
        1u64 << self.derived_bits
    }

    /// Number of keys in the universe, saturating at `u64::MAX` for 64-bit keys.
    pub fn universe_size(&self) -> u64 {
        if self.key_bits() >= 64 {
            u64::MAX
        } else {
            1u64 << self.key_bits()
        }
    }

    pub fn key_mask(&self) -> u64 {
        crate::rng::low_mask(self.key_bits())
    }

    /// The `c` characters of `key`, position 0 first.
    pub fn characters(&self, key: u64) -> impl Iterator<Item = u64> + '_ {
        split_characters(key, self.c, self.b)
    }

    pub fn position_chars(&self, key: u64) -> impl Iterator<Item = PositionChar> + '_ {
        self.characters(key)
            .enumerate()
            .map(|(i, value)| PositionChar::new(i as u32, value))
    }

    /// Reassembles a key from its characters.
    pub fn join_characters(&self, chars: &[u64]) -> u64 {
        chars
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &ch)| acc | (ch << (i as u32 * self.b)))
    }
}

pub(crate) fn split_characters(key: u64, count: u32, bits: u32) -> impl Iterator<Item = u64> {
    let mask = crate::rng::low_mask(bits);
    (0..count).map(move |i| (key >> (i * bits)) & mask)
}

/// An element of `[c] × Σ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositionChar {
    pub position: u32,
    pub value: u64,
}

impl PositionChar {
    pub fn new(position: u32, value: u64) -> Self {
        PositionChar { position, value }
    }
}

/// A set of position characters under symmetric difference.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PositionSet(BTreeSet<PositionChar>);

impl PositionSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn of_key(params: &TabulationParams, key: u64) -> Self {
        PositionSet(params.position_chars(key).collect())
    }

    /// Toggles membership, i.e. XORs a single position character in.
    pub fn toggle(&mut self, pc: PositionChar) {
        if !self.0.remove(&pc) {
            self.0.insert(pc);
        }
    }

    pub fn symmetric_difference(&self, other: &PositionSet) -> PositionSet {
        PositionSet(self.0.symmetric_difference(&other.0).copied().collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &PositionChar> {
        self.0.iter()
    }
}

impl FromIterator<PositionChar> for PositionSet {
    fn from_iter<I: IntoIterator<Item = PositionChar>>(iter: I) -> Self {
        PositionSet(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a PositionSet {
    type Item = &'a PositionChar;
    type IntoIter = std::collections::btree_set::Iter<'a, PositionChar>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
