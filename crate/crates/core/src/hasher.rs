//! Common interface over the hash families compared in experiments,
//! including the exact fully random baseline.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::RngCore;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rng::{low_mask, table_rng, TableRole};
use crate::tabulation::{DoubleTabulation, MixedTabulation, SimpleTabulation, TabulationParams};

/// A fixed function from keys to `output_bits()`-bit values.
pub trait HashFunction {
    fn hash(&self, key: u64) -> u64;
    fn output_bits(&self) -> u32;
}

/// Anything that can hash keys, possibly by updating internal state
/// (the fully random baseline assigns values lazily).
pub trait KeyHasher {
    fn hash_key(&mut self, key: u64) -> u64;
    fn output_bits(&self) -> u32;
}

impl<T: HashFunction + ?Sized> KeyHasher for T {
    #[inline]
    fn hash_key(&mut self, key: u64) -> u64 {
        self.hash(key)
    }

    fn output_bits(&self) -> u32 {
        HashFunction::output_bits(self)
    }
}

impl<T: HashFunction + ?Sized> HashFunction for &T {
    #[inline]
    fn hash(&self, key: u64) -> u64 {
        (**self).hash(key)
    }

    fn output_bits(&self) -> u32 {
        (**self).output_bits()
    }
}

impl HashFunction for SimpleTabulation {
    #[inline]
    fn hash(&self, key: u64) -> u64 {
        SimpleTabulation::hash(self, key)
    }

    fn output_bits(&self) -> u32 {
        self.out_bits()
    }
}

impl HashFunction for MixedTabulation {
    #[inline]
    fn hash(&self, key: u64) -> u64 {
        MixedTabulation::hash(self, key)
    }

    fn output_bits(&self) -> u32 {
        self.params().r
    }
}

impl HashFunction for DoubleTabulation {
    #[inline]
    fn hash(&self, key: u64) -> u64 {
        DoubleTabulation::hash(self, key)
    }

    fn output_bits(&self) -> u32 {
        self.outer().out_bits()
    }
}

/// Truly random hashing, realized exactly: the first time a key is seen it
/// receives a fresh uniform value, which is remembered for the lifetime of
/// the instance.
#[derive(Debug, Clone)]
pub struct FullyRandom {
    bits: u32,
    rng: ChaCha8Rng,
    values: HashMap<u64, u64>,
}

impl FullyRandom {
    pub fn new(bits: u32, seed: u64) -> Result<Self> {
        if bits == 0 || bits > 64 {
            return Err(Error::params(format!("output width {bits} out of range")));
        }
        Ok(FullyRandom {
            bits,
            rng: table_rng(seed, TableRole::FullyRandom, 0),
            values: HashMap::new(),
        })
    }

    pub fn with_capacity(bits: u32, seed: u64, capacity: usize) -> Result<Self> {
        let mut h = Self::new(bits, seed)?;
        h.values.reserve(capacity);
        Ok(h)
    }

    /// Number of distinct keys assigned so far.
    pub fn assigned(&self) -> usize {
        self.values.len()
    }
}

impl KeyHasher for FullyRandom {
    fn hash_key(&mut self, key: u64) -> u64 {
        let mask = low_mask(self.bits);
        let rng = &mut self.rng;
        *self.values.entry(key).or_insert_with(|| rng.next_u64() & mask)
    }

    fn output_bits(&self) -> u32 {
        self.bits
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HashKind {
    Simple,
    Double,
    Mixed,
    FullyRandom,
}

impl HashKind {
    pub const ALL: [HashKind; 4] = [
        HashKind::Simple,
        HashKind::Double,
        HashKind::Mixed,
        HashKind::FullyRandom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HashKind::Simple => "simple",
            HashKind::Double => "double",
            HashKind::Mixed => "mixed",
            HashKind::FullyRandom => "random",
        }
    }

    /// Instantiates this family with the shape and seed of `params`.
    pub fn build(self, params: &TabulationParams) -> Result<AnyHasher> {
        Ok(match self {
            HashKind::Simple => AnyHasher::Simple(SimpleTabulation::new(&params.with_d(0))?),
            HashKind::Double => AnyHasher::Double(DoubleTabulation::new(params)?),
            HashKind::Mixed => AnyHasher::Mixed(MixedTabulation::new(params)?),
            HashKind::FullyRandom => {
                params.validate()?;
                AnyHasher::Random(FullyRandom::new(params.r, params.seed)?)
            }
        })
    }
}

impl fmt::Display for HashKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HashKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simple" => Ok(HashKind::Simple),
            "double" => Ok(HashKind::Double),
            "mixed" => Ok(HashKind::Mixed),
            "random" | "fullyRandom" | "fully-random" => Ok(HashKind::FullyRandom),
            other => Err(Error::params(format!("unknown hash kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub enum AnyHasher {
    Simple(SimpleTabulation),
    Double(DoubleTabulation),
    Mixed(MixedTabulation),
    Random(FullyRandom),
}

impl KeyHasher for AnyHasher {
    #[inline]
    fn hash_key(&mut self, key: u64) -> u64 {
        match self {
            AnyHasher::Simple(h) => h.hash(key),
            AnyHasher::Double(h) => h.hash(key),
            AnyHasher::Mixed(h) => h.hash(key),
            AnyHasher::Random(h) => h.hash_key(key),
        }
    }

    fn output_bits(&self) -> u32 {
        match self {
            AnyHasher::Simple(h) => h.out_bits(),
            AnyHasher::Double(h) => h.outer().out_bits(),
            AnyHasher::Mixed(h) => h.params().r,
            AnyHasher::Random(h) => KeyHasher::output_bits(h),
        }
    }
}
