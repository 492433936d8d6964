use super::{split_characters, CharTabulation, SimpleTabulation, TabulationParams};
use crate::error::{Error, Result};
use crate::rng::TableRole;

/// The key concatenated with its `d` derived characters, `x · h₁(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivedKey {
    pub key: u64,
    /// Derived characters, packed least-significant first.
    pub derived: u64,
}

/// One entry of the fused inner table: the derived-character contribution
/// and the outer function's contribution for the same key character.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct FusedEntry {
    derived: u64,
    partial: u64,
}

/// Mixed tabulation `h(x) = h₂(x · h₁(x))`.
///
/// Evaluation uses `c + d` lookups: the fused tables `h₁,₂` yield the
/// derived characters together with the XOR of `h₂`'s first `c` tables, and
/// `h₂′` (the last `d` tables of `h₂`) finishes the job.
#[derive(Debug, Clone)]
pub struct MixedTabulation {
    params: TabulationParams,
    h1: CharTabulation,
    h2: SimpleTabulation,
    fused: Box<[Box<[FusedEntry]>]>,
    h2_tail: SimpleTabulation,
}

impl MixedTabulation {
    pub fn new(params: &TabulationParams) -> Result<Self> {
        params.validate()?;
        if params.d == 0 {
            return Err(Error::params("mixed tabulation needs d ≥ 1 derived characters"));
        }
        let h1 = CharTabulation::generate(
            params.c,
            params.b,
            params.d,
            params.derived_bits,
            params.seed,
            TableRole::MixedInner,
        );
        let mut widths = vec![params.b; params.c as usize];
        widths.extend(std::iter::repeat_n(params.derived_bits, params.d as usize));
        let h2 = SimpleTabulation::generate(widths, params.r, params.seed, TableRole::MixedOuter);
        Ok(Self::assemble(*params, h1, h2))
    }

    /// Combines explicit inner and outer functions; `h2` must read `c` key
    /// characters followed by `d` derived characters.
    pub fn from_parts(params: &TabulationParams, h1: CharTabulation, h2: SimpleTabulation) -> Result<Self> {
        params.validate()?;
        let c = params.c as usize;
        let expected_inner = vec![params.b; c];
        if h1.inner().char_bits() != expected_inner.as_slice()
            || h1.out_chars() != params.d
            || h1.out_char_bits() != params.derived_bits
        {
            return Err(Error::WidthMismatch("inner function does not match params".into()));
        }
        let mut widths = expected_inner;
        widths.extend(std::iter::repeat_n(params.derived_bits, params.d as usize));
        if h2.char_bits() != widths.as_slice() || h2.out_bits() != params.r {
            return Err(Error::WidthMismatch("outer function does not match params".into()));
        }
        Ok(Self::assemble(*params, h1, h2))
    }

    fn assemble(params: TabulationParams, h1: CharTabulation, h2: SimpleTabulation) -> Self {
        let c = params.c as usize;
        let fused = (0..c)
            .map(|i| {
                h1.inner()
                    .table(i)
                    .iter()
                    .zip(h2.table(i))
                    .map(|(&derived, &partial)| FusedEntry { derived, partial })
                    .collect()
            })
            .collect();
        let tail_tables = (c..h2.characters()).map(|i| h2.table(i).to_vec()).collect();
        let h2_tail = SimpleTabulation::from_tables(
            vec![params.derived_bits; params.d as usize],
            params.r,
            tail_tables,
        )
        .expect("tail of a valid outer function is valid");
        MixedTabulation {
            params,
            h1,
            h2,
            fused,
            h2_tail,
        }
    }

    /// Fused evaluation, `c + d` lookups.
    #[inline]
    pub fn hash(&self, key: u64) -> u64 {
        let b = self.params.b;
        let mask = crate::rng::low_mask(b);
        let (mut derived, mut partial) = (0u64, 0u64);
        for (i, table) in self.fused.iter().enumerate() {
            let e = table[((key >> (i as u32 * b)) & mask) as usize];
            derived ^= e.derived;
            partial ^= e.partial;
        }
        partial ^ self.h2_tail.hash(derived)
    }

    /// Evaluation straight from the definition: `h₂` applied to the
    /// `c + d` characters of the derived key.
    pub fn hash_definitional(&self, key: u64) -> u64 {
        self.h2.hash_chars(&self.derived_key_chars(&self.derived_key(key)))
    }

    pub fn derived_key(&self, key: u64) -> DerivedKey {
        DerivedKey {
            key: key & self.params.key_mask(),
            derived: self.h1.hash(key),
        }
    }

    /// The `c + d` characters of a derived key in the order `h₂` reads them.
    pub fn derived_key_chars(&self, dk: &DerivedKey) -> Vec<u64> {
        let p = &self.params;
        split_characters(dk.key, p.c, p.b)
            .chain(split_characters(dk.derived, p.d, p.derived_bits))
            .collect()
    }

    pub fn params(&self) -> &TabulationParams {
        &self.params
    }

    pub fn inner(&self) -> &CharTabulation {
        &self.h1
    }

    pub fn outer(&self) -> &SimpleTabulation {
        &self.h2
    }

    /// `h₂′`, the outer tables indexed by derived characters.
    pub fn outer_tail(&self) -> &SimpleTabulation {
        &self.h2_tail
    }
}
