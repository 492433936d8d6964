use super::{PositionChar, TabulationParams};
use crate::error::{Error, Result};
use crate::rng::{fill_table, low_mask, TableRole};

/// Simple tabulation: one random table per input character, output is the
/// XOR of the looked-up entries.
///
/// Input characters may have different widths; plain simple tabulation uses
/// `c` characters of `b` bits, while the outer function of mixed tabulation
/// reads `c` key characters followed by `d` derived ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleTabulation {
    char_bits: Box<[u32]>,
    shifts: Box<[u32]>,
    out_bits: u32,
    tables: Box<[Box<[u64]>]>,
}

impl SimpleTabulation {
    /// Builds `c` tables of `2^b` random `r`-bit entries from `params.seed`.
    pub fn new(params: &TabulationParams) -> Result<Self> {
        params.validate()?;
        if params.d != 0 {
            return Err(Error::params(format!(
                "simple tabulation takes d = 0, got d = {}",
                params.d
            )));
        }
        Ok(Self::generate(
            vec![params.b; params.c as usize],
            params.r,
            params.seed,
            TableRole::Simple,
        ))
    }

    /// Table `i` is drawn from stream `(role, i)` of the seed.
    pub(crate) fn generate(char_bits: Vec<u32>, out_bits: u32, seed: u64, role: TableRole) -> Self {
        let tables = char_bits
            .iter()
            .enumerate()
            .map(|(i, &w)| fill_table(seed, role, i as u32, 1usize << w, out_bits))
            .collect();
        Self::assemble(char_bits, out_bits, tables)
    }

    /// Wraps explicitly given tables. Table `i` must have `2^char_bits[i]`
    /// entries, each below `2^out_bits`.
    pub fn from_tables(char_bits: Vec<u32>, out_bits: u32, tables: Vec<Vec<u64>>) -> Result<Self> {
        if char_bits.is_empty() || char_bits.len() != tables.len() {
            return Err(Error::params("need one table per character position"));
        }
        if out_bits == 0 || out_bits > 64 {
            return Err(Error::params(format!("output width {out_bits} out of range")));
        }
        let mask = low_mask(out_bits);
        for (i, (&w, t)) in char_bits.iter().zip(&tables).enumerate() {
            if w == 0 || w > super::MAX_CHAR_BITS {
                return Err(Error::params(format!("character width {w} out of range")));
            }
            if t.len() != 1usize << w {
                return Err(Error::params(format!(
                    "table {i} has {} entries, expected {}",
                    t.len(),
                    1usize << w
                )));
            }
            if t.iter().any(|&v| v & !mask != 0) {
                return Err(Error::params(format!("table {i} has entries wider than {out_bits} bits")));
            }
        }
        let tables = tables.into_iter().map(Vec::into_boxed_slice).collect();
        Ok(Self::assemble(char_bits, out_bits, tables))
    }

    fn assemble(char_bits: Vec<u32>, out_bits: u32, tables: Vec<Box<[u64]>>) -> Self {
        let shifts = char_bits
            .iter()
            .scan(0u32, |acc, &w| {
                let s = *acc;
                *acc += w;
                Some(s)
            })
            .collect();
        SimpleTabulation {
            char_bits: char_bits.into_boxed_slice(),
            shifts,
            out_bits,
            tables: tables.into_boxed_slice(),
        }
    }

    /// Hashes a packed key. Only the low `Σ char_bits` bits are read, and
    /// characters lying wholly above bit 63 are taken as zero.
    #[inline]
    pub fn hash(&self, key: u64) -> u64 {
        let mut h = 0;
        for ((table, &w), &s) in self.tables.iter().zip(self.char_bits.iter()).zip(self.shifts.iter()) {
            let ch = if s >= 64 { 0 } else { (key >> s) & low_mask(w) };
            h ^= table[ch as usize];
        }
        h
    }

    /// Hashes a key given as one value per character position.
    pub fn hash_chars(&self, chars: &[u64]) -> u64 {
        debug_assert_eq!(chars.len(), self.tables.len());
        self.tables
            .iter()
            .zip(chars)
            .fold(0, |h, (table, &ch)| h ^ table[ch as usize])
    }

    /// `T_i[α]` for the position character `(i, α)`.
    pub fn lookup(&self, pc: PositionChar) -> u64 {
        self.tables[pc.position as usize][pc.value as usize]
    }

    /// XOR of `lookup` over a set of position characters; 0 for the empty set.
    pub fn hash_position_set<'a, I>(&self, set: I) -> u64
    where
        I: IntoIterator<Item = &'a PositionChar>,
    {
        set.into_iter().fold(0, |h, &pc| h ^ self.lookup(pc))
    }

    pub fn characters(&self) -> usize {
        self.tables.len()
    }

    pub fn char_bits(&self) -> &[u32] {
        &self.char_bits
    }

    /// Total input width in bits.
    pub fn key_bits(&self) -> u32 {
        self.char_bits.iter().sum()
    }

    pub fn out_bits(&self) -> u32 {
        self.out_bits
    }

    pub fn table(&self, position: usize) -> &[u64] {
        &self.tables[position]
    }
}

/// Simple tabulation read as a map `Σ^c → Σ'^d`: the output word is `d`
/// characters of `out_char_bits` bits each, least-significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharTabulation {
    inner: SimpleTabulation,
    out_chars: u32,
    out_char_bits: u32,
}

impl CharTabulation {
    pub(crate) fn generate(
        c: u32,
        b: u32,
        out_chars: u32,
        out_char_bits: u32,
        seed: u64,
        role: TableRole,
    ) -> Self {
        CharTabulation {
            inner: SimpleTabulation::generate(vec![b; c as usize], out_chars * out_char_bits, seed, role),
            out_chars,
            out_char_bits,
        }
    }

    /// Builds the inner map of `params`: `c` key characters to `d` derived
    /// characters of `derived_bits` bits.
    pub fn new(params: &TabulationParams, role: TableRole) -> Result<Self> {
        params.validate()?;
        if params.d == 0 {
            return Err(Error::params("a character map needs d ≥ 1 output characters"));
        }
        Ok(Self::generate(params.c, params.b, params.d, params.derived_bits, params.seed, role))
    }

    pub fn from_simple(inner: SimpleTabulation, out_chars: u32, out_char_bits: u32) -> Result<Self> {
        if out_chars == 0 || out_chars * out_char_bits != inner.out_bits() {
            return Err(Error::WidthMismatch(format!(
                "{out_chars} characters of {out_char_bits} bits do not fill {} output bits",
                inner.out_bits()
            )));
        }
        Ok(CharTabulation {
            inner,
            out_chars,
            out_char_bits,
        })
    }

    /// The packed output characters.
    #[inline]
    pub fn hash(&self, key: u64) -> u64 {
        self.inner.hash(key)
    }

    #[inline]
    pub fn output_char(&self, packed: u64, position: u32) -> u64 {
        (packed >> (position * self.out_char_bits)) & low_mask(self.out_char_bits)
    }

    pub fn output_chars(&self, key: u64) -> impl Iterator<Item = u64> + '_ {
        let packed = self.hash(key);
        (0..self.out_chars).map(move |i| self.output_char(packed, i))
    }

    pub fn out_chars(&self) -> u32 {
        self.out_chars
    }

    pub fn out_char_bits(&self) -> u32 {
        self.out_char_bits
    }

    pub fn out_alphabet_size(&self) -> usize {
        1usize << self.out_char_bits
    }

    pub fn inner(&self) -> &SimpleTabulation {
        &self.inner
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tabulation::PositionSet;

    #[test]
    fn sixteen_bit_tables() {
        let h = SimpleTabulation::new(&TabulationParams::simple(4, 16, 64, 11)).unwrap();
        assert_eq!(h.characters(), 4);
        assert!((0..4).all(|i| h.table(i).len() == 65536));
    }

    #[test]
    fn single_character_is_a_lookup() {
        let h = SimpleTabulation::new(&TabulationParams::simple(1, 4, 8, 5)).unwrap();
        assert_eq!(h.table(0).len(), 16);
        for x in 0..16 {
            assert_eq!(h.hash(x), h.table(0)[x as usize]);
            assert!(h.hash(x) < 256);
        }
    }

    #[test]
    fn same_seed_same_tables() {
        let p = TabulationParams::simple(3, 8, 32, 99);
        assert_eq!(SimpleTabulation::new(&p).unwrap(), SimpleTabulation::new(&p).unwrap());
        assert_ne!(
            SimpleTabulation::new(&p).unwrap(),
            SimpleTabulation::new(&p.with_seed(100)).unwrap()
        );
    }

    #[test]
    fn rejects_mixed_params() {
        assert!(SimpleTabulation::new(&TabulationParams::new(2, 8, 1, 32, 0)).is_err());
        assert!(SimpleTabulation::new(&TabulationParams::simple(5, 16, 32, 0)).is_err());
    }

    #[test]
    fn explicit_tables_by_hand() {
        let h = SimpleTabulation::from_tables(vec![1, 1], 4, vec![vec![1, 2], vec![4, 8]]).unwrap();
        // character 0 = bit 0, character 1 = bit 1
        assert_eq!(h.hash(0b10), 1 ^ 8);
        assert_eq!(h.hash(0b00), 1 ^ 4);
        assert_eq!(h.hash(0b01), 2 ^ 4);
        assert_eq!(h.hash(0b11), 2 ^ 8);
    }

    #[test]
    fn from_tables_validates() {
        assert!(SimpleTabulation::from_tables(vec![1], 4, vec![vec![1, 2, 3]]).is_err());
        assert!(SimpleTabulation::from_tables(vec![1], 2, vec![vec![1, 8]]).is_err());
        assert!(SimpleTabulation::from_tables(vec![1, 1], 4, vec![vec![1, 2]]).is_err());
    }

    #[test]
    fn shared_character_cancels() {
        let p = TabulationParams::simple(2, 8, 32, 3);
        let h = SimpleTabulation::new(&p).unwrap();
        let (a, pch, qch) = (17u64, 40u64, 200u64);
        let x = a | (pch << 8);
        let y = a | (qch << 8);
        assert_eq!(h.hash(x) ^ h.hash(y), h.table(1)[40] ^ h.table(1)[200]);
    }

    #[test]
    fn position_set_edge_cases() {
        let p = TabulationParams::simple(2, 8, 32, 3);
        let h = SimpleTabulation::new(&p).unwrap();
        assert_eq!(h.hash_position_set(&PositionSet::new()), 0);
        let pc = PositionChar::new(1, 77);
        assert_eq!(h.hash_position_set(&[pc]), h.table(1)[77]);
        let a = PositionSet::of_key(&p, 0x1234);
        assert_eq!(h.hash_position_set(&a.symmetric_difference(&a)), 0);
        assert_eq!(h.hash_position_set(&a), h.hash(0x1234));
    }

    #[test]
    fn char_map_outputs() {
        let p = TabulationParams::new(2, 8, 4, 32, 1).with_derived_bits(6);
        let g = CharTabulation::new(&p, TableRole::MixedInner).unwrap();
        let chars: Vec<u64> = g.output_chars(0xbeef).collect();
        assert_eq!(chars.len(), 4);
        assert!(chars.iter().all(|&c| c < 64));
        let packed = g.hash(0xbeef);
        assert_eq!(packed >> 24, 0);
        assert!(CharTabulation::from_simple(g.inner().clone(), 3, 6).is_err());
    }
}
