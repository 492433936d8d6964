//! Invertible Bloom filter with one sub-table per derived-character position.
//!
//! Key `x` lives in cell `h₁(x)_i` of sub-table `i`, so the filter decodes
//! exactly when `h₁` is fully peelable on the stored keys.
//!
//! Snapshot layout, little-endian:
//! `"TIBF"`, version `u8 = 1`, `d`, `c`, `b`, `derived_bits`, `fingerprint_bits` as `u8`,
//! two zero bytes, `m: u32`, `seed: u64`, `fingerprint_seed: u64`, then `d·m`
//! cells of `count: i64`, `key_sum: u64`, `check_sum: u32`, sub-table-major.

use crate::error::{Error, Result};
use crate::rng::{derive_seed, low_mask, TableRole};
use crate::tabulation::{CharTabulation, SimpleTabulation, TabulationParams};

pub const FINGERPRINT_BITS: u32 = 32;
const MAGIC: &[u8; 4] = b"TIBF";
const VERSION: u8 = 1;
const HEADER_LEN: usize = 32;
const CELL_LEN: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
struct Cell {
    count: i64,
    key_sum: u64,
    check_sum: u32,
}

#[derive(Debug, Clone)]
pub struct IbfTable {
    params: TabulationParams,
    fingerprint_seed: u64,
    h1: CharTabulation,
    fingerprint: SimpleTabulation,
    cells: Vec<Cell>,
}

/// Keys recovered by [`IbfTable::list`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IbfListing {
    /// Keys with net positive multiplicity.
    pub inserted: Vec<u64>,
    /// Keys with net negative multiplicity.
    pub deleted: Vec<u64>,
    /// Non-zero cells remained after peeling.
    pub leftover: bool,
}

impl IbfTable {
    /// `params` fixes the key layout (`c`, `b`), the number of sub-tables
    /// (`d`) and their size (`2^derived_bits`). The cell map is the inner
    /// function of mixed tabulation with the same params.
    pub fn new(params: &TabulationParams) -> Result<Self> {
        Self::with_fingerprint_seed(params, derive_seed(params.seed, TableRole::Fingerprint as u64))
    }

    pub fn with_fingerprint_seed(params: &TabulationParams, fingerprint_seed: u64) -> Result<Self> {
        let h1 = CharTabulation::new(params, TableRole::MixedInner)?;
        let fingerprint = SimpleTabulation::generate(
            vec![params.b; params.c as usize],
            FINGERPRINT_BITS,
            fingerprint_seed,
            TableRole::Fingerprint,
        );
        let cells = vec![Cell::default(); params.d as usize * h1.out_alphabet_size()];
        Ok(IbfTable {
            params: *params,
            fingerprint_seed,
            h1,
            fingerprint,
            cells,
        })
    }

    pub fn params(&self) -> &TabulationParams {
        &self.params
    }

    /// The cell map; decoding succeeds iff it is fully peelable on the content.
    pub fn char_map(&self) -> &CharTabulation {
        &self.h1
    }

    pub fn cells_per_table(&self) -> usize {
        self.h1.out_alphabet_size()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(|c| *c == Cell::default())
    }

    fn update(&mut self, key: u64, delta: i64) {
        let fp = self.fingerprint.hash(key) as u32;
        let m = self.cells_per_table();
        let packed = self.h1.hash(key);
        for i in 0..self.params.d {
            let cell = &mut self.cells[i as usize * m + self.h1.output_char(packed, i) as usize];
            cell.count += delta;
            cell.key_sum ^= key;
            cell.check_sum ^= fp;
        }
    }

    pub fn insert(&mut self, key: u64) {
        self.update(key, 1);
    }

    /// Deleting an absent key leaves negative counts, which [`list`](Self::list)
    /// reports as `deleted`; this is what set-difference decoding relies on.
    pub fn delete(&mut self, key: u64) {
        self.update(key, -1);
    }

    /// Cell-wise subtraction; lists as `self \ other` and `other \ self`.
    pub fn subtract(&self, other: &IbfTable) -> Result<IbfTable> {
        if self.params != other.params || self.fingerprint_seed != other.fingerprint_seed {
            return Err(Error::IncompatibleSketches("filters use different hash functions".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.cells.iter_mut().zip(&other.cells) {
            a.count -= b.count;
            a.key_sum ^= b.key_sum;
            a.check_sum ^= b.check_sum;
        }
        Ok(out)
    }

    fn pure_key(&self, cell: usize) -> Option<(u64, i64)> {
        let c = &self.cells[cell];
        if c.count != 1 && c.count != -1 {
            return None;
        }
        if c.key_sum & !self.params.key_mask() != 0 {
            return None;
        }
        (self.fingerprint.hash(c.key_sum) as u32 == c.check_sum).then_some((c.key_sum, c.count))
    }

    /// Peels pure cells until none remain. The table itself is left untouched.
    pub fn list(&self) -> IbfListing {
        let mut work = self.clone();
        let m = self.cells_per_table();
        let mut listing = IbfListing::default();
        let mut queue: Vec<usize> = (0..work.cells.len()).filter(|&c| work.pure_key(c).is_some()).collect();
        while let Some(cell) = queue.pop() {
            let Some((key, sign)) = work.pure_key(cell) else {
                continue;
            };
            if sign > 0 {
                listing.inserted.push(key);
            } else {
                listing.deleted.push(key);
            }
            work.update(key, -sign);
            let packed = work.h1.hash(key);
            for i in 0..self.params.d {
                let c = i as usize * m + work.h1.output_char(packed, i) as usize;
                if work.pure_key(c).is_some() {
                    queue.push(c);
                }
            }
        }
        listing.leftover = !work.is_empty();
        listing
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.cells.len() * CELL_LEN);
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.push(self.params.d as u8);
        out.push(self.params.c as u8);
        out.push(self.params.b as u8);
        out.push(self.params.derived_bits as u8);
        out.push(FINGERPRINT_BITS as u8);
        out.extend_from_slice(&[0, 0]);
        out.extend_from_slice(&(self.cells_per_table() as u32).to_le_bytes());
        out.extend_from_slice(&self.params.seed.to_le_bytes());
        out.extend_from_slice(&self.fingerprint_seed.to_le_bytes());
        for c in &self.cells {
            out.extend_from_slice(&c.count.to_le_bytes());
            out.extend_from_slice(&c.key_sum.to_le_bytes());
            out.extend_from_slice(&c.check_sum.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<IbfTable> {
        if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
            return Err(Error::Decode("not an IBF snapshot".into()));
        }
        if bytes[4] != VERSION {
            return Err(Error::Decode(format!("unsupported version {}", bytes[4])));
        }
        if bytes[9] as u32 != FINGERPRINT_BITS {
            return Err(Error::Decode(format!("unsupported fingerprint width {}", bytes[9])));
        }
        let le64 = |at: usize| u64::from_le_bytes(bytes[at..at + 8].try_into().expect("8 bytes"));
        let m = u32::from_le_bytes(bytes[12..16].try_into().expect("4 bytes")) as usize;
        let params = TabulationParams::new(bytes[6] as u32, bytes[7] as u32, bytes[5] as u32, 64, le64(16))
            .with_derived_bits(bytes[8] as u32);
        let mut table =
            IbfTable::with_fingerprint_seed(&params, le64(24)).map_err(|e| Error::Decode(e.to_string()))?;
        if m != table.cells_per_table() {
            return Err(Error::Decode(format!("cell count {m} disagrees with derived width")));
        }
        let body = &bytes[HEADER_LEN..];
        if body.len() != table.cells.len() * CELL_LEN {
            return Err(Error::Decode(format!(
                "expected {} cell bytes, got {}",
                table.cells.len() * CELL_LEN,
                body.len()
            )));
        }
        for (cell, raw) in table.cells.iter_mut().zip(body.chunks_exact(CELL_LEN)) {
            cell.count = i64::from_le_bytes(raw[..8].try_into().expect("8 bytes"));
            cell.key_sum = u64::from_le_bytes(raw[8..16].try_into().expect("8 bytes"));
            cell.check_sum = u32::from_le_bytes(raw[16..20].try_into().expect("4 bytes"));
        }
        if table.cells.iter().any(|c| c.key_sum & !low_mask(params.key_bits()) != 0) {
            return Err(Error::Decode("key sum outside the key domain".into()));
        }
        Ok(table)
    }
}
