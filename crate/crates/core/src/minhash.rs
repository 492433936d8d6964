//! MinHash over a `k`-partition: each bin keeps the smallest local hash
//! value that landed in it, and similarity is estimated from the bins that
//! are non-empty.
//!
//! Text format: the first line is `k`, followed by `k` lines
//! `slot_index value` where an empty slot's value is written `*`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hasher::KeyHasher;
use crate::partition::PartitionParams;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinHashSketch {
    k: usize,
    local_bits: Option<u32>,
    tag: Option<u64>,
    slots: Vec<Option<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityEstimate {
    pub value: f64,
    pub k_star: usize,
    pub match_count: usize,
}

impl SimilarityEstimate {
    fn from_counts(match_count: usize, k_star: usize) -> Result<Self> {
        if k_star == 0 {
            return Err(Error::NoSample);
        }
        Ok(SimilarityEstimate {
            value: match_count as f64 / k_star as f64,
            k_star,
            match_count,
        })
    }
}

fn check_width<H: KeyHasher + ?Sized>(hasher: &H, partition: &PartitionParams) -> Result<()> {
    if hasher.output_bits() != partition.r() {
        return Err(Error::WidthMismatch(format!(
            "hash emits {} bits, partition expects {}",
            hasher.output_bits(),
            partition.r()
        )));
    }
    Ok(())
}

impl MinHashSketch {
    pub fn empty(k: usize) -> Self {
        MinHashSketch {
            k,
            local_bits: None,
            tag: None,
            slots: vec![None; k],
        }
    }

    pub fn build<H, I>(keys: I, hasher: &mut H, partition: &PartitionParams) -> Result<Self>
    where
        H: KeyHasher + ?Sized,
        I: IntoIterator<Item = u64>,
    {
        check_width(hasher, partition)?;
        let mut sketch = MinHashSketch::empty(partition.k() as usize);
        sketch.local_bits = Some(partition.local_bits());
        for key in keys {
            let part = partition.split(hasher.hash_key(key));
            let slot = &mut sketch.slots[part.bin as usize];
            *slot = Some(slot.map_or(part.local, |v| v.min(part.local)));
        }
        Ok(sketch)
    }

    /// Labels the sketch with an identifier for the hash function that
    /// produced it; sketches with different labels refuse to compare.
    pub fn with_tag(mut self, tag: u64) -> Self {
        self.tag = Some(tag);
        self
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn slots(&self) -> &[Option<u64>] {
        &self.slots
    }

    pub fn non_empty(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }

    fn check_compatible(&self, other: &MinHashSketch) -> Result<()> {
        if self.k != other.k {
            return Err(Error::IncompatibleSketches(format!("k = {} vs {}", self.k, other.k)));
        }
        if let (Some(a), Some(b)) = (self.local_bits, other.local_bits) {
            if a != b {
                return Err(Error::IncompatibleSketches(format!("local widths {a} vs {b}")));
            }
        }
        if let (Some(a), Some(b)) = (self.tag, other.tag) {
            if a != b {
                return Err(Error::IncompatibleSketches(format!("hash tags {a:#x} vs {b:#x}")));
            }
        }
        Ok(())
    }

    /// Slot-wise minimum, with empty acting as +∞. Equals the sketch of the union.
    pub fn merge(&self, other: &MinHashSketch) -> Result<MinHashSketch> {
        self.check_compatible(other)?;
        let slots = self
            .slots
            .iter()
            .zip(&other.slots)
            .map(|(a, b)| match (a, b) {
                (Some(x), Some(y)) => Some(*x.min(y)),
                (x, None) => *x,
                (None, y) => *y,
            })
            .collect();
        Ok(MinHashSketch {
            k: self.k,
            local_bits: self.local_bits.or(other.local_bits),
            tag: self.tag.or(other.tag),
            slots,
        })
    }

    /// Rotation densification: an empty slot `j` copies the nearest
    /// non-empty slot `(j + t) mod k`, `t ≥ 1`, of the original sketch.
    pub fn densify(&self) -> Result<MinHashSketch> {
        let k = self.k;
        let Some(first) = self.slots.iter().position(Option::is_some) else {
            return Err(Error::EmptySketch);
        };
        let mut slots = self.slots.clone();
        // walk backwards from a filled slot so each empty slot sees its successor's source
        let mut next = self.slots[first];
        for step in 1..=k {
            let j = (first + k - step) % k;
            match self.slots[j] {
                Some(v) => next = Some(v),
                None => slots[j] = next,
            }
        }
        Ok(MinHashSketch { slots, ..self.clone() })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.k);
        for (i, slot) in self.slots.iter().enumerate() {
            match slot {
                Some(v) => writeln!(out, "{i} {v}"),
                None => writeln!(out, "{i} *"),
            }
            .expect("writing to a String");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<MinHashSketch> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "missing k"))?;
        let k: usize = header
            .trim()
            .parse()
            .map_err(|e| Error::parse(1, format!("bad k: {e}")))?;
        let mut slots = Vec::with_capacity(k);
        for (idx, line) in lines {
            let line_no = idx + 1;
            let (index, value) = line
                .trim()
                .split_once(' ')
                .ok_or_else(|| Error::parse(line_no, "expected `index value`"))?;
            let index: usize = index
                .parse()
                .map_err(|e| Error::parse(line_no, format!("bad index: {e}")))?;
            if index != slots.len() {
                return Err(Error::parse(line_no, format!("expected slot {}, got {index}", slots.len())));
            }
            let value = match value.trim() {
                "*" => None,
                v => Some(
                    v.parse::<u64>()
                        .map_err(|e| Error::parse(line_no, format!("bad value: {e}")))?,
                ),
            };
            slots.push(value);
        }
        if slots.len() != k {
            return Err(Error::parse(0, format!("expected {k} slots, got {}", slots.len())));
        }
        Ok(MinHashSketch {
            k,
            local_bits: None,
            tag: None,
            slots,
        })
    }
}

/// Fraction of bins whose minimum lies in both sets, among bins where at
/// least one sketch is non-empty.
pub fn estimate_similarity(a: &MinHashSketch, b: &MinHashSketch) -> Result<SimilarityEstimate> {
    a.check_compatible(b)?;
    let (mut k_star, mut matches) = (0, 0);
    for (x, y) in a.slots.iter().zip(&b.slots) {
        match (x, y) {
            (None, None) => {}
            (Some(x), Some(y)) => {
                k_star += 1;
                if x == y {
                    matches += 1;
                }
            }
            _ => k_star += 1,
        }
    }
    SimilarityEstimate::from_counts(matches, k_star)
}

/// Single-set form: in every non-empty bin pick the key with the smallest
/// local value and report the fraction of bins where that key is red.
pub fn estimate_fraction<H, F>(
    keys: &[u64],
    is_red: F,
    hasher: &mut H,
    partition: &PartitionParams,
) -> Result<SimilarityEstimate>
where
    H: KeyHasher + ?Sized,
    F: Fn(u64) -> bool,
{
    check_width(hasher, partition)?;
    let mut best: Vec<Option<(u64, u64)>> = vec![None; partition.k() as usize];
    for &key in keys {
        let part = partition.split(hasher.hash_key(key));
        let slot = &mut best[part.bin as usize];
        if slot.is_none_or(|(v, _)| part.local < v) {
            *slot = Some((part.local, key));
        }
    }
    let k_star = best.iter().filter(|s| s.is_some()).count();
    let red = best.iter().flatten().filter(|(_, key)| is_red(*key)).count();
    SimilarityEstimate::from_counts(red, k_star)
}
