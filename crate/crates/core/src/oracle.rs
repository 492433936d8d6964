//! Exhaustive desk-scale oracles for the dependency structure of simple
//! tabulation.
//!
//! A key is viewed as the set of its `c` position characters, and a tuple of
//! keys is "zero-sum" when every position character occurs an even number of
//! times across it. Simple tabulation is linear over this symmetric
//! difference, so zero-sum tuples are exactly where hash values can be
//! dependent. Each key is encoded as a bitset over `[c] × Σ`, one bit per
//! position character, and tuples are combined by XOR.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::tabulation::{PositionChar, PositionSet, TabulationParams};

/// Default cap on enumerated tuples.
pub const DEFAULT_BUDGET: u128 = 100_000_000;
/// Largest key set the subset scan in [`DependencyOracle::is_independent`] accepts.
pub const MAX_INDEPENDENCE_KEYS: usize = 24;

/// `(2t − 1)!! = (2t − 1)(2t − 3)···3·1`, saturating.
pub fn odd_double_factorial(t: u32) -> u128 {
    (1..=t).fold(1u128, |acc, i| acc.saturating_mul(2 * i as u128 - 1))
}

/// An ordered tuple of an even number (≥ 2) of keys.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyTuple(Vec<u64>);

impl KeyTuple {
    pub fn new(keys: Vec<u64>) -> Result<Self> {
        if keys.len() < 2 || !keys.len().is_multiple_of(2) {
            return Err(Error::params(format!("tuple length {} is not even and ≥ 2", keys.len())));
        }
        Ok(KeyTuple(keys))
    }

    pub fn t(&self) -> usize {
        self.0.len() / 2
    }

    pub fn keys(&self) -> &[u64] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroSumReport {
    pub count: u64,
    /// `((2t−1)!!)^c · n^t`, saturating.
    pub bound: u128,
    pub within_bound: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossZeroSumReport {
    pub count: u64,
    /// `((2t−1)!!)^c · ∏ √|A_i|`.
    pub bound: f64,
    pub within_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Independence {
    Independent,
    /// Indices (into the input) of a smallest zero-sum subset, lexicographically first.
    Dependent { witness: Vec<usize> },
}

impl Independence {
    pub fn is_independent(&self) -> bool {
        matches!(self, Independence::Independent)
    }
}

type Signature = Box<[u64]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DependencyOracle {
    c: u32,
    b: u32,
    budget: u128,
}

impl DependencyOracle {
    pub fn new(c: u32, b: u32) -> Result<Self> {
        TabulationParams::simple(c, b, 1, 0).validate()?;
        Ok(DependencyOracle {
            c,
            b,
            budget: DEFAULT_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: u128) -> Self {
        self.budget = budget;
        self
    }

    fn params(&self) -> TabulationParams {
        TabulationParams::simple(self.c, self.b, 1, 0)
    }

    fn words(&self) -> usize {
        ((self.c as usize) << self.b).div_ceil(64)
    }

    fn signature(&self, key: u64) -> Signature {
        let mut sig = vec![0u64; self.words()].into_boxed_slice();
        for pc in self.params().position_chars(key) {
            let bit = ((pc.position as usize) << self.b) + pc.value as usize;
            sig[bit / 64] ^= 1 << (bit % 64);
        }
        sig
    }

    fn zero(&self) -> Signature {
        vec![0u64; self.words()].into_boxed_slice()
    }

    fn check_budget(&self, needed: u128) -> Result<()> {
        if needed > self.budget {
            return Err(Error::BudgetExceeded {
                needed,
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// Position characters occurring an odd number of times across `keys`.
    pub fn symmetric_difference(&self, keys: &[u64]) -> PositionSet {
        let p = self.params();
        let mut set = PositionSet::new();
        for &key in keys {
            for pc in p.position_chars(key) {
                set.toggle(pc);
            }
        }
        set
    }

    pub fn is_zero_sum(&self, tuple: &KeyTuple) -> bool {
        self.symmetric_difference(tuple.keys()).is_empty()
    }

    /// Exact number of ordered `2t`-tuples over `keys` with empty symmetric
    /// difference, next to the `((2t−1)!!)^c n^t` bound.
    pub fn count_zero_sum_tuples(&self, keys: &[u64], t: u32) -> Result<ZeroSumReport> {
        if t == 0 {
            return Err(Error::params("t must be at least 1"));
        }
        let n = keys.len() as u128;
        self.check_budget(saturating_pow(n, 2 * t))?;
        let sigs: Vec<Signature> = keys.iter().map(|&k| self.signature(k)).collect();
        let halves: Vec<&[Signature]> = vec![&sigs; t as usize];
        let count = self.meet_in_the_middle(&halves, &halves);
        let bound = saturating_pow(odd_double_factorial(t), self.c).saturating_mul(saturating_pow(n, t));
        Ok(ZeroSumReport {
            count,
            bound,
            within_bound: (count as u128) <= bound,
        })
    }

    /// Zero-sum tuples in `A_1 × ⋯ × A_{2t}`, next to the `((2t−1)!!)^c ∏√|A_i|` bound.
    pub fn count_zero_sum_cross(&self, sets: &[Vec<u64>]) -> Result<CrossZeroSumReport> {
        if sets.len() < 2 || !sets.len().is_multiple_of(2) {
            return Err(Error::params(format!("need an even number ≥ 2 of sets, got {}", sets.len())));
        }
        let t = (sets.len() / 2) as u32;
        let product = sets
            .iter()
            .fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128));
        self.check_budget(product)?;
        let sigs: Vec<Vec<Signature>> = sets
            .iter()
            .map(|s| s.iter().map(|&k| self.signature(k)).collect())
            .collect();
        let (left, right) = sigs.split_at(t as usize);
        let left: Vec<&[Signature]> = left.iter().map(Vec::as_slice).collect();
        let right: Vec<&[Signature]> = right.iter().map(Vec::as_slice).collect();
        let count = self.meet_in_the_middle(&left, &right);
        let bound = (saturating_pow(odd_double_factorial(t), self.c) as f64) * (product as f64).sqrt();
        Ok(CrossZeroSumReport {
            count,
            bound,
            within_bound: count as f64 <= bound,
        })
    }

    /// Counts `(l, r) ∈ L_1×⋯×L_t × R_1×⋯×R_t` whose signatures XOR to zero,
    /// via a histogram of left-half XORs.
    fn meet_in_the_middle(&self, left: &[&[Signature]], right: &[&[Signature]]) -> u64 {
        let mut histogram: HashMap<Signature, u64> = HashMap::new();
        self.for_each_xor(left, |sig| *histogram.entry(sig.into()).or_default() += 1);
        let mut count = 0;
        self.for_each_xor(right, |sig| count += histogram.get(sig).copied().unwrap_or(0));
        count
    }

    /// Calls `f` with the XOR of every tuple in `sets[0] × sets[1] × ⋯`.
    fn for_each_xor(&self, sets: &[&[Signature]], mut f: impl FnMut(&[u64])) {
        if sets.iter().any(|s| s.is_empty()) {
            return;
        }
        let depth = sets.len();
        let mut stack: Vec<Signature> = (0..=depth).map(|_| self.zero()).collect();
        let mut idx = vec![0usize; depth];
        let mut level = 0;
        loop {
            if level == depth {
                f(&stack[depth]);
                loop {
                    if level == 0 {
                        return;
                    }
                    level -= 1;
                    idx[level] += 1;
                    if idx[level] < sets[level].len() {
                        break;
                    }
                    idx[level] = 0;
                }
            }
            let (lo, hi) = stack.split_at_mut(level + 1);
            for ((out, a), b) in hi[0].iter_mut().zip(lo[level].iter()).zip(sets[level][idx[level]].iter()) {
                *out = a ^ b;
            }
            level += 1;
        }
    }

    /// Whether no non-empty subset of `keys` has empty symmetric difference.
    /// A dependent set comes with its smallest witness.
    pub fn is_independent(&self, keys: &[u64]) -> Result<Independence> {
        if keys.len() > MAX_INDEPENDENCE_KEYS {
            return Err(Error::BudgetExceeded {
                needed: keys.len() as u128,
                budget: MAX_INDEPENDENCE_KEYS as u128,
            });
        }
        let sigs: Vec<Signature> = keys.iter().map(|&k| self.signature(k)).collect();
        if gf2_rank(&sigs) == sigs.len() {
            return Ok(Independence::Independent);
        }
        for size in (2..=keys.len()).step_by(2) {
            let mut comb: Vec<usize> = (0..size).collect();
            loop {
                let mut acc = self.zero();
                for &i in &comb {
                    xor_into(&mut acc, &sigs[i]);
                }
                if acc.iter().all(|&w| w == 0) {
                    return Ok(Independence::Dependent { witness: comb });
                }
                if !next_combination(&mut comb, keys.len()) {
                    break;
                }
            }
        }
        unreachable!("rank deficiency implies a zero-sum subset")
    }

    /// Number of `(a, b, c) ∈ X³` with `y0 ⊕ a ⊕ b ⊕ c = ∅`.
    pub fn delta(&self, y0: u64, keys: &[u64]) -> Result<u64> {
        self.check_budget(saturating_pow(keys.len() as u128, 3))?;
        let y = self.signature(y0);
        let sigs: Vec<Signature> = keys.iter().map(|&k| self.signature(k)).collect();
        let mut histogram: HashMap<Signature, u64> = HashMap::new();
        for s in &sigs {
            let mut v = s.clone();
            xor_into(&mut v, &y);
            *histogram.entry(v).or_default() += 1;
        }
        let mut scratch = self.zero();
        let mut count = 0;
        for b in &sigs {
            for c in &sigs {
                for ((o, x), z) in scratch.iter_mut().zip(b.iter()).zip(c.iter()) {
                    *o = x ^ z;
                }
                count += histogram.get(&scratch).copied().unwrap_or(0);
            }
        }
        Ok(count)
    }

    /// Every position character of the universe, position-major.
    pub fn all_position_chars(&self) -> impl Iterator<Item = PositionChar> {
        let b = self.b;
        (0..self.c).flat_map(move |i| (0..1u64 << b).map(move |v| PositionChar::new(i, v)))
    }
}

fn xor_into(acc: &mut [u64], other: &[u64]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a ^= b;
    }
}

fn saturating_pow(base: u128, exp: u32) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

fn gf2_rank(rows: &[Signature]) -> usize {
    let mut basis: Vec<Signature> = Vec::new();
    for row in rows {
        let mut v = row.clone();
        for b in &basis {
            let pivot = leading_bit(b).expect("basis rows are non-zero");
            if v[pivot / 64] >> (pivot % 64) & 1 == 1 {
                xor_into(&mut v, b);
            }
        }
        if leading_bit(&v).is_some() {
            basis.push(v);
            basis.sort_by_key(|b| std::cmp::Reverse(leading_bit(b)));
        }
    }
    basis.len()
}

fn leading_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .rev()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
}

/// Advances `comb` to the next k-subset of `[n]` in lexicographic order.
fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    for i in (0..k).rev() {
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
