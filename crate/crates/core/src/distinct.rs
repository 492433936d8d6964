//! Distinct counting over a `k`-partition: HyperLogLog registers and
//! Flajolet–Martin bitmaps with stochastic averaging.

use crate::error::{Error, Result};
use crate::hasher::KeyHasher;
use crate::partition::PartitionParams;

/// Flajolet–Martin correction constant.
pub const PCSA_PHI: f64 = 0.77351;

/// Position of the first 1-bit of a `width`-bit value read MSB-first, 1-based;
/// `width + 1` for zero.
#[inline]
pub fn rho(local: u64, width: u32) -> u32 {
    if local == 0 {
        width + 1
    } else {
        local.leading_zeros() - (64 - width) + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HllRegisters {
    partition: PartitionParams,
    registers: Vec<u8>,
}

impl HllRegisters {
    pub fn new(partition: PartitionParams) -> Self {
        HllRegisters {
            partition,
            registers: vec![0; partition.k() as usize],
        }
    }

    #[inline]
    pub fn add_hash(&mut self, hash: u64) {
        let part = self.partition.split(hash);
        let r = rho(part.local, self.partition.local_bits()) as u8;
        let reg = &mut self.registers[part.bin as usize];
        *reg = (*reg).max(r);
    }

    pub fn add<H: KeyHasher + ?Sized>(&mut self, key: u64, hasher: &mut H) {
        self.add_hash(hasher.hash_key(key));
    }

    pub fn registers(&self) -> &[u8] {
        &self.registers
    }

    pub fn merge(&self, other: &HllRegisters) -> Result<HllRegisters> {
        if self.partition != other.partition {
            return Err(Error::IncompatibleSketches("partition parameters differ".into()));
        }
        let registers = self
            .registers
            .iter()
            .zip(&other.registers)
            .map(|(a, b)| *a.max(b))
            .collect();
        Ok(HllRegisters {
            partition: self.partition,
            registers,
        })
    }

    /// Harmonic-mean estimate with the small-range linear-counting correction.
    /// Requires `k ≥ 16`.
    pub fn estimate(&self) -> Result<f64> {
        let k = self.partition.k();
        if k < 16 {
            return Err(Error::params(format!("HyperLogLog needs k ≥ 16, got {k}")));
        }
        let k = k as f64;
        let alpha = 0.7213 / (1.0 + 1.079 / k);
        let sum: f64 = self.registers.iter().map(|&r| 2f64.powi(-(r as i32))).sum();
        let raw = alpha * k * k / sum;
        let zeros = self.registers.iter().filter(|&&r| r == 0).count();
        if raw <= 2.5 * k && zeros > 0 {
            Ok(k * (k / zeros as f64).ln())
        } else {
            Ok(raw)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcsaBitmaps {
    partition: PartitionParams,
    bitmaps: Vec<u128>,
}

impl PcsaBitmaps {
    pub fn new(partition: PartitionParams) -> Self {
        PcsaBitmaps {
            partition,
            bitmaps: vec![0; partition.k() as usize],
        }
    }

    #[inline]
    pub fn add_hash(&mut self, hash: u64) {
        let part = self.partition.split(hash);
        let t = rho(part.local, self.partition.local_bits()) - 1;
        self.bitmaps[part.bin as usize] |= 1u128 << t;
    }

    pub fn add<H: KeyHasher + ?Sized>(&mut self, key: u64, hasher: &mut H) {
        self.add_hash(hasher.hash_key(key));
    }

    pub fn bitmaps(&self) -> &[u128] {
        &self.bitmaps
    }

    pub fn merge(&self, other: &PcsaBitmaps) -> Result<PcsaBitmaps> {
        if self.partition != other.partition {
            return Err(Error::IncompatibleSketches("partition parameters differ".into()));
        }
        let bitmaps = self
            .bitmaps
            .iter()
            .zip(&other.bitmaps)
            .map(|(a, b)| a | b)
            .collect();
        Ok(PcsaBitmaps {
            partition: self.partition,
            bitmaps,
        })
    }

    /// `(k/φ)·2^R̄`, `R̄` the mean index of the lowest unset bit; 0 when empty.
    pub fn estimate(&self) -> f64 {
        if self.bitmaps.iter().all(|&b| b == 0) {
            return 0.0;
        }
        let k = self.partition.k() as f64;
        let total: u32 = self.bitmaps.iter().map(|b| b.trailing_ones()).sum();
        (k / PCSA_PHI) * 2f64.powf(total as f64 / k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hasher::FullyRandom;
    use proptest::prelude::*;

    #[test]
    fn rho_by_hand() {
        assert_eq!(rho(0b011111, 6), 2);
        assert_eq!(rho(0b100000, 6), 1);
        assert_eq!(rho(0b000001, 6), 6);
        assert_eq!(rho(0, 6), 7);
        assert_eq!(rho(1 << 63, 64), 1);
        assert_eq!(rho(0, 64), 65);
    }

    #[test]
    fn empty_sketches() {
        let p = PartitionParams::new(64, 64).unwrap();
        let hll = HllRegisters::new(p);
        assert!(hll.registers().iter().all(|&r| r == 0));
        assert_eq!(hll.estimate().unwrap(), 0.0);
        assert_eq!(PcsaBitmaps::new(p).estimate(), 0.0);
    }

    #[test]
    fn small_k_rejected() {
        let hll = HllRegisters::new(PartitionParams::new(8, 64).unwrap());
        assert!(hll.estimate().is_err());
    }

    #[test]
    fn register_bound_and_idempotence() {
        let p = PartitionParams::new(16, 16).unwrap();
        let mut h = FullyRandom::new(16, 3).unwrap();
        let mut hll = HllRegisters::new(p);
        for key in 0..5000 {
            hll.add(key, &mut h);
        }
        assert!(hll.registers().iter().all(|&r| r as u32 <= p.local_bits() + 1));
        let before = hll.clone();
        for key in 0..5000 {
            hll.add(key, &mut h);
        }
        assert_eq!(before, hll);
    }

    #[test]
    fn single_distinct_key_estimates_small() {
        let p = PartitionParams::new(256, 64).unwrap();
        for seed in 0..200 {
            let mut h = FullyRandom::new(64, seed).unwrap();
            let mut hll = HllRegisters::new(p);
            for _ in 0..1000 {
                hll.add(7, &mut h);
            }
            let e = hll.estimate().unwrap();
            assert!((0.0..=3.0).contains(&e), "estimate {e}");
        }
    }

    proptest! {
        #[test]
        fn merge_is_sketch_of_union(
            a in proptest::collection::vec(any::<u64>(), 0..200),
            b in proptest::collection::vec(any::<u64>(), 0..200),
            seed in any::<u64>(),
        ) {
            let p = PartitionParams::new(32, 64).unwrap();
            let mut h = FullyRandom::new(64, seed).unwrap();
            let (mut ha, mut hb, mut hu) = (HllRegisters::new(p), HllRegisters::new(p), HllRegisters::new(p));
            let (mut pa, mut pb, mut pu) = (PcsaBitmaps::new(p), PcsaBitmaps::new(p), PcsaBitmaps::new(p));
            for &x in &a { ha.add(x, &mut h); pa.add(x, &mut h); }
            for &x in &b { hb.add(x, &mut h); pb.add(x, &mut h); }
            for &x in b.iter().rev().chain(a.iter().rev()) { hu.add(x, &mut h); pu.add(x, &mut h); }
            prop_assert_eq!(ha.merge(&hb).unwrap(), hu);
            prop_assert_eq!(pa.merge(&pb).unwrap(), pu);
        }

        #[test]
        fn adding_never_decreases(keys in proptest::collection::vec(any::<u64>(), 1..100)) {
            let p = PartitionParams::new(16, 64).unwrap();
            let mut hll = HllRegisters::new(p);
            let mut pcsa = PcsaBitmaps::new(p);
            for &x in &keys {
                let (r0, b0) = (hll.clone(), pcsa.clone());
                hll.add_hash(x);
                pcsa.add_hash(x);
                prop_assert!(hll.registers().iter().zip(r0.registers()).all(|(a, b)| a >= b));
                prop_assert!(pcsa.bitmaps().iter().zip(b0.bitmaps()).all(|(a, b)| a & b == *b));
            }
        }
    }
}
