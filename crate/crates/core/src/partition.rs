//! Splitting a hash value into a bin over `k` bins and a local value.
//!
//! The bin is the top `lg k` bits; the local value is the remaining low
//! bits, so local values keep their order when read as fractions of `[0,1)`.

use crate::error::{Error, Result};
use crate::rng::low_mask;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartitionParams {
    k: u64,
    r: u32,
    bin_bits: u32,
    local_bits: u32,
    constraint_ok: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PartitionedHash {
    pub bin: u64,
    pub local: u64,
}

impl PartitionParams {
    pub fn new(k: u64, r: u32) -> Result<Self> {
        if k == 0 || !k.is_power_of_two() {
            return Err(Error::params(format!("bin count {k} is not a power of two")));
        }
        if r == 0 || r > 64 {
            return Err(Error::params(format!("hash width {r} out of range")));
        }
        let bin_bits = k.trailing_zeros();
        if bin_bits >= r {
            return Err(Error::params(format!(
                "lg k = {bin_bits} leaves no local bits in an {r}-bit hash"
            )));
        }
        Ok(PartitionParams {
            k,
            r,
            bin_bits,
            local_bits: r - bin_bits,
            constraint_ok: None,
        })
    }

    /// Records whether `k` satisfies the `k`-versus-alphabet constraint for
    /// the given alphabet size and derived-character count. Advisory only.
    pub fn with_alphabet(mut self, sigma_size: u64, d: u32) -> Self {
        self.constraint_ok = Some(check_parameter_constraint(self.k, sigma_size, d).ok);
        self
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn bin_bits(&self) -> u32 {
        self.bin_bits
    }

    pub fn local_bits(&self) -> u32 {
        self.local_bits
    }

    pub fn constraint_ok(&self) -> Option<bool> {
        self.constraint_ok
    }

    #[inline]
    pub fn split(&self, hash: u64) -> PartitionedHash {
        let local = hash & low_mask(self.local_bits);
        let bin = if self.bin_bits == 0 {
            0
        } else {
            (hash >> self.local_bits) & low_mask(self.bin_bits)
        };
        PartitionedHash { bin, local }
    }

    #[inline]
    pub fn join(&self, part: PartitionedHash) -> u64 {
        if self.bin_bits == 0 {
            part.local
        } else {
            (part.bin << self.local_bits) | part.local
        }
    }

    /// The local value as a fraction in `[0, 1)`.
    pub fn local_fraction(&self, local: u64) -> f64 {
        local as f64 / 2f64.powi(self.local_bits as i32)
    }
}

/// Both terms of the bound on `k`, and whether `k` is within their minimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintReport {
    pub ok: bool,
    /// `|Σ| / (lg|Σ| · (lg lg|Σ|)²)`
    pub concentration_term: f64,
    /// `|Σ| / (4 d lg|Σ|)`
    pub derived_term: f64,
}

pub fn check_parameter_constraint(k: u64, sigma_size: u64, d: u32) -> ConstraintReport {
    let sigma = sigma_size.max(2) as f64;
    let lg = sigma.log2();
    let lglg = lg.log2();
    let concentration_term = sigma / (lg * lglg * lglg);
    let derived_term = if d == 0 {
        f64::INFINITY
    } else {
        sigma / (4.0 * d as f64 * lg)
    };
    let bound = concentration_term.min(derived_term);
    ConstraintReport {
        ok: k <= 1 || (k as f64) <= bound,
        concentration_term,
        derived_term,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn split_by_hand() {
        let p = PartitionParams::new(4, 8).unwrap();
        let s = p.split(0b1101_0110);
        assert_eq!(s, PartitionedHash { bin: 3, local: 0b01_0110 });
        assert_eq!(p.join(s), 0b1101_0110);
    }

    #[test]
    fn single_bin() {
        let p = PartitionParams::new(1, 64).unwrap();
        for v in [0, 1, u64::MAX, 0x8000_0000_0000_0000] {
            assert_eq!(p.split(v), PartitionedHash { bin: 0, local: v });
        }
    }

    #[test]
    fn exhaustive_round_trip_small() {
        for r in 1..=12u32 {
            for lgk in 0..r {
                let p = PartitionParams::new(1 << lgk, r).unwrap();
                let mut seen = std::collections::HashSet::new();
                for v in 0..(1u64 << r) {
                    let s = p.split(v);
                    assert!(s.bin < p.k() && s.local < 1 << p.local_bits());
                    assert_eq!(p.join(s), v);
                    assert!(seen.insert((s.bin, s.local)));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_k() {
        assert!(PartitionParams::new(3, 8).is_err());
        assert!(PartitionParams::new(0, 8).is_err());
        assert!(PartitionParams::new(256, 8).is_err());
        assert!(PartitionParams::new(2, 65).is_err());
    }

    #[test]
    fn constraint_examples() {
        let big = check_parameter_constraint(256, 65536, 4);
        assert!(big.ok);
        assert_eq!(big.derived_term, 256.0);
        assert_eq!(big.concentration_term, 256.0);
        assert!(!check_parameter_constraint(257, 65536, 4).ok);
        let small = check_parameter_constraint(256, 256, 4);
        assert!(!small.ok);
        assert_eq!(small.derived_term, 2.0);
        assert!(check_parameter_constraint(1, 256, 4).ok);
        assert!(check_parameter_constraint(1, 2, 100).ok);
        let p = PartitionParams::new(256, 64).unwrap().with_alphabet(256, 4);
        assert_eq!(p.constraint_ok(), Some(false));
    }

    proptest! {
        #[test]
        fn join_inverts_split(v in any::<u64>(), lgk in 0u32..16, r in 17u32..=64) {
            let p = PartitionParams::new(1 << lgk, r).unwrap();
            let v = v & low_mask(r);
            prop_assert_eq!(p.join(p.split(v)), v);
        }
    }
}
