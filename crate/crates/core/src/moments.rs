//! Empirical central moments of sums of hashed indicator variables.
//!
//! Key `x_i` contributes `Y_i = 1` when the top `s` bits of its hash, read as
//! an integer, are below `a`; with `p = a/2^s` every `Y_i` has mean exactly
//! `p` under any uniform hash value. The query variant XORs `h(q)` into each
//! hash first.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hasher::{HashKind, KeyHasher};
use crate::rng::derive_seed;
use crate::stats::Summary;
use crate::tabulation::TabulationParams;

/// Largest denominator exponent accepted for a dyadic probability.
pub const MAX_DYADIC_BITS: u32 = 24;
/// Largest supported moment half-order.
pub const MAX_HALF_ORDER: u32 = 4;

/// A probability `numerator / 2^bits` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dyadic {
    numerator: u64,
    bits: u32,
}

impl Dyadic {
    pub fn new(numerator: u64, bits: u32) -> Result<Dyadic> {
        if bits > MAX_DYADIC_BITS {
            return Err(Error::params(format!("denominator 2^{bits} too large")));
        }
        if numerator > 1u64 << bits {
            return Err(Error::params(format!("{numerator}/2^{bits} exceeds 1")));
        }
        let mut d = Dyadic { numerator, bits };
        while d.bits > 0 && d.numerator.is_multiple_of(2) {
            d.numerator /= 2;
            d.bits -= 1;
        }
        Ok(d)
    }

    pub fn from_f64(p: f64) -> Result<Dyadic> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::params(format!("probability {p} outside [0, 1]")));
        }
        let scaled = p * (1u64 << MAX_DYADIC_BITS) as f64;
        if scaled.fract() != 0.0 {
            return Err(Error::NonDyadic(p, MAX_DYADIC_BITS));
        }
        Dyadic::new(scaled as u64, MAX_DYADIC_BITS)
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn value(&self) -> f64 {
        self.numerator as f64 / (1u64 << self.bits) as f64
    }

    /// Whether an `r`-bit hash value selects this key.
    #[inline]
    pub fn hit(&self, hash: u64, r: u32) -> bool {
        if self.bits == 0 {
            return self.numerator == 1;
        }
        (hash >> (r - self.bits)) < self.numerator
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentExperimentConfig {
    pub keys: Vec<u64>,
    pub p: Dyadic,
    /// Half-order: the reported moment is `E[(Y − μ)^{2k}]`.
    pub k: u32,
    pub trials: u64,
    pub query_key: Option<u64>,
}

impl MomentExperimentConfig {
    /// Keys `0..m`, no query key.
    pub fn consecutive(m: u64, p: Dyadic, k: u32, trials: u64) -> Self {
        MomentExperimentConfig {
            keys: (0..m).collect(),
            p,
            k,
            trials,
            query_key: None,
        }
    }

    pub fn with_query(mut self, q: u64) -> Self {
        self.query_key = Some(q);
        self
    }

    pub fn m(&self) -> usize {
        self.keys.len()
    }

    pub fn mu(&self) -> f64 {
        self.m() as f64 * self.p.value()
    }

    /// `Σ_{j=1}^{k} μ^j`.
    pub fn bound(&self) -> f64 {
        moment_bound(self.mu(), self.k)
    }

    pub fn validate(&self, params: &TabulationParams) -> Result<()> {
        params.validate()?;
        if self.k == 0 || self.k > MAX_HALF_ORDER {
            return Err(Error::params(format!("moment half-order {} not in 1..={MAX_HALF_ORDER}", self.k)));
        }
        if self.trials == 0 {
            return Err(Error::params("need at least one trial"));
        }
        if self.p.bits() > params.r {
            return Err(Error::params(format!(
                "probability needs {} hash bits, only {} available",
                self.p.bits(),
                params.r
            )));
        }
        let mask = params.key_mask();
        let mut sorted = self.keys.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::params("keys must be distinct"));
        }
        if let Some(&bad) = sorted.iter().find(|&&k| k & !mask != 0) {
            return Err(Error::params(format!("key {bad:#x} outside the key domain")));
        }
        if let Some(q) = self.query_key {
            if q & !mask != 0 {
                return Err(Error::params(format!("query key {q:#x} outside the key domain")));
            }
            if sorted.binary_search(&q).is_ok() {
                return Err(Error::QueryKeyCollision(q));
            }
        }
        Ok(())
    }
}

pub fn moment_bound(mu: f64, k: u32) -> f64 {
    (1..=k as i32).map(|j| mu.powi(j)).sum()
}

/// Exact `E[(Y − p)^{2k}]` for a single key.
pub fn single_key_moment(p: f64, k: u32) -> f64 {
    let q = 1.0 - p;
    let e = 2 * k as i32 - 1;
    p * q * (q.powi(e) + p.powi(e))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub moment: f64,
    pub std_error: f64,
    pub bound: f64,
    pub ratio: f64,
    pub trials: u64,
}

/// Value of `Y` in each trial. Trial `t` uses table seed
/// `derive_seed(params.seed, t)`.
pub fn sample_counts(cfg: &MomentExperimentConfig, kind: HashKind, params: &TabulationParams) -> Result<Vec<u64>> {
    cfg.validate(params)?;
    let r = params.r;
    (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut h = kind.build(&params.with_seed(derive_seed(params.seed, t)))?;
            let mask = cfg.query_key.map_or(0, |q| h.hash_key(q));
            Ok(cfg.keys.iter().filter(|&&x| cfg.p.hit(h.hash_key(x) ^ mask, r)).count() as u64)
        })
        .collect()
}

/// Averages `(Y − μ)^{2k}` over the given per-trial counts.
pub fn central_moment_from_counts(counts: &[u64], mu: f64, k: u32) -> MomentEstimate {
    let samples: Vec<f64> = counts.iter().map(|&y| (y as f64 - mu).powi(2 * k as i32)).collect();
    let s = Summary::of(&samples);
    let bound = moment_bound(mu, k);
    MomentEstimate {
        moment: s.mean,
        std_error: s.std_error(),
        bound,
        ratio: s.mean / bound,
        trials: counts.len() as u64,
    }
}

/// Estimates `E[(Y − μ)^{2k}]`, including the query-key variant when
/// `cfg.query_key` is set.
pub fn empirical_central_moment(
    cfg: &MomentExperimentConfig,
    kind: HashKind,
    params: &TabulationParams,
) -> Result<MomentEstimate> {
    let counts = sample_counts(cfg, kind, params)?;
    Ok(central_moment_from_counts(&counts, cfg.mu(), cfg.k))
}

/// As [`empirical_central_moment`], but requires a query key.
pub fn empirical_query_moment(
    cfg: &MomentExperimentConfig,
    kind: HashKind,
    params: &TabulationParams,
) -> Result<MomentEstimate> {
    if cfg.query_key.is_none() {
        return Err(Error::params("query moment needs a query key"));
    }
    empirical_central_moment(cfg, kind, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::binomial_central_moment;

    fn p16() -> Dyadic {
        Dyadic::new(1, 4).unwrap()
    }

    #[test]
    fn dyadic_parsing() {
        assert_eq!(Dyadic::from_f64(0.0625).unwrap(), p16());
        assert_eq!(Dyadic::new(4, 6).unwrap(), p16());
        assert_eq!(Dyadic::from_f64(0.375).unwrap(), Dyadic::new(3, 3).unwrap());
        assert_eq!(Dyadic::from_f64(1.0).unwrap().bits(), 0);
        assert!(matches!(Dyadic::from_f64(0.1), Err(Error::NonDyadic(..))));
        assert!(Dyadic::from_f64(1.5).is_err());
        assert!(Dyadic::new(3, 1).is_err());
        assert!(Dyadic::new(1, 30).is_err());
    }

    #[test]
    fn indicator_mean_is_exact() {
        for r in [4u32, 10, 20] {
            for p in [Dyadic::new(1, 4).unwrap(), Dyadic::new(3, 3).unwrap(), Dyadic::new(1, 0).unwrap()] {
                if p.bits() > r {
                    continue;
                }
                let hits = (0..1u64 << r).filter(|&h| p.hit(h, r)).count() as u64;
                assert_eq!(hits, p.numerator() << (r - p.bits()), "r={r} p={p:?}");
            }
        }
    }

    #[test]
    fn single_key_closed_form_matches_oracle() {
        for k in 1..=4 {
            for p in [0.5, 0.0625, 0.375] {
                let exact = binomial_central_moment(1, p, 2 * k);
                assert!((single_key_moment(p, k) - exact).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn single_key_simulation() {
        let params = TabulationParams::simple(2, 8, 32, 11);
        for kind in [HashKind::Simple, HashKind::FullyRandom] {
            for k in [1, 3] {
                let cfg = MomentExperimentConfig::consecutive(1, Dyadic::new(1, 2).unwrap(), k, 20_000);
                let est = empirical_central_moment(&cfg, kind, &params).unwrap();
                let want = single_key_moment(0.25, k);
                assert!((est.moment - want).abs() <= 4.0 * est.std_error, "{kind} k={k}: {est:?} vs {want}");
            }
        }
    }

    #[test]
    fn query_variant_single_key() {
        let params = TabulationParams::simple(2, 8, 32, 12);
        let cfg = MomentExperimentConfig::consecutive(1, p16(), 2, 20_000).with_query(300);
        let est = empirical_query_moment(&cfg, HashKind::Simple, &params).unwrap();
        let want = single_key_moment(0.0625, 2);
        assert!((est.moment - want).abs() <= 4.0 * est.std_error);
    }

    #[test]
    fn variance_of_random_baseline() {
        let params = TabulationParams::simple(2, 8, 32, 3);
        let cfg = MomentExperimentConfig::consecutive(64, p16(), 1, 4000);
        let est = empirical_central_moment(&cfg, HashKind::FullyRandom, &params).unwrap();
        let var = 64.0 * 0.0625 * 0.9375;
        assert!((est.moment - var).abs() <= 4.0 * est.std_error, "{est:?}");
        assert!(est.bound == 4.0);
    }

    #[test]
    fn deterministic_and_validated() {
        let params = TabulationParams::simple(2, 8, 32, 5);
        let cfg = MomentExperimentConfig::consecutive(100, p16(), 2, 50);
        assert_eq!(
            sample_counts(&cfg, HashKind::Simple, &params).unwrap(),
            sample_counts(&cfg, HashKind::Simple, &params).unwrap()
        );
        let collide = cfg.clone().with_query(5);
        assert_eq!(
            sample_counts(&collide, HashKind::Simple, &params),
            Err(Error::QueryKeyCollision(5))
        );
        assert!(empirical_query_moment(&cfg, HashKind::Simple, &params).is_err());
        let mut dup = cfg.clone();
        dup.keys.push(3);
        assert!(sample_counts(&dup, HashKind::Simple, &params).is_err());
        let mut big_k = cfg;
        big_k.k = 5;
        assert!(sample_counts(&big_k, HashKind::Simple, &params).is_err());
    }
}
