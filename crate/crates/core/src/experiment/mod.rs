//! Seeded, reproducible experiments that emit CSV.
//!
//! Trial `t` of a run with seed `s` draws its hash tables from
//! `derive_seed(s, t)`. Random workloads are drawn once per run from `s`, so
//! every hash kind sees the same keys. Trials run in parallel and are
//! aggregated in trial order, so output depends only on the spec.

mod csv;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;

pub use csv::CsvWriter;

use crate::distinct::{HllRegisters, PcsaBitmaps};
use crate::error::{Error, Result};
use crate::hasher::{HashKind, KeyHasher};
use crate::minhash::estimate_fraction;
use crate::moments::{central_moment_from_counts, sample_counts, Dyadic, MomentExperimentConfig};
use crate::oracle::DependencyOracle;
use crate::partition::{check_parameter_constraint, PartitionParams};
use crate::peeling::is_fully_peelable;
use crate::rng::{derive_seed, table_rng, TableRole};
use crate::stats::Summary;
use crate::tabulation::{CharTabulation, MixedTabulation, SimpleTabulation, TabulationParams};

/// Relative deviation thresholds reported by the MinHash concentration run.
pub const DELTA_GRID: [f64; 4] = [0.05, 0.1, 0.2, 0.5];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Command {
    MinhashConcentration,
    AdversarialSimple,
    DistinctAccuracy,
    Peelability,
    Moments,
    ZeroSum,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::MinhashConcentration,
        Command::AdversarialSimple,
        Command::DistinctAccuracy,
        Command::Peelability,
        Command::Moments,
        Command::ZeroSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::MinhashConcentration => "minhash-concentration",
            Command::AdversarialSimple => "adversarial-simple",
            Command::DistinctAccuracy => "distinct-accuracy",
            Command::Peelability => "peelability",
            Command::Moments => "moments",
            Command::ZeroSum => "zero-sum",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::params(format!("unknown command {s:?}")))
    }
}

/// Everything needed to reproduce one experiment run.
///
/// `k` is the number of bins for the sketch commands and the moment
/// half-order for `moments`. `n` is the key count for the commands that take
/// a single set; for `zero-sum`, `n = 0` means the whole universe.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub command: Command,
    pub hashes: Vec<HashKind>,
    pub c: u32,
    pub b: u32,
    pub d: u32,
    pub r: u32,
    pub k: u64,
    pub n: u64,
    pub n_red: u64,
    pub n_blue: u64,
    pub random_keys: bool,
    pub trials: u64,
    pub seed: u64,
    pub p: f64,
    pub t: u32,
    pub query: Option<u64>,
}

impl ExperimentSpec {
    /// Desk-scale defaults for `command`.
    pub fn new(command: Command) -> Self {
        let base = ExperimentSpec {
            command,
            hashes: vec![HashKind::Mixed],
            c: 2,
            b: 16,
            d: 4,
            r: 64,
            k: 256,
            n: 100_000,
            n_red: 1 << 15,
            n_blue: 3 << 15,
            random_keys: false,
            trials: 100,
            seed: 1,
            p: 0.0625,
            t: 2,
            query: None,
        };
        match command {
            Command::MinhashConcentration => base,
            Command::AdversarialSimple => ExperimentSpec {
                hashes: vec![HashKind::Simple, HashKind::Mixed],
                r: 32,
                k: 32,
                n_red: 4,
                n_blue: 12,
                random_keys: true,
                trials: 2000,
                ..base
            },
            Command::DistinctAccuracy => ExperimentSpec {
                hashes: vec![HashKind::Mixed, HashKind::FullyRandom],
                trials: 50,
                ..base
            },
            Command::Peelability => ExperimentSpec {
                b: 8,
                d: 6,
                n: 128,
                random_keys: true,
                trials: 10_000,
                ..base
            },
            Command::Moments => ExperimentSpec {
                hashes: vec![HashKind::Simple, HashKind::FullyRandom],
                b: 8,
                r: 32,
                k: 2,
                n: 4096,
                trials: 1000,
                ..base
            },
            Command::ZeroSum => ExperimentSpec {
                b: 2,
                n: 0,
                trials: 1,
                ..base
            },
        }
    }

    /// Tabulation shape shared by every hash kind in the run.
    pub fn params(&self) -> TabulationParams {
        TabulationParams::new(self.c, self.b, self.d, self.r, self.seed)
    }

    /// Shape with the tables of trial `t`.
    pub fn trial_params(&self, trial: u64) -> TabulationParams {
        self.params().with_seed(derive_seed(self.seed, trial))
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::params("need at least one trial"));
        }
        if self.hashes.is_empty() {
            return Err(Error::params("no hash kind selected"));
        }
        self.params().validate()
    }

    fn partition(&self) -> Result<PartitionParams> {
        PartitionParams::new(self.k, self.r)
    }

    /// `count` distinct keys: `0..count`, or a uniform sample from the
    /// universe when `random_keys` is set.
    pub fn workload(&self, count: u64) -> Result<Vec<u64>> {
        let universe = self.params().universe_size();
        if count > universe {
            return Err(Error::params(format!("{count} keys do not fit a universe of {universe}")));
        }
        if !self.random_keys {
            return Ok((0..count).collect());
        }
        let mut rng = table_rng(self.seed, TableRole::Workload, 0);
        if universe <= 1 << 24 {
            return Ok(index::sample(&mut rng, universe as usize, count as usize)
                .into_iter()
                .map(|k| k as u64)
                .collect());
        }
        let mask = self.params().key_mask();
        let mut seen = HashSet::with_capacity(count as usize);
        let mut keys = Vec::with_capacity(count as usize);
        while keys.len() < count as usize {
            let k = rng.random::<u64>() & mask;
            if seen.insert(k) {
                keys.push(k);
            }
        }
        Ok(keys)
    }
}

/// CSV text plus human-oriented remarks (constraint warnings, summaries).
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub csv: String,
    pub notes: Vec<String>,
}

pub fn run(spec: &ExperimentSpec) -> Result<ExperimentOutput> {
    spec.validate()?;
    match spec.command {
        Command::MinhashConcentration => cmd_minhash_concentration(spec),
        Command::AdversarialSimple => cmd_adversarial_simple(spec),
        Command::DistinctAccuracy => cmd_distinct_accuracy(spec),
        Command::Peelability => cmd_peelability(spec),
        Command::Moments => cmd_moments(spec),
        Command::ZeroSum => cmd_zero_sum(spec),
    }
}

fn constraint_note(spec: &ExperimentSpec) -> Option<String> {
    let report = check_parameter_constraint(spec.k, spec.params().derived_alphabet_size(), spec.d);
    (!report.ok).then(|| {
        format!(
            "warning: k = {} exceeds the concentration limit (|Σ|/log²|Σ| ≈ {:.1}, |Σ|^(d/2) ≈ {:.1})",
            spec.k, report.concentration_term, report.derived_term
        )
    })
}

/// MinHash estimates of the red fraction, one per trial.
///
/// The first `n_red` workload keys are red, the next `n_blue` blue.
pub fn minhash_estimates(spec: &ExperimentSpec, kind: HashKind) -> Result<Vec<f64>> {
    spec.validate()?;
    let partition = spec.partition()?;
    let keys = spec.workload(spec.n_red + spec.n_blue)?;
    let red: HashSet<u64> = keys[..spec.n_red as usize].iter().copied().collect();
    (0..spec.trials)
        .into_par_iter()
        .map(|t| {
            let mut h = kind.build(&spec.trial_params(t))?;
            Ok(estimate_fraction(&keys, |x| red.contains(&x), &mut h, &partition)?.value)
        })
        .collect()
}

fn cmd_minhash_concentration(spec: &ExperimentSpec) -> Result<ExperimentOutput> {
    if spec.n_red + spec.n_blue == 0 {
        return Err(Error::params("empty workload"));
    }
    let f = spec.n_red as f64 / (spec.n_red + spec.n_blue) as f64;
    let mut out = CsvWriter::new(&["record", "hash_kind", "f", "k", "param", "value"]);
    let mut notes: Vec<String> = constraint_note(spec).into_iter().collect();
    for &kind in &spec.hashes {
        let estimates = minhash_estimates(spec, kind)?;
        let row = |out: &mut CsvWriter, record: &str, param: String, value: String| {
            out.row([record.into(), kind.to_string(), out.float(f), spec.k.to_string(), param, value]);
        };
        for (t, &e) in estimates.iter().enumerate() {
            let v = out.float(e);
            row(&mut out, "estimate", t.to_string(), v);
        }
        let s = Summary::of(&estimates);
        let (mean, sd) = (out.float(s.mean), out.float(s.stddev));
        row(&mut out, "mean", String::new(), mean);
        row(&mut out, "stddev", String::new(), sd);
        for delta in DELTA_GRID {
            let tail = estimates.iter().filter(|&&e| (e - f).abs() > delta * f).count();
            let p = out.float(delta);
            row(&mut out, "tail", p, tail.to_string());
        }
        notes.push(format!("{kind}: mean {:.6} stddev {:.6} (f = {f:.6})", s.mean, s.stddev));
    }
    Ok(ExperimentOutput { csv: out.finish(), notes })
}

/// One seed of the paired-character experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdversarialTrial {
    /// Every red pair shares a bin under simple tabulation.
    pub simple_event: bool,
    pub simple_estimate: f64,
    /// The same table condition on the key-character tables of mixed tabulation.
    pub mixed_event: bool,
    pub mixed_estimate: f64,
}

/// Red keys `{0, 1} × [n_red/2]` (first character in `{0, 1}`), blue keys
/// drawn at random among keys whose first character is at least 2.
pub fn adversarial_workload(spec: &ExperimentSpec) -> Result<(Vec<u64>, Vec<u64>)> {
    if spec.c != 2 {
        return Err(Error::params("the paired-character layout needs c = 2"));
    }
    if spec.n_red < 2 || !spec.n_red.is_multiple_of(2) || spec.n_red / 2 > 1 << spec.b {
        return Err(Error::params(format!("n_red = {} must be even and at most 2·2^b", spec.n_red)));
    }
    let sigma = 1u64 << spec.b;
    if spec.b < 2 || spec.n_blue > (sigma - 2) * sigma {
        return Err(Error::params("too many blue keys for the layout"));
    }
    let red: Vec<u64> = (0..spec.n_red / 2)
        .flat_map(|j| [j << spec.b, (j << spec.b) | 1])
        .collect();
    let mut rng = table_rng(spec.seed, TableRole::Workload, 1);
    let mut seen = HashSet::new();
    let mut blue = Vec::with_capacity(spec.n_blue as usize);
    while blue.len() < spec.n_blue as usize {
        let key = (rng.random_range(0..sigma) << spec.b) | rng.random_range(2..sigma);
        if seen.insert(key) {
            blue.push(key);
        }
    }
    Ok((red, blue))
}

pub fn adversarial_trials(spec: &ExperimentSpec) -> Result<Vec<AdversarialTrial>> {
    spec.validate()?;
    let partition = spec.partition()?;
    let (red, blue) = adversarial_workload(spec)?;
    let keys: Vec<u64> = red.iter().chain(&blue).copied().collect();
    let is_red = |x: u64| x & ((1 << spec.b) - 2) == 0;
    let co_binned = |t: &[u64]| partition.split(t[0] ^ t[1]).bin == 0;
    (0..spec.trials)
        .into_par_iter()
        .map(|t| {
            let params = spec.trial_params(t);
            let simple = SimpleTabulation::new(&params.with_d(0))?;
            let mixed = MixedTabulation::new(&params)?;
            Ok(AdversarialTrial {
                simple_event: co_binned(simple.table(0)),
                simple_estimate: estimate_fraction(&keys, is_red, &mut &simple, &partition)?.value,
                mixed_event: co_binned(mixed.outer().table(0)),
                mixed_estimate: estimate_fraction(&keys, is_red, &mut &mixed, &partition)?.value,
            })
        })
        .collect()
}

fn cmd_adversarial_simple(spec: &ExperimentSpec) -> Result<ExperimentOutput> {
    let trials = adversarial_trials(spec)?;
    let f = spec.n_red as f64 / (spec.n_red + spec.n_blue) as f64;
    let mut out = CsvWriter::new(&["trial", "hash_kind", "f", "event", "estimate"]);
    for (t, tr) in trials.iter().enumerate() {
        for (kind, event, est) in [
            (HashKind::Simple, tr.simple_event, tr.simple_estimate),
            (HashKind::Mixed, tr.mixed_event, tr.mixed_estimate),
        ] {
            let (ff, e) = (out.float(f), out.float(est));
            out.row([t.to_string(), kind.to_string(), ff, u8::from(event).to_string(), e]);
        }
    }
    let mut notes = Vec::new();
    for (kind, pick) in [
        (HashKind::Simple, (|t: &AdversarialTrial| (t.simple_event, t.simple_estimate)) as fn(&_) -> _),
        (HashKind::Mixed, |t: &AdversarialTrial| (t.mixed_event, t.mixed_estimate)),
    ] {
        let cond: Vec<f64> = trials.iter().map(pick).filter(|p| p.0).map(|p| p.1).collect();
        let all: Vec<f64> = trials.iter().map(|t| pick(t).1).collect();
        notes.push(format!(
            "{kind}: event rate {:.5} (expected {:.5}), conditional mean {:.5}, overall mean {:.5}, f = {f:.5}",
            cond.len() as f64 / trials.len() as f64,
            1.0 / spec.k as f64,
            Summary::of(&cond).mean,
            Summary::of(&all).mean,
        ));
    }
    Ok(ExperimentOutput { csv: out.finish(), notes })
}

/// HyperLogLog and PCSA estimates of the workload size, one pair per trial.
pub fn distinct_estimates(spec: &ExperimentSpec, kind: HashKind) -> Result<Vec<(f64, f64)>> {
    spec.validate()?;
    let partition = spec.partition()?;
    let keys = spec.workload(spec.n)?;
    (0..spec.trials)
        .into_par_iter()
        .map(|t| {
            let mut h = kind.build(&spec.trial_params(t))?;
            let mut hll = HllRegisters::new(partition);
            let mut pcsa = PcsaBitmaps::new(partition);
            for &x in &keys {
                let v = h.hash_key(x);
                hll.add_hash(v);
                pcsa.add_hash(v);
            }
            Ok((hll.estimate()?, pcsa.estimate()))
        })
        .collect()
}

fn cmd_distinct_accuracy(spec: &ExperimentSpec) -> Result<ExperimentOutput> {
    let mut out = CsvWriter::new(&["algo", "hash_kind", "n", "k", "estimate", "rel_error", "seed"]);
    let mut notes: Vec<String> = constraint_note(spec).into_iter().collect();
    let n = spec.n as f64;
    for &kind in &spec.hashes {
        let estimates = distinct_estimates(spec, kind)?;
        for (t, &(hll, pcsa)) in estimates.iter().enumerate() {
            for (algo, e) in [("hll", hll), ("pcsa", pcsa)] {
                let (ef, rel) = (out.float(e), out.float((e - n) / n));
                out.row([
                    algo.into(),
                    kind.to_string(),
                    spec.n.to_string(),
                    spec.k.to_string(),
                    ef,
                    rel,
                    format!("{:#x}", derive_seed(spec.seed, t as u64)),
                ]);
            }
        }
        for (algo, pick) in [("hll", 0usize), ("pcsa", 1)] {
            let rel: Vec<f64> = estimates
                .iter()
                .map(|e| ([e.0, e.1][pick] - n) / n)
                .collect();
            let s = Summary::of(&rel);
            notes.push(format!("{algo}/{kind}: relative error mean {:.5} stddev {:.5}", s.mean, s.stddev));
        }
    }
    Ok(ExperimentOutput { csv: out.finish(), notes })
}

/// Number of trials in which the inner function with `d` output characters
/// fails to peel the workload, for every `d` in `1..=max_d`.
///
/// The `d`-character map of a trial is a prefix of its `(d+1)`-character map,
/// so failures are nested and the counts are non-increasing in `d`.
pub fn peel_failures(spec: &ExperimentSpec) -> Result<Vec<(u32, u64)>> {
    spec.validate()?;
    let keys = spec.workload(spec.n)?;
    let per_trial: Vec<Vec<bool>> = (0..spec.trials)
        .into_par_iter()
        .map(|t| {
            (1..=spec.d)
                .map(|d| {
                    let h1 = CharTabulation::new(&spec.trial_params(t).with_d(d), TableRole::MixedInner)?;
                    Ok(!is_fully_peelable(&keys, &h1))
                })
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<_>>()?;
    Ok((1..=spec.d)
        .map(|d| (d, per_trial.iter().filter(|f| f[d as usize - 1]).count() as u64))
        .collect())
}

fn cmd_peelability(spec: &ExperimentSpec) -> Result<ExperimentOutput> {
    let mut out = CsvWriter::new(&["d", "n", "sigma", "trials", "failures", "failure_rate"]);
    let sigma = spec.params().derived_alphabet_size();
    let mut notes = Vec::new();
    if spec.n as f64 > sigma as f64 / 2.0 {
        notes.push(format!("warning: {} keys exceed |Σ|/2 = {}", spec.n, sigma / 2));
    }
    for (d, failures) in peel_failures(spec)? {
        let rate = out.float(failures as f64 / spec.trials as f64);
        out.row([
            d.to_string(),
            spec.n.to_string(),
            sigma.to_string(),
            spec.trials.to_string(),
            failures.to_string(),
            rate,
        ]);
    }
    Ok(ExperimentOutput { csv: out.finish(), notes })
}

fn cmd_moments(spec: &ExperimentSpec) -> Result<ExperimentOutput> {
    let p = Dyadic::from_f64(spec.p)?;
    let half_order = u32::try_from(spec.k).map_err(|_| Error::params("moment order too large"))?;
    let mut cfg = MomentExperimentConfig {
        keys: spec.workload(spec.n)?,
        p,
        k: half_order,
        trials: spec.trials,
        query_key: spec.query,
    };
    let mut out = CsvWriter::new(&["m", "p", "k", "c", "hash_kind", "trials", "moment", "bound", "ratio"]);
    let params = spec.params().with_d(0);
    for &kind in &spec.hashes {
        cfg.k = half_order;
        let counts = sample_counts(&cfg, kind, &params)?;
        for k in 1..=half_order {
            let est = central_moment_from_counts(&counts, cfg.mu(), k);
            let (pf, m, b, r) = (out.float(p.value()), out.float(est.moment), out.float(est.bound), out.float(est.ratio));
            out.row([
                cfg.m().to_string(),
                pf,
                k.to_string(),
                spec.c.to_string(),
                kind.to_string(),
                spec.trials.to_string(),
                m,
                b,
                r,
            ]);
        }
    }
    Ok(ExperimentOutput {
        csv: out.finish(),
        notes: Vec::new(),
    })
}

fn cmd_zero_sum(spec: &ExperimentSpec) -> Result<ExperimentOutput> {
    let oracle = DependencyOracle::new(spec.c, spec.b)?;
    let universe = spec.params().universe_size();
    let keys = if spec.n == 0 || spec.n >= universe {
        (0..universe).collect()
    } else {
        spec.workload(spec.n)?
    };
    let report = oracle.count_zero_sum_tuples(&keys, spec.t)?;
    let mut out = CsvWriter::new(&["c", "b", "t", "n", "count", "bound", "within_bound"]);
    out.row([
        spec.c.to_string(),
        spec.b.to_string(),
        spec.t.to_string(),
        keys.len().to_string(),
        report.count.to_string(),
        report.bound.to_string(),
        report.within_bound.to_string(),
    ]);
    Ok(ExperimentOutput {
        csv: out.finish(),
        notes: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(command: Command) -> ExperimentSpec {
        ExperimentSpec {
            trials: 20,
            ..ExperimentSpec::new(command)
        }
    }

    #[test]
    fn command_names_round_trip() {
        for c in Command::ALL {
            assert_eq!(c.name().parse::<Command>().unwrap(), c);
        }
        assert!("nope".parse::<Command>().is_err());
    }

    #[test]
    fn all_red_estimates_one() {
        let spec = ExperimentSpec {
            n_red: 5000,
            n_blue: 0,
            hashes: HashKind::ALL.to_vec(),
            ..small(Command::MinhashConcentration)
        };
        for kind in HashKind::ALL {
            assert!(minhash_estimates(&spec, kind).unwrap().iter().all(|&e| e == 1.0));
        }
    }

    #[test]
    fn byte_identical_reruns() {
        for command in Command::ALL {
            let spec = ExperimentSpec {
                n: 2000,
                n_red: 500,
                n_blue: 1500,
                ..small(command)
            };
            let spec = if command == Command::Peelability {
                ExperimentSpec { n: 100, ..spec }
            } else if command == Command::ZeroSum {
                ExperimentSpec { n: 0, ..spec }
            } else {
                spec
            };
            let a = run(&spec).unwrap();
            assert_eq!(a, run(&spec).unwrap(), "{command}");
            assert!(a.csv.lines().count() >= 2, "{command}");
        }
    }

    #[test]
    fn zero_sum_matches_oracle() {
        let spec = ExperimentSpec::new(Command::ZeroSum);
        let out = run(&spec).unwrap();
        let oracle = DependencyOracle::new(2, 2).unwrap();
        let keys: Vec<u64> = (0..16).collect();
        let report = oracle.count_zero_sum_tuples(&keys, 2).unwrap();
        let row: Vec<&str> = out.csv.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(row[4], report.count.to_string());
        assert_eq!(row[3], "16");
    }

    #[test]
    fn zero_sum_budget_error() {
        let spec = ExperimentSpec {
            b: 8,
            t: 3,
            ..ExperimentSpec::new(Command::ZeroSum)
        };
        assert!(run(&spec).unwrap_err().is_budget());
    }

    #[test]
    fn peel_failures_nested() {
        let spec = ExperimentSpec {
            n: 128,
            trials: 300,
            ..ExperimentSpec::new(Command::Peelability)
        };
        let rates = peel_failures(&spec).unwrap();
        assert_eq!(rates.len(), 6);
        assert!(rates.windows(2).all(|w| w[1].1 <= w[0].1), "{rates:?}");
        assert_eq!(rates[0].1, 300);
    }

    #[test]
    fn adversarial_layout() {
        let spec = small(Command::AdversarialSimple);
        let (red, blue) = adversarial_workload(&spec).unwrap();
        assert_eq!(red, vec![0, 1, 1 << 16, (1 << 16) | 1]);
        assert_eq!(blue.len(), 12);
        assert!(blue.iter().all(|&x| x & 0xffff >= 2));
        let bad = ExperimentSpec { c: 3, ..spec.clone() };
        assert!(adversarial_trials(&bad).is_err());
        let odd = ExperimentSpec { n_red: 3, ..spec };
        assert!(adversarial_trials(&odd).is_err());
    }

    #[test]
    fn workload_shapes() {
        let spec = ExperimentSpec {
            random_keys: true,
            ..ExperimentSpec::new(Command::DistinctAccuracy)
        };
        let keys = spec.workload(1000).unwrap();
        assert_eq!(keys.iter().collect::<HashSet<_>>().len(), 1000);
        assert!(keys.iter().all(|&k| k < 1 << 32));
        let tiny = ExperimentSpec {
            c: 1,
            b: 4,
            ..spec
        };
        assert!(tiny.workload(17).is_err());
        assert_eq!(tiny.workload(16).unwrap().len(), 16);
    }

    #[test]
    fn moments_rows() {
        let spec = ExperimentSpec {
            n: 256,
            trials: 50,
            ..ExperimentSpec::new(Command::Moments)
        };
        let out = run(&spec).unwrap();
        let lines: Vec<&str> = out.csv.lines().collect();
        assert_eq!(lines[0], "m,p,k,c,hash_kind,trials,moment,bound,ratio");
        assert_eq!(lines.len(), 1 + 2 * 2);
        assert!(lines[1].starts_with("256,0.0625,1,2,simple,50,"));
        let bad = ExperimentSpec { p: 0.3, ..spec };
        assert!(matches!(run(&bad), Err(Error::NonDyadic(..))));
    }
}
