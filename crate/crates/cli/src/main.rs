use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tabhash::experiment::{run, Command, ExperimentSpec};
use tabhash::tabulation::{format_vectors, parse_vectors, TestVector};
use tabhash::{Error, HashKind, MinHashSketch, PartitionParams, TabulationParams};

/// Tabulation hashing experiments. Every command is deterministic given
/// its flags and writes CSV with a header row.
#[derive(Parser, Debug)]
#[command(name = "tabhash", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// MinHash estimates of the red fraction (n-red red keys among n-red + n-blue)
    MinhashConcentration(ExpArgs),
    /// Paired-character red keys under simple and mixed tabulation
    AdversarialSimple(ExpArgs),
    /// HyperLogLog and PCSA relative errors on n keys
    DistinctAccuracy(ExpArgs),
    /// Peeling failure rate of the derived-character map for d = 1..=d
    Peelability(ExpArgs),
    /// Central moments of a sum of n hashed indicators (k = half-order)
    Moments(ExpArgs),
    /// Exhaustive count of zero-sum 2t-tuples
    ZeroSum(ExpArgs),
    /// Emit or check hash test vectors
    Vectors(VectorArgs),
    /// Print the MinHash sketch of keys 0..n
    Sketch(SketchArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KeyLayout {
    Consecutive,
    Random,
}

#[derive(Args, Debug)]
struct ExpArgs {
    /// Hash families, comma separated: simple, double, mixed, random
    #[arg(long, value_delimiter = ',', value_parser = parse_kind)]
    hash: Vec<HashKind>,
    #[arg(long)]
    c: Option<u32>,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    n_red: Option<u64>,
    #[arg(long)]
    n_blue: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, value_parser = parse_u64)]
    seed: Option<u64>,
    /// Per-key probability for `moments`; must be a dyadic rational
    #[arg(long)]
    p: Option<f64>,
    /// Tuple half-size for `zero-sum`
    #[arg(long)]
    t: Option<u32>,
    /// Query key for `moments`
    #[arg(long, value_parser = parse_u64)]
    query: Option<u64>,
    #[arg(long, value_enum)]
    keys: Option<KeyLayout>,
    /// Output file; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VectorArgs {
    #[arg(long, default_value_t = 4)]
    c: u32,
    #[arg(long, default_value_t = 8)]
    b: u32,
    #[arg(long, default_value_t = 0)]
    d: u32,
    #[arg(long, default_value_t = 32)]
    r: u32,
    #[arg(long, default_value_t = 1, value_parser = parse_u64)]
    seed: u64,
    /// Emit vectors for keys 0..n
    #[arg(long, default_value_t = 8)]
    n: u64,
    /// Check the vectors in this file instead of emitting
    #[arg(long)]
    verify: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SketchArgs {
    #[arg(long, default_value = "mixed", value_parser = parse_kind)]
    hash: HashKind,
    #[arg(long, default_value_t = 2)]
    c: u32,
    #[arg(long, default_value_t = 16)]
    b: u32,
    #[arg(long, default_value_t = 4)]
    d: u32,
    #[arg(long, default_value_t = 64)]
    r: u32,
    #[arg(long, default_value_t = 16)]
    k: u64,
    #[arg(long, default_value_t = 1000)]
    n: u64,
    #[arg(long, default_value_t = 1, value_parser = parse_u64)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_u64(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| e.to_string())
}

fn parse_kind(s: &str) -> Result<HashKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl ExpArgs {
    fn into_spec(self, command: Command) -> (ExperimentSpec, Option<PathBuf>) {
        let mut spec = ExperimentSpec::new(command);
        if !self.hash.is_empty() {
            spec.hashes = self.hash;
        }
        macro_rules! set {
            ($($field:ident),*) => {$(
                if let Some(v) = self.$field {
                    spec.$field = v;
                }
            )*};
        }
        set!(c, b, d, r, k, n, n_red, n_blue, trials, seed, p, t);
        if self.query.is_some() {
            spec.query = self.query;
        }
        if let Some(layout) = self.keys {
            spec.random_keys = matches!(layout, KeyLayout::Random);
        }
        (spec, self.out)
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

enum Failure {
    Spec(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Spec(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn vectors(args: VectorArgs) -> Result<(), Failure> {
    if let Some(path) = args.verify {
        let text = fs::read_to_string(path)?;
        let parsed = parse_vectors(&text)?;
        let mut bad = 0;
        for v in &parsed {
            if !v.verify()? {
                bad += 1;
                eprintln!("mismatch: key {:#x} expected {:#x}", v.key, v.hash);
            }
        }
        eprintln!("{} vectors, {bad} mismatches", parsed.len());
        return if bad == 0 {
            Ok(())
        } else {
            Err(Failure::Spec(Error::Decode(format!("{bad} vectors do not match"))))
        };
    }
    let params = TabulationParams::new(args.c, args.b, args.d, args.r, args.seed);
    let keys: Vec<u64> = (0..args.n).collect();
    let text = format_vectors(&TestVector::compute(&params, &keys)?)?;
    emit(args.out.as_ref(), &text)?;
    Ok(())
}

fn sketch(args: SketchArgs) -> Result<(), Failure> {
    let params = TabulationParams::new(args.c, args.b, args.d, args.r, args.seed);
    let partition = PartitionParams::new(args.k, args.r)?;
    let mut h = args.hash.build(&params)?;
    let s = MinHashSketch::build(0..args.n, &mut h, &partition)?;
    emit(args.out.as_ref(), &s.to_text())?;
    Ok(())
}

fn experiment(command: Command, args: ExpArgs) -> Result<(), Failure> {
    let (spec, out) = args.into_spec(command);
    let result = run(&spec)?;
    for note in &result.notes {
        eprintln!("{note}");
    }
    emit(out.as_ref(), &result.csv)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Cmd::MinhashConcentration(a) => experiment(Command::MinhashConcentration, a),
        Cmd::AdversarialSimple(a) => experiment(Command::AdversarialSimple, a),
        Cmd::DistinctAccuracy(a) => experiment(Command::DistinctAccuracy, a),
        Cmd::Peelability(a) => experiment(Command::Peelability, a),
        Cmd::Moments(a) => experiment(Command::Moments, a),
        Cmd::ZeroSum(a) => experiment(Command::ZeroSum, a),
        Cmd::Vectors(a) => vectors(a),
        Cmd::Sketch(a) => sketch(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Spec(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 3 } else { 2 })
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
