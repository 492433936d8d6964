use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tabhash::{DoubleTabulation, FullyRandom, KeyHasher, MixedTabulation, SimpleTabulation, TabulationParams};

const BATCH: usize = 4096;

fn keys(bits: u32) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xbe7c);
    (0..BATCH).map(|_| rng.random::<u64>() >> (64 - bits)).collect()
}

fn hash_families(c: &mut Criterion) {
    for (cc, b, r) in [(4u32, 8u32, 32u32), (2, 16, 64)] {
        let label = format!("c{cc}_b{b}");
        let input = keys(cc * b);
        let mut g = c.benchmark_group(format!("hash/{label}"));
        g.throughput(Throughput::Elements(BATCH as u64));

        let simple = SimpleTabulation::new(&TabulationParams::simple(cc, b, r, 1)).unwrap();
        g.bench_function("simple", |bench| {
            bench.iter(|| input.iter().fold(0, |acc, &k| acc ^ simple.hash(black_box(k))))
        });

        for d in [2u32, 4] {
            let mixed = MixedTabulation::new(&TabulationParams::new(cc, b, d, r, 1)).unwrap();
            g.bench_with_input(BenchmarkId::new("mixed", d), &d, |bench, _| {
                bench.iter(|| input.iter().fold(0, |acc, &k| acc ^ mixed.hash(black_box(k))))
            });
            g.bench_with_input(BenchmarkId::new("mixed_unfused", d), &d, |bench, _| {
                bench.iter(|| input.iter().fold(0, |acc, &k| acc ^ mixed.hash_definitional(black_box(k))))
            });
            let double = DoubleTabulation::new(&TabulationParams::new(cc, b, d, r, 1)).unwrap();
            g.bench_with_input(BenchmarkId::new("double", d), &d, |bench, _| {
                bench.iter(|| input.iter().fold(0, |acc, &k| acc ^ double.hash(black_box(k))))
            });
        }

        g.bench_function("fully_random_fresh", |bench| {
            bench.iter(|| {
                let mut h = FullyRandom::with_capacity(r, 1, BATCH).unwrap();
                input.iter().fold(0, |acc, &k| acc ^ h.hash_key(black_box(k)))
            })
        });
        g.finish();
    }
}

fn table_generation(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    g.sample_size(20);
    for (cc, b) in [(4u32, 8u32), (2, 16)] {
        g.bench_function(format!("mixed_c{cc}_b{b}_d4"), |bench| {
            let mut seed = 0;
            bench.iter(|| {
                seed += 1;
                MixedTabulation::new(&TabulationParams::new(cc, b, 4, 64, seed)).unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, hash_families, table_generation);
criterion_main!(benches);
