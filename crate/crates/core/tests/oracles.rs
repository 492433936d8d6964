//! Independent reference implementations checked against the library.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tabhash::rng::TableRole;
use tabhash::{
    CharTabulation, DependencyOracle, DoubleTabulation, HashGraph, Independence, MixedTabulation, PositionSet,
    SimpleTabulation, TabulationParams,
};

fn chars(key: u64, count: u32, bits: u32) -> Vec<usize> {
    (0..count).map(|i| ((key >> (i * bits)) & ((1 << bits) - 1)) as usize).collect()
}

/// Table-by-table evaluation from the public tables.
fn simple_reference(h: &SimpleTabulation, key: u64) -> u64 {
    let mut shift = 0;
    let mut acc = 0;
    for (i, &w) in h.char_bits().iter().enumerate() {
        acc ^= h.table(i)[((key >> shift) & ((1 << w) - 1)) as usize];
        shift += w;
    }
    acc
}

#[test]
fn double_tabulation_matches_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (c, b, d, w) in [(2, 16, 4, 16), (4, 8, 5, 8), (3, 8, 2, 12)] {
        let params = TabulationParams::new(c, b, d, 64, rng.random()).with_derived_bits(w);
        let h = DoubleTabulation::new(&params).unwrap();
        let inner = h.inner().inner();
        for _ in 0..10_000 {
            let key = rng.random::<u64>() & params.key_mask();
            let derived = simple_reference(inner, key);
            let want = simple_reference(h.outer(), derived);
            assert_eq!(h.hash(key), want);
            let parts = chars(derived, d, w);
            let joined = parts
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &ch)| acc ^ h.outer().table(i)[ch]);
            assert_eq!(joined, want);
        }
    }
}

#[test]
fn mixed_tabulation_matches_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (c, b, d) in [(2, 16, 4), (4, 8, 4), (1, 12, 3)] {
        let params = TabulationParams::new(c, b, d, 64, rng.random());
        let h = MixedTabulation::new(&params).unwrap();
        for _ in 0..10_000 {
            let key = rng.random::<u64>() & params.key_mask();
            let derived = simple_reference(h.inner().inner(), key);
            let mut want = 0;
            for (i, ch) in chars(key, c, b).into_iter().enumerate() {
                want ^= h.outer().table(i)[ch];
            }
            for (j, ch) in chars(derived, d, b).into_iter().enumerate() {
                want ^= h.outer().table(c as usize + j)[ch];
            }
            assert_eq!(h.hash(key), want);
        }
    }
}

#[test]
fn mixed_output_bits_are_balanced_across_seeds() {
    let seeds = 10_000u64;
    let keys = [0u64, 1, 0xffff_ffff, 0x1234_5678];
    let mut ones = vec![[0u64; 32]; keys.len()];
    for seed in 0..seeds {
        let h = MixedTabulation::new(&TabulationParams::new(4, 8, 4, 32, seed)).unwrap();
        for (counts, &k) in ones.iter_mut().zip(&keys) {
            let v = h.hash(k);
            for (bit, c) in counts.iter_mut().enumerate() {
                *c += (v >> bit) & 1;
            }
        }
    }
    let sigma = (seeds as f64 * 0.25).sqrt();
    for counts in &ones {
        for &c in counts {
            assert!((c as f64 - seeds as f64 / 2.0).abs() <= 5.0 * sigma, "{c}");
        }
    }
}

/// Union-find recount of components and cycles.
fn union_find_census(edges: &[Vec<usize>], nodes: usize) -> (usize, usize) {
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut parent: Vec<usize> = (0..nodes).collect();
    let mut cyclic_roots = Vec::new();
    for e in edges {
        for &v in &e[1..] {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, v));
            if a == b {
                cyclic_roots.push(e[0]);
            } else {
                parent[a] = b;
            }
        }
    }
    let mut roots: Vec<usize> = (0..nodes).map(|v| find(&mut parent, v)).collect();
    roots.sort_unstable();
    roots.dedup();
    let mut cyclic: Vec<usize> = cyclic_roots.into_iter().map(|v| find(&mut parent, v)).collect();
    cyclic.sort_unstable();
    cyclic.dedup();
    (roots.len(), cyclic.len())
}

#[test]
fn hash_graph_census_matches_union_find() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..40 {
        let d = 2 + trial % 3;
        let params = TabulationParams::new(2, 8, d, 64, trial as u64).with_derived_bits(6);
        let h1 = CharTabulation::new(&params, TableRole::MixedInner).unwrap();
        let n = rng.random_range(5..80);
        let keys: Vec<u64> = (0..n).map(|_| rng.random::<u16>() as u64).collect();
        let g = HashGraph::from_char_map(&keys, &h1).unwrap();
        let edges: Vec<Vec<usize>> = (0..g.edge_count()).map(|e| g.endpoints(e).to_vec()).collect();
        let (components, cyclic) = union_find_census(&edges, g.node_count());
        let comps = g.components();
        assert_eq!(comps.len(), components);
        assert_eq!(comps.iter().filter(|c| !c.is_tree).count(), cyclic);
        assert_eq!(comps.iter().map(|c| c.nodes).sum::<usize>(), g.node_count());
        assert_eq!(comps.iter().map(|c| c.edges.len()).sum::<usize>(), keys.len());
        assert_eq!(g.has_cycle(), cyclic > 0);
    }
}

fn subset_is_zero_sum(params: &TabulationParams, keys: &[u64], subset: &[usize]) -> bool {
    subset
        .iter()
        .fold(PositionSet::new(), |acc, &i| acc.symmetric_difference(&PositionSet::of_key(params, keys[i])))
        .is_empty()
}

#[test]
fn independence_verdicts_hold_under_hashing() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let oracle = DependencyOracle::new(2, 2).unwrap();
    let layout = TabulationParams::simple(2, 2, 16, 0);
    let mut seen = [0usize; 2];
    for _ in 0..300 {
        let n = rng.random_range(2..=7);
        let mut keys: Vec<u64> = Vec::new();
        while keys.len() < n {
            let k = rng.random_range(0..16);
            if !keys.contains(&k) {
                keys.push(k);
            }
        }
        let subsets: Vec<Vec<usize>> = (1u32..1 << n)
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
            .collect();
        let tables: Vec<SimpleTabulation> = (0..64)
            .map(|s| SimpleTabulation::new(&layout.with_seed(s)).unwrap())
            .collect();
        let xor_is_zero = |h: &SimpleTabulation, s: &[usize]| s.iter().fold(0, |a, &i| a ^ h.hash(keys[i])) == 0;
        match oracle.is_independent(&keys).unwrap() {
            Independence::Independent => {
                seen[0] += 1;
                for s in &subsets {
                    assert!(tables.iter().any(|h| !xor_is_zero(h, s)), "{keys:?} {s:?}");
                }
            }
            Independence::Dependent { witness } => {
                seen[1] += 1;
                assert!(tables.iter().all(|h| xor_is_zero(h, &witness)));
                let smallest = subsets
                    .iter()
                    .filter(|s| subset_is_zero_sum(&layout, &keys, s))
                    .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
                    .expect("a zero-sum subset exists");
                assert_eq!(&witness, smallest);
            }
        }
    }
    assert!(seen[0] > 20 && seen[1] > 20, "{seen:?}");
}

#[test]
fn delta_matches_direct_enumeration_and_four_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (c, b) in [(2u32, 2u32), (2, 3), (3, 2)] {
        let oracle = DependencyOracle::new(c, b).unwrap();
        let layout = TabulationParams::simple(c, b, 16, 0);
        let universe = 1u64 << (c * b);
        for _ in 0..10 {
            let keys: Vec<u64> = (0..universe).filter(|_| rng.random_bool(0.5)).collect();
            let sets: Vec<PositionSet> = keys.iter().map(|&k| PositionSet::of_key(&layout, k)).collect();
            let mut total = 0;
            for y in 0..universe {
                let py = PositionSet::of_key(&layout, y);
                let mut direct = 0u64;
                for a in &sets {
                    let pa = py.symmetric_difference(a);
                    for bb in &sets {
                        let pb = pa.symmetric_difference(bb);
                        direct += sets.iter().filter(|cc| pb.symmetric_difference(cc).is_empty()).count() as u64;
                    }
                }
                let delta = oracle.delta(y, &keys).unwrap();
                assert_eq!(delta, direct);
                if keys.contains(&y) {
                    total += delta;
                }
            }
            assert_eq!(total, oracle.count_zero_sum_tuples(&keys, 2).unwrap().count);
        }
    }
}
