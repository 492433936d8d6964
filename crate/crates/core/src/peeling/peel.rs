use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::tabulation::CharTabulation;

/// For every output character `(i, α)`, the keys whose `i`-th derived
/// character is `α`.
#[derive(Debug, Clone)]
pub struct OutputCharIncidence {
    lists: Vec<Vec<Vec<u64>>>,
}

impl OutputCharIncidence {
    pub fn build(keys: &[u64], h1: &CharTabulation) -> Self {
        let mut lists = vec![vec![Vec::new(); h1.out_alphabet_size()]; h1.out_chars() as usize];
        for &key in keys {
            for (i, ch) in h1.output_chars(key).enumerate() {
                lists[i][ch as usize].push(key);
            }
        }
        OutputCharIncidence { lists }
    }

    pub fn keys_with(&self, position: u32, value: u64) -> &[u64] {
        &self.lists[position as usize][value as usize]
    }

    /// Output characters hit by exactly one key.
    pub fn unique_chars(&self) -> usize {
        self.lists.iter().flatten().filter(|l| l.len() == 1).count()
    }
}

/// Keys in the order they were peeled, and the residual core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelResult {
    pub peel_order: Vec<u64>,
    pub core: Vec<u64>,
}

impl PeelResult {
    pub fn is_fully_peeled(&self) -> bool {
        self.core.is_empty()
    }

    /// Core sorted, for comparing runs that peel in different orders.
    pub fn sorted_core(&self) -> Vec<u64> {
        let mut c = self.core.clone();
        c.sort_unstable();
        c
    }
}

/// Cell-count state shared by the peelers: `counts[i·m + α]` is the number
/// of live keys whose `i`-th character is `α`.
struct PeelState {
    d: usize,
    m: usize,
    chars: Vec<usize>,
    counts: Vec<u32>,
    alive: Vec<bool>,
}

impl PeelState {
    fn new(keys: &[u64], h1: &CharTabulation) -> Self {
        let d = h1.out_chars() as usize;
        let m = h1.out_alphabet_size();
        let mut chars = Vec::with_capacity(keys.len() * d);
        let mut counts = vec![0u32; d * m];
        for &key in keys {
            for (i, ch) in h1.output_chars(key).enumerate() {
                let cell = i * m + ch as usize;
                chars.push(cell);
                counts[cell] += 1;
            }
        }
        PeelState {
            d,
            m,
            chars,
            counts,
            alive: vec![true; keys.len()],
        }
    }

    fn cells(&self, key_idx: usize) -> &[usize] {
        &self.chars[key_idx * self.d..(key_idx + 1) * self.d]
    }

    fn has_unique(&self, key_idx: usize) -> bool {
        self.cells(key_idx).iter().any(|&c| self.counts[c] == 1)
    }

    fn remove(&mut self, key_idx: usize) {
        self.alive[key_idx] = false;
        for j in 0..self.d {
            let c = self.chars[key_idx * self.d + j];
            self.counts[c] -= 1;
        }
    }

    fn finish(self, keys: &[u64], order: Vec<usize>) -> PeelResult {
        PeelResult {
            peel_order: order.into_iter().map(|i| keys[i]).collect(),
            core: keys
                .iter()
                .zip(&self.alive)
                .filter(|(_, &a)| a)
                .map(|(&k, _)| k)
                .collect(),
        }
    }
}

/// Repeatedly removes a key owning an output character no other remaining
/// key shares. The core (what is left) does not depend on removal order.
pub fn peel(keys: &[u64], h1: &CharTabulation) -> PeelResult {
    let mut state = PeelState::new(keys, h1);
    // XOR of live key indices per cell: with count 1 it names the sole owner
    let mut owner = vec![0usize; state.d * state.m];
    for idx in 0..keys.len() {
        for &c in state.cells(idx) {
            owner[c] ^= idx;
        }
    }
    let mut queue: Vec<usize> = (0..state.counts.len()).filter(|&c| state.counts[c] == 1).collect();
    let mut order = Vec::with_capacity(keys.len());
    let mut head = 0;
    while head < queue.len() {
        let cell = queue[head];
        head += 1;
        if state.counts[cell] != 1 {
            continue;
        }
        let idx = owner[cell];
        order.push(idx);
        state.remove(idx);
        for j in 0..state.d {
            let c = state.chars[idx * state.d + j];
            owner[c] ^= idx;
            if state.counts[c] == 1 {
                queue.push(c);
            }
        }
    }
    state.finish(keys, order)
}

/// Peels in passes over a key order shuffled by `seed`, removing each key
/// that currently owns a unique character. Produces the same core as [`peel`].
pub fn peel_shuffled(keys: &[u64], h1: &CharTabulation, seed: u64) -> PeelResult {
    let mut state = PeelState::new(keys, h1);
    let mut schedule: Vec<usize> = (0..keys.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order = Vec::new();
    loop {
        schedule.shuffle(&mut rng);
        let before = order.len();
        for &idx in &schedule {
            if state.alive[idx] && state.has_unique(idx) {
                state.remove(idx);
                order.push(idx);
            }
        }
        if order.len() == before {
            break;
        }
    }
    state.finish(keys, order)
}

/// Round-synchronous peeling: each round finds every peelable key in
/// parallel and removes them together. Deterministic; same core as [`peel`].
pub fn peel_parallel(keys: &[u64], h1: &CharTabulation) -> PeelResult {
    let mut state = PeelState::new(keys, h1);
    let mut order = Vec::new();
    loop {
        let round: Vec<usize> = (0..keys.len())
            .into_par_iter()
            .filter(|&i| state.alive[i] && state.has_unique(i))
            .collect();
        if round.is_empty() {
            break;
        }
        for &i in &round {
            state.remove(i);
        }
        order.extend(round);
    }
    state.finish(keys, order)
}

/// True when every subset of `keys` contains a key with a unique output
/// character, i.e. the peeling core is empty.
pub fn is_fully_peelable(keys: &[u64], h1: &CharTabulation) -> bool {
    peel(keys, h1).is_fully_peeled()
}
