use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CorpusEntry, DEFAULT_WINDOW};
use crate::basis::{self, DEFAULT_ORDER_CAP};
use crate::intset::{EventuallyPeriodicSet, FiniteIntSet};

pub const MAX_MODULUS: u64 = 12;
pub const MAX_THRESHOLD: i64 = 30;
pub const MAX_EXCEPTIONAL: usize = 4;
pub const MAX_REMOVED: usize = 4;
/// Bases with a larger order are redrawn.
pub const MAX_BASIS_ORDER: u64 = 8;

/// A random canonical set: modulus in `1..=max_modulus`, a nonempty residue
/// set, threshold in `0..=max_threshold` and up to `max_exceptional`
/// exceptional elements in `[-2, threshold)`.
pub fn random_set<R: Rng>(
    rng: &mut R,
    max_modulus: u64,
    max_threshold: i64,
    max_exceptional: usize,
) -> EventuallyPeriodicSet {
    let g = rng.random_range(1..=max_modulus);
    let count = rng.random_range(1..=g as usize);
    let residues: Vec<u64> = sample(rng, g as usize, count)
        .iter()
        .map(|r| r as u64)
        .collect();
    let threshold = rng.random_range(0..=max_threshold);
    let n_exc = rng.random_range(0..=max_exceptional);
    let exceptional: Vec<i64> = (0..n_exc)
        .map(|_| rng.random_range(-2..threshold))
        .collect();
    EventuallyPeriodicSet::new(exceptional, threshold, g, residues)
        .expect("all exceptionals lie below threshold")
}

/// A random nonempty finite set of at most `max_len` elements drawn from `a`
/// near its start.
pub fn random_removal<R: Rng>(
    rng: &mut R,
    a: &EventuallyPeriodicSet,
    max_len: usize,
) -> FiniteIntSet {
    let lo = a.min().expect("nonempty set");
    let hi = a.threshold() + 2 * a.modulus() as i64;
    let pool: Vec<i64> = a
        .enumerate_window(lo, hi)
        .expect("lo <= hi")
        .iter()
        .collect();
    let len = rng.random_range(1..=max_len.min(pool.len()));
    sample(rng, pool.len(), len)
        .iter()
        .map(|i| pool[i])
        .collect()
}

/// `count` random entries whose bases have order at most [`MAX_BASIS_ORDER`].
/// `A \ X` is not required to be a basis; such entries are reported as skips.
pub fn generate_corpus(seed: u64, count: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let basis = loop {
                let a = random_set(&mut rng, MAX_MODULUS, MAX_THRESHOLD, MAX_EXCEPTIONAL);
                if basis::order(&a, MAX_BASIS_ORDER).is_ok() {
                    break a;
                }
            };
            let remove = random_removal(&mut rng, &basis, MAX_REMOVED);
            CorpusEntry {
                name: format!("gen-{seed}-{i:03}"),
                ap_flag: remove.is_arithmetic_progression(),
                basis,
                remove,
                order_cap: DEFAULT_ORDER_CAP,
                window: DEFAULT_WINDOW,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_corpus() {
        assert_eq!(generate_corpus(7, 5), generate_corpus(7, 5));
        assert_ne!(generate_corpus(7, 5), generate_corpus(8, 5));
    }

    #[test]
    fn generated_entries_are_valid() {
        for e in generate_corpus(3, 20) {
            assert!(e.basis.modulus() <= MAX_MODULUS);
            assert!(!e.remove.is_empty() && e.remove.len() <= MAX_REMOVED);
            assert!(e.remove.iter().all(|x| e.basis.contains(x)));
            assert!(basis::order(&e.basis, MAX_BASIS_ORDER).is_ok());
        }
    }
}
