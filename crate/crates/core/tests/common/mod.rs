//! Brute-force oracles over finite windows, written without the engine's
//! sumset, order or parameter code. Only `contains` is trusted.

#![allow(dead_code)]

use addbasis_core::EventuallyPeriodicSet;

/// Lowest point scanned when looking for the least element.
pub const FLOOR: i64 = -1000;

pub fn members(a: &EventuallyPeriodicSet, lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).filter(|&x| a.contains(x)).collect()
}

pub fn least(a: &EventuallyPeriodicSet) -> Option<i64> {
    (FLOOR..=FLOOR + 4000).find(|&x| a.contains(x))
}

/// Fixed-range bitset over `[base, base + 64·words)`.
#[derive(Clone)]
struct Bits {
    base: i64,
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    fn new(base: i64, top: i64) -> Self {
        let len = (top - base + 1) as usize;
        Bits {
            base,
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn set(&mut self, x: i64) {
        let i = (x - self.base) as usize;
        if i < self.len {
            self.words[i / 64] |= 1 << (i % 64);
        }
    }

    fn get(&self, x: i64) -> bool {
        let i = x - self.base;
        i >= 0 && (i as usize) < self.len && self.words[i as usize / 64] >> (i % 64) & 1 == 1
    }

    /// `self ∪ (other + t)` restricted to the range.
    fn or_shifted(&mut self, other: &Bits, t: i64) {
        let n = self.words.len() as i64;
        let (word, bit) = (t.div_euclid(64), t.rem_euclid(64) as u32);
        for j in 0..n {
            let src = j - word;
            let mut w = 0u64;
            if (0..n).contains(&src) {
                w |= other.words[src as usize] << bit;
            }
            if bit > 0 && (0..n).contains(&(src - 1)) {
                w |= other.words[(src - 1) as usize] >> (64 - bit);
            }
            self.words[j as usize] |= w;
        }
        let extra = self.words.len() * 64 - self.len;
        if extra > 0 {
            let last = self.words.len() - 1;
            self.words[last] &= u64::MAX >> extra;
        }
    }
}

/// Least `h <= max_h` such that the `h`-fold sums of `a` cover the upper half
/// of `[0, window]`, computed with sliding bitsets.
pub fn order_oracle(a: &EventuallyPeriodicSet, max_h: u64, window: i64) -> Option<u64> {
    let m = least(a)?;
    let headroom = max_h as i64 * m.min(0).abs();
    let top = window + headroom;
    let base = m.min(max_h as i64 * m);
    let elems = members(a, m, top);
    let mut one = Bits::new(base, top);
    for &x in &elems {
        one.set(x);
    }
    let mut current = one.clone();
    for h in 1..=max_h {
        if (window / 2..=window).all(|x| current.get(x)) {
            return Some(h);
        }
        let mut next = Bits::new(base, top);
        for &x in &elems {
            next.or_shifted(&current, x);
        }
        current = next;
    }
    None
}

/// Pairwise sums of the members of `a` and `b`, restricted to `[lo, hi]`,
/// where `lo = min a + min b`.
pub fn sumset_window(a: &EventuallyPeriodicSet, b: &EventuallyPeriodicSet, hi: i64) -> Vec<i64> {
    let (ma, mb) = (least(a).expect("nonempty"), least(b).expect("nonempty"));
    let xs = members(a, ma, hi - mb);
    let ys = members(b, mb, hi - ma);
    let mut out: Vec<i64> = xs
        .iter()
        .flat_map(|x| ys.iter().map(move |y| x + y))
        .filter(|&s| s <= hi)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// A window large enough for the order oracle on sets with the given shape.
pub fn oracle_window(a: &EventuallyPeriodicSet, max_h: u64) -> i64 {
    let span = a.threshold().abs() + a.modulus() as i64 + least(a).unwrap_or(0).abs();
    512.max(8 * max_h as i64 * span)
}
