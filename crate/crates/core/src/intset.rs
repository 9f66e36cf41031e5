//! Exact arithmetic on eventually periodic sets of integers.
//!
//! A set is stored as a finite list of exceptional elements sitting strictly
//! below a threshold `T`, plus a periodic rule that governs every `x >= T`:
//!
//! ```text
//! S = exceptional ∪ { x >= T : x mod g ∈ R }
//! ```
//!
//! This class is closed under translation, union, removal of finitely many
//! points and sumsets, and every value is kept in a unique canonical form
//! (minimal period, then minimal threshold), so structural equality is set
//! equality.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least non-negative residue of `x` modulo `g`.
#[inline]
pub(crate) fn residue(x: i64, g: u64) -> usize {
    x.rem_euclid(g as i64) as usize
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// A sorted, duplicate-free finite set of integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct FiniteIntSet(Vec<i64>);

impl From<Vec<i64>> for FiniteIntSet {
    fn from(mut v: Vec<i64>) -> Self {
        v.sort_unstable();
        v.dedup();
        FiniteIntSet(v)
    }
}

impl From<FiniteIntSet> for Vec<i64> {
    fn from(s: FiniteIntSet) -> Self {
        s.0
    }
}

impl FromIterator<i64> for FiniteIntSet {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        iter.into_iter().collect::<Vec<_>>().into()
    }
}

impl<const N: usize> From<[i64; N]> for FiniteIntSet {
    fn from(a: [i64; N]) -> Self {
        a.to_vec().into()
    }
}

impl FiniteIntSet {
    pub fn new(elements: impl IntoIterator<Item = i64>) -> Self {
        elements.into_iter().collect()
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min(&self) -> Option<i64> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.0.last().copied()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// `max(X) - min(X)`.
    pub fn diameter(&self) -> Result<u64> {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => Ok((hi - lo) as u64),
            _ => Err(Error::EmptySet),
        }
    }

    /// Gcd of all pairwise differences, with `δ = 1` for singletons.
    pub fn delta(&self) -> Result<u64> {
        let lo = self.min().ok_or(Error::EmptySet)?;
        let g = self.0.iter().fold(0u64, |g, &x| g.gcd(&((x - lo) as u64)));
        Ok(if g == 0 { 1 } else { g })
    }

    /// True when consecutive elements are equally spaced. Singletons count.
    pub fn is_arithmetic_progression(&self) -> bool {
        match self.0.len() {
            0 => false,
            1 | 2 => true,
            _ => {
                let step = self.0[1] - self.0[0];
                self.0.windows(2).all(|w| w[1] - w[0] == step)
            }
        }
    }

    pub fn translate(&self, t: i64) -> Self {
        FiniteIntSet(self.0.iter().map(|&x| x + t).collect())
    }

    pub fn sumset(&self, other: &Self) -> Self {
        self.0
            .iter()
            .flat_map(|&a| other.0.iter().map(move |&b| a + b))
            .collect()
    }

    /// Sums of exactly `n` elements; `0·X = {0}`.
    pub fn nfold(&self, n: u32) -> Self {
        let mut acc = FiniteIntSet(vec![0]);
        for _ in 0..n {
            acc = acc.sumset(self);
        }
        acc
    }
}

impl fmt::Display for FiniteIntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// On-disk literal for [`EventuallyPeriodicSet`]. Canonicalized on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetLiteral {
    #[serde(default)]
    pub exceptional: Vec<i64>,
    pub threshold: i64,
    pub modulus: u64,
    pub residues: Vec<u64>,
}

/// `exceptional ∪ { x >= threshold : x mod modulus ∈ residues }`, canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SetLiteral", into = "SetLiteral")]
pub struct EventuallyPeriodicSet {
    exceptional: Vec<i64>,
    threshold: i64,
    modulus: u64,
    pattern: Vec<bool>,
}

impl TryFrom<SetLiteral> for EventuallyPeriodicSet {
    type Error = Error;

    fn try_from(lit: SetLiteral) -> Result<Self> {
        Self::new(lit.exceptional, lit.threshold, lit.modulus, lit.residues)
    }
}

impl From<EventuallyPeriodicSet> for SetLiteral {
    fn from(s: EventuallyPeriodicSet) -> Self {
        SetLiteral {
            residues: s.residues(),
            exceptional: s.exceptional,
            threshold: s.threshold,
            modulus: s.modulus,
        }
    }
}

impl From<&FiniteIntSet> for EventuallyPeriodicSet {
    fn from(x: &FiniteIntSet) -> Self {
        Self::canonicalize(x.0.clone(), x.max().map_or(0, |m| m + 1), 1, vec![false])
    }
}

impl EventuallyPeriodicSet {
    /// Builds the canonical form of the described set.
    ///
    /// Exceptional elements at or above `threshold` are absorbed when the
    /// periodic rule already contains them and rejected otherwise.
    pub fn new(
        exceptional: impl IntoIterator<Item = i64>,
        threshold: i64,
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
    ) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus);
        }
        let mut pattern = vec![false; modulus as usize];
        for r in residues {
            if r >= modulus {
                return Err(Error::ResidueOutOfRange {
                    residue: r,
                    modulus,
                });
            }
            pattern[r as usize] = true;
        }
        let mut below = Vec::new();
        for x in exceptional {
            if x < threshold {
                below.push(x);
            } else if !pattern[residue(x, modulus)] {
                return Err(Error::HoleAboveThreshold { element: x });
            }
        }
        below.sort_unstable();
        below.dedup();
        Ok(Self::canonicalize(below, threshold, modulus, pattern))
    }

    pub fn empty() -> Self {
        Self::canonicalize(Vec::new(), 0, 1, vec![false])
    }

    /// The natural numbers `{0, 1, 2, ...}`.
    pub fn naturals() -> Self {
        Self::canonicalize(Vec::new(), 0, 1, vec![true])
    }

    /// `{x >= start : x ≡ start (mod step)}`.
    pub fn progression(start: i64, step: u64) -> Result<Self> {
        if step == 0 {
            return Err(Error::InvalidModulus);
        }
        Self::new([], start, step, [residue(start, step) as u64])
    }

    /// `exceptional` must be sorted, duplicate-free and entirely below
    /// `threshold`; `pattern` has length `modulus`.
    fn canonicalize(
        mut exceptional: Vec<i64>,
        threshold: i64,
        modulus: u64,
        pattern: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(pattern.len() as u64, modulus);
        debug_assert!(exceptional.last().is_none_or(|&x| x < threshold));
        if !pattern.iter().any(|&b| b) {
            let threshold = exceptional.last().map_or(0, |&m| m + 1);
            return EventuallyPeriodicSet {
                exceptional,
                threshold,
                modulus: 1,
                pattern: vec![false],
            };
        }

        let (modulus, pattern) = divisors(modulus)
            .into_iter()
            .find(|&d| (0..pattern.len()).all(|r| pattern[r] == pattern[r % d as usize]))
            .map(|d| (d, pattern[..d as usize].to_vec()))
            .expect("the modulus divides itself");

        // Fold the threshold down one point at a time. Terminates because some
        // periodic class eventually has no listed element below min(exceptional).
        let mut threshold = threshold;
        loop {
            let x = threshold - 1;
            let listed = exceptional.last() == Some(&x);
            if pattern[residue(x, modulus)] != listed {
                break;
            }
            if listed {
                exceptional.pop();
            }
            threshold = x;
        }
        EventuallyPeriodicSet {
            exceptional,
            threshold,
            modulus,
            pattern,
        }
    }

    /// Canonical set with the given periodic rule and membership `member`
    /// on `[lo, threshold)`; nothing below `lo` belongs to the set.
    fn from_window(
        lo: i64,
        threshold: i64,
        modulus: u64,
        pattern: Vec<bool>,
        member: impl Fn(i64) -> bool,
    ) -> Self {
        let exceptional = (lo..threshold).filter(|&x| member(x)).collect();
        Self::canonicalize(exceptional, threshold, modulus, pattern)
    }

    pub fn exceptional(&self) -> &[i64] {
        &self.exceptional
    }

    pub fn threshold(&self) -> i64 {
        self.threshold
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The residue classes `R` of the periodic part, ascending.
    pub fn residues(&self) -> Vec<u64> {
        self.pattern
            .iter()
            .enumerate()
            .filter_map(|(r, &b)| b.then_some(r as u64))
            .collect()
    }

    pub(crate) fn in_pattern(&self, x: i64) -> bool {
        self.pattern[residue(x, self.modulus)]
    }

    pub fn is_empty(&self) -> bool {
        self.exceptional.is_empty() && self.is_finite()
    }

    /// True when the periodic part is empty.
    pub fn is_finite(&self) -> bool {
        !self.pattern[0] && self.pattern.len() == 1
    }

    pub fn contains(&self, x: i64) -> bool {
        if x >= self.threshold {
            self.in_pattern(x)
        } else {
            self.exceptional.binary_search(&x).is_ok()
        }
    }

    /// A lower bound for every element: the least exceptional element, or
    /// the threshold when there is none.
    pub(crate) fn floor(&self) -> i64 {
        self.exceptional.first().copied().unwrap_or(self.threshold)
    }

    pub fn min(&self) -> Option<i64> {
        self.next_member(i64::MIN)
    }

    /// Largest element of a finite set.
    pub fn max(&self) -> Option<i64> {
        if self.is_finite() {
            self.exceptional.last().copied()
        } else {
            None
        }
    }

    /// Least element `>= x`, if any.
    pub fn next_member(&self, x: i64) -> Option<i64> {
        if x < self.threshold {
            let i = self.exceptional.partition_point(|&e| e < x);
            if let Some(&e) = self.exceptional.get(i) {
                return Some(e);
            }
        }
        if self.is_finite() {
            return None;
        }
        let start = x.max(self.threshold);
        (start..start + self.modulus as i64).find(|&y| self.in_pattern(y))
    }

    /// Greatest element `<= x`, if any.
    pub fn prev_member(&self, x: i64) -> Option<i64> {
        if x >= self.threshold && !self.is_finite() {
            let stop = (x - self.modulus as i64).max(self.threshold - 1);
            if let Some(y) = (stop + 1..=x).rev().find(|&y| self.in_pattern(y)) {
                return Some(y);
            }
        }
        let i = self.exceptional.partition_point(|&e| e <= x);
        i.checked_sub(1).map(|i| self.exceptional[i])
    }

    /// Members in `[lo, hi]`, ascending.
    pub(crate) fn members_between(&self, lo: i64, hi: i64) -> impl Iterator<Item = i64> + '_ {
        (lo.max(self.floor())..=hi).filter(move |&x| self.contains(x))
    }

    /// `S ∩ [lo, hi]`.
    pub fn enumerate_window(&self, lo: i64, hi: i64) -> Result<FiniteIntSet> {
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi });
        }
        Ok(FiniteIntSet(self.members_between(lo, hi).collect()))
    }

    /// `{s + t : s ∈ S}`.
    pub fn translate(&self, t: i64) -> Self {
        let g = self.modulus;
        let mut pattern = vec![false; g as usize];
        for (r, &b) in self.pattern.iter().enumerate() {
            if b {
                pattern[residue(r as i64 + t, g)] = true;
            }
        }
        Self::canonicalize(
            self.exceptional.iter().map(|&x| x + t).collect(),
            self.threshold + t,
            g,
            pattern,
        )
    }

    pub fn union(&self, other: &Self) -> Self {
        let g = self.modulus.lcm(&other.modulus);
        let pattern = (0..g as usize)
            .map(|r| self.pattern[r % self.pattern.len()] || other.pattern[r % other.pattern.len()])
            .collect();
        Self::from_window(
            self.floor().min(other.floor()),
            self.threshold.max(other.threshold),
            g,
            pattern,
            |x| self.contains(x) || other.contains(x),
        )
    }

    /// `S \ X`.
    pub fn remove_finite(&self, x: &FiniteIntSet) -> Self {
        let Some(top) = x.max() else {
            return self.clone();
        };
        Self::from_window(
            self.floor(),
            self.threshold.max(top + 1),
            self.modulus,
            self.pattern.clone(),
            |y| self.contains(y) && !x.contains(y),
        )
    }

    /// `{a + b : a ∈ S1, b ∈ S2}`.
    ///
    /// Writing `S = E ∪ P` (exceptional and periodic parts), the sumset is
    /// `E1 + E2` together with the translates `p + P2` for `p ∈ S1` below
    /// `T1 + lcm(g1, g2)` and `e + P1` for `e ∈ E2`: any `p ∈ P1` past that
    /// point has `p + P2 ⊆ (p - lcm) + P2`. Every translate is periodic from
    /// below `T1 + T2 + lcm`, which is the working threshold before folding.
    pub fn sumset(&self, other: &Self) -> Result<Self> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptyOperand);
        }
        let (a, b) = (self, other);
        let g = a.modulus.lcm(&b.modulus);
        let lo = a.floor() + b.floor();
        let threshold = a.threshold + b.threshold + g as i64;

        let a_bases: Vec<i64> = a
            .members_between(i64::MIN, a.threshold + g as i64 - 1)
            .collect();
        let b_bases: &[i64] = &b.exceptional;

        let mut pattern = vec![false; g as usize];
        for (r, slot) in pattern.iter_mut().enumerate() {
            let r = r as i64;
            *slot = (!b.is_finite() && a_bases.iter().any(|&p| b.in_pattern(r - p)))
                || (!a.is_finite() && b_bases.iter().any(|&q| a.in_pattern(r - q)));
        }

        let width = (threshold - lo) as usize;
        let mut window = vec![false; width];
        let mut mark = |z: i64| {
            if z < threshold {
                window[(z - lo) as usize] = true;
            }
        };
        for &p in &a.exceptional {
            for &q in b_bases {
                mark(p + q);
            }
        }
        if !b.is_finite() {
            for &p in &a_bases {
                for y in b.threshold..threshold - p {
                    if b.in_pattern(y) {
                        mark(p + y);
                    }
                }
            }
        }
        if !a.is_finite() {
            for &q in b_bases {
                for y in a.threshold..threshold - q {
                    if a.in_pattern(y) {
                        mark(q + y);
                    }
                }
            }
        }

        let exceptional = window
            .iter()
            .enumerate()
            .filter_map(|(i, &m)| m.then_some(lo + i as i64))
            .collect();
        Ok(Self::canonicalize(exceptional, threshold, g, pattern))
    }

    /// Sums of exactly `n >= 1` elements, repetition allowed.
    pub fn nfold(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::PreconditionViolated("nfold needs n >= 1".into()));
        }
        if self.is_empty() {
            return Err(Error::EmptyOperand);
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.sumset(self)?;
        }
        Ok(acc)
    }

    /// Like [`nfold`](Self::nfold) but with `0·S = {0}`.
    pub fn nfold_or_zero(&self, n: u32) -> Result<Self> {
        if n == 0 {
            Ok(Self::from(&FiniteIntSet::from([0])))
        } else {
            self.nfold(n)
        }
    }

    /// `|S ∩ (-∞, m]|`.
    pub fn count_upto(&self, m: i64) -> u64 {
        let below = self.exceptional.partition_point(|&x| x <= m) as u64;
        if m < self.threshold {
            return below;
        }
        let g = self.modulus as i64;
        let periodic: i64 = self
            .residues()
            .into_iter()
            .map(|r| {
                let r = r as i64;
                (m - r).div_euclid(g) - (self.threshold - 1 - r).div_euclid(g)
            })
            .sum();
        below + periodic as u64
    }

    /// Lower asymptotic density `|R| / g` (zero for finite sets).
    pub fn lower_density(&self) -> Ratio<u64> {
        if self.is_finite() {
            return Ratio::from_integer(0);
        }
        let hits = self.pattern.iter().filter(|&&b| b).count() as u64;
        Ratio::new(hits, self.modulus)
    }

    /// `S ~ N`.
    pub fn is_cofinite(&self) -> bool {
        self.modulus == 1 && self.pattern[0]
    }

    /// True iff the symmetric difference with `other` is finite.
    pub fn equal_mod_finite(&self, other: &Self) -> bool {
        let g = self.modulus.lcm(&other.modulus) as usize;
        (0..g)
            .all(|r| self.pattern[r % self.pattern.len()] == other.pattern[r % other.pattern.len()])
    }

    /// The image of `S` in `Z/gZ`, as a membership mask of length `g`.
    pub(crate) fn residue_mask(&self, g: u64) -> Vec<bool> {
        let mut mask = vec![false; g as usize];
        for &x in &self.exceptional {
            mask[residue(x, g)] = true;
        }
        if !self.is_finite() {
            let span = g.lcm(&self.modulus) as i64;
            for x in self.threshold..self.threshold + span {
                if self.in_pattern(x) {
                    mask[residue(x, g)] = true;
                }
            }
        }
        mask
    }

    /// `S^(g) = (S + gZ) ∩ N`.
    pub fn saturate_mod(&self, g: u64) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidModulus);
        }
        if self.is_empty() {
            return Err(Error::EmptyOperand);
        }
        Ok(Self::canonicalize(Vec::new(), 0, g, self.residue_mask(g)))
    }
}

impl fmt::Display for EventuallyPeriodicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exc = FiniteIntSet(self.exceptional.clone());
        if self.is_finite() {
            return write!(f, "{exc}");
        }
        if !self.exceptional.is_empty() {
            write!(f, "{exc} ∪ ")?;
        }
        let rs: Vec<String> = self.residues().iter().map(u64::to_string).collect();
        write!(
            f,
            "{{x >= {} : x mod {} in {{{}}}}}",
            self.threshold,
            self.modulus,
            rs.join(", ")
        )
    }
}
