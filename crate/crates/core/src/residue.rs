//! Sumsets, stabilizers and Kneser-type checks in cyclic groups `Z/gZ`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::intset::{EventuallyPeriodicSet, FiniteIntSet};

/// A subset of `Z/gZ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    modulus: u64,
    mask: Vec<bool>,
}

impl ResidueSet {
    pub fn new(modulus: u64, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidModulus);
        }
        let mut mask = vec![false; modulus as usize];
        for r in members {
            if r >= modulus {
                return Err(Error::ResidueOutOfRange {
                    residue: r,
                    modulus,
                });
            }
            mask[r as usize] = true;
        }
        Ok(ResidueSet { modulus, mask })
    }

    pub(crate) fn from_mask(mask: Vec<bool>) -> Self {
        ResidueSet {
            modulus: mask.len() as u64,
            mask,
        }
    }

    /// Subset of `Z/gZ` whose members are the set bits of `bits`. Needs `g <= 64`.
    pub fn from_bits(modulus: u64, bits: u64) -> Self {
        assert!((1..=64).contains(&modulus));
        Self::from_mask((0..modulus).map(|r| bits >> r & 1 == 1).collect())
    }

    pub fn full(modulus: u64) -> Self {
        Self::from_mask(vec![true; modulus as usize])
    }

    pub fn zero(modulus: u64) -> Self {
        let mut mask = vec![false; modulus as usize];
        mask[0] = true;
        Self::from_mask(mask)
    }

    /// Every nonempty subset of `Z/gZ`, in bitmask order. Needs `g < 64`.
    pub fn all_nonempty(modulus: u64) -> impl Iterator<Item = ResidueSet> {
        assert!((1..64).contains(&modulus));
        (1..1u64 << modulus).map(move |bits| Self::from_bits(modulus, bits))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.mask.iter().any(|&b| b)
    }

    pub fn contains(&self, r: u64) -> bool {
        self.mask[(r % self.modulus) as usize]
    }

    pub fn members(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.mask
            .iter()
            .enumerate()
            .filter_map(|(r, &b)| b.then_some(r as u64))
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.iter().all(|r| other.contains(r))
    }

    pub fn translate(&self, t: u64) -> Self {
        let g = self.modulus;
        let mut mask = vec![false; g as usize];
        for r in self.iter() {
            mask[((r + t) % g) as usize] = true;
        }
        Self::from_mask(mask)
    }

    fn check_same_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }

    /// `{b + c mod g}`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same_modulus(other)?;
        let g = self.modulus;
        let mut mask = vec![false; g as usize];
        let rhs = other.members();
        for b in self.iter() {
            for &c in &rhs {
                mask[((b + c) % g) as usize] = true;
            }
        }
        Ok(Self::from_mask(mask))
    }

    /// `rB` with `0B = {0}`.
    pub fn nfold(&self, r: usize) -> Self {
        let mut acc = Self::zero(self.modulus);
        for _ in 0..r {
            acc = acc.sum(self).expect("same modulus");
        }
        acc
    }

    /// `B + H`.
    pub fn add_subgroup(&self, h: &StabilizerSubgroup) -> Self {
        let elems: Vec<u64> = h.elements().collect();
        let g = self.modulus;
        let mut mask = vec![false; g as usize];
        for b in self.iter() {
            for &t in &elems {
                mask[((b + t) % g) as usize] = true;
            }
        }
        Self::from_mask(mask)
    }
}

impl fmt::Display for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms: Vec<String> = self.iter().map(|r| r.to_string()).collect();
        write!(f, "{{{}}} mod {}", ms.join(", "), self.modulus)
    }
}

/// The subgroup `hZ/gZ` of `Z/gZ`, stored by its generator `h | g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StabilizerSubgroup {
    modulus: u64,
    generator: u64,
}

impl StabilizerSubgroup {
    pub fn new(modulus: u64, generator: u64) -> Result<Self> {
        if modulus == 0 || generator == 0 || !modulus.is_multiple_of(generator) {
            return Err(Error::PreconditionViolated(format!(
                "generator {generator} must be a positive divisor of {modulus}"
            )));
        }
        Ok(StabilizerSubgroup { modulus, generator })
    }

    pub fn trivial(modulus: u64) -> Self {
        StabilizerSubgroup {
            modulus,
            generator: modulus,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn order(&self) -> u64 {
        self.modulus / self.generator
    }

    pub fn is_trivial(&self) -> bool {
        self.generator == self.modulus
    }

    pub fn contains(&self, t: u64) -> bool {
        (t % self.modulus).is_multiple_of(self.generator)
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        (0..self.modulus).step_by(self.generator as usize)
    }

    /// `H1 + H2`, again a subgroup.
    pub fn join(&self, other: &Self) -> Self {
        StabilizerSubgroup {
            modulus: self.modulus,
            generator: self.generator.gcd(&other.generator),
        }
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.generator.is_multiple_of(other.generator)
    }
}

/// The image of `S` in `Z/gZ`.
pub fn project(s: &EventuallyPeriodicSet, g: u64) -> Result<ResidueSet> {
    if g == 0 {
        return Err(Error::InvalidModulus);
    }
    if s.is_empty() {
        return Err(Error::EmptyOperand);
    }
    Ok(ResidueSet::from_mask(s.residue_mask(g)))
}

pub fn project_finite(x: &FiniteIntSet, g: u64) -> Result<ResidueSet> {
    project(&EventuallyPeriodicSet::from(x), g)
}

pub fn sum_residue(b: &ResidueSet, c: &ResidueSet) -> Result<ResidueSet> {
    b.sum(c)
}

/// The largest subgroup `H` with `B + H = B`.
///
/// The stabilizer of a subset of a cyclic group is generated by its least
/// positive element, which divides `g`, so the first stabilizing divisor wins.
pub fn stabilizer(b: &ResidueSet) -> Result<StabilizerSubgroup> {
    if b.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let g = b.modulus;
    let generator = (1..=g)
        .filter(|d| g.is_multiple_of(*d))
        .find(|&d| b.translate(d) == *b)
        .expect("g always stabilizes");
    Ok(StabilizerSubgroup {
        modulus: g,
        generator,
    })
}

/// Nontrivial stabilizer.
pub fn is_degenerate(b: &ResidueSet) -> Result<bool> {
    Ok(!stabilizer(b)?.is_trivial())
}

/// Outcome of checking the second Kneser theorem on one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KneserWitness {
    /// `H = stab(B + C)`.
    pub subgroup: StabilizerSubgroup,
    /// `B + C = B + C + H`.
    pub absorbs: bool,
    pub sum_size: usize,
    /// `|B + H| + |C + H| - |H|`.
    pub lower_bound: i64,
}

impl KneserWitness {
    pub fn holds(&self) -> bool {
        self.absorbs && self.sum_size as i64 >= self.lower_bound
    }
}

pub fn kneser_witness(b: &ResidueSet, c: &ResidueSet) -> Result<KneserWitness> {
    b.check_same_modulus(c)?;
    if b.is_empty() || c.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let sum = b.sum(c)?;
    let h = stabilizer(&sum)?;
    let lower_bound =
        b.add_subgroup(&h).len() as i64 + c.add_subgroup(&h).len() as i64 - h.order() as i64;
    Ok(KneserWitness {
        subgroup: h,
        absorbs: sum.add_subgroup(&h) == sum,
        sum_size: sum.len(),
        lower_bound,
    })
}

/// `|B_1 + ... + B_n| >= Σ|B_i| - n + 1` for a non-degenerate sum.
pub fn sum_lower_bound_check(bs: &[ResidueSet]) -> Result<bool> {
    let (first, rest) = bs
        .split_first()
        .ok_or_else(|| Error::PreconditionViolated("no summands".into()))?;
    if bs.iter().any(ResidueSet::is_empty) {
        return Err(Error::EmptyOperand);
    }
    let total = rest.iter().try_fold(first.clone(), |acc, b| acc.sum(b))?;
    if is_degenerate(&total)? {
        return Err(Error::PreconditionViolated(format!(
            "{total} is degenerate"
        )));
    }
    let sizes: i64 = bs.iter().map(|b| b.len() as i64).sum();
    Ok(total.len() as i64 > sizes - bs.len() as i64)
}

/// `B + C` non-degenerate implies `B` and `C` non-degenerate.
pub fn prop2_check(b: &ResidueSet, c: &ResidueSet) -> Result<bool> {
    let sum = b.sum(c)?;
    if sum.is_empty() {
        return Err(Error::EmptyOperand);
    }
    if is_degenerate(&sum)? {
        return Ok(true);
    }
    Ok(!is_degenerate(b)? && !is_degenerate(c)?)
}

/// The least `m >= 1` with `S ~ S^(m)`.
///
/// Every `m` is tried in turn, divisors of the canonical modulus or not. If
/// the canonical modulus itself fails then no modulus works.
pub fn minimal_saturation_modulus(s: &EventuallyPeriodicSet) -> Result<u64> {
    if s.is_empty() {
        return Err(Error::EmptyOperand);
    }
    if s.is_finite() {
        return Err(Error::FiniteSet);
    }
    let g = s.modulus();
    for m in 1..=g {
        if s.equal_mod_finite(&s.saturate_mod(m)?) {
            return Ok(m);
        }
    }
    let missing = s
        .exceptional()
        .iter()
        .map(|&x| x.rem_euclid(g as i64) as u64)
        .find(|&r| !s.residues().contains(&r))
        .expect("an exceptional residue lies outside the periodic part");
    Err(Error::NotSaturable { residue: missing })
}

/// The sequence `|rB|` up to two steps past its stabilization index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma1Profile {
    /// Least `r` with `|rB| = |(r+1)B|`.
    pub r0: usize,
    /// `|rB|` for `r = 0..=r0 + 2`, with `|0B| = 1`.
    pub values: Vec<usize>,
}

impl Lemma1Profile {
    /// Strictly increasing through `r0`, constant afterwards.
    pub fn has_expected_shape(&self) -> bool {
        let (rise, flat) = self.values.split_at(self.r0 + 1);
        rise.windows(2).all(|w| w[0] < w[1]) && flat.iter().all(|&v| v == rise[self.r0])
    }
}

pub fn lemma1_profile(b: &ResidueSet) -> Result<Lemma1Profile> {
    if b.is_empty() {
        return Err(Error::EmptyOperand);
    }
    let mut values = vec![1];
    let mut current = ResidueSet::zero(b.modulus);
    let r0 = loop {
        current = current.sum(b)?;
        values.push(current.len());
        let n = values.len();
        if values[n - 1] == values[n - 2] {
            break n - 2;
        }
    };
    current = current.sum(b)?;
    values.push(current.len());
    Ok(Lemma1Profile { r0, values })
}
