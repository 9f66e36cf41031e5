//! Invariant suites: closed-form identities, the cyclic-group statements
//! checked exhaustively on small moduli, and seeded random checks on
//! eventually periodic sets. A failing suite carries its first counterexample.

use std::ops::RangeInclusive;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::generate::random_set;
use crate::basis::{self, d_param};
use crate::bounds::{self, BoundValue};
use crate::intset::{EventuallyPeriodicSet, FiniteIntSet};
use crate::residue::{self, ResidueSet};

/// The formulas checked by the identity suite. Swappable so a broken
/// formula can be fed through the harness.
#[derive(Clone, Copy)]
pub struct Formulas {
    pub nash_general: fn(u64, u64) -> BoundValue,
    pub nash_original_sum: fn(u64, u64) -> BoundValue,
    pub farhi_d: fn(u64, u64) -> BoundValue,
    pub farhi_eta: fn(u64, u64) -> BoundValue,
    pub farhi_mu: fn(u64, u64) -> BoundValue,
}

impl Default for Formulas {
    fn default() -> Self {
        Formulas {
            nash_general: bounds::nash_general,
            nash_original_sum: bounds::nash_original_sum,
            farhi_d: bounds::farhi_d,
            farhi_eta: bounds::farhi_eta,
            farhi_mu: bounds::farhi_mu,
        }
    }
}

impl std::fmt::Debug for Formulas {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("Formulas")
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Upper limit on the modulus of the exhaustive suites. Each suite keeps
    /// its own default (8 for Kneser pairs, 6 for triples, 10 for `|rB|`)
    /// when that is smaller.
    pub max_modulus: u64,
    pub covering_samples: usize,
    /// Window `[0, covering_window]` for the covering relation.
    pub covering_window: i64,
    pub kneser_samples: usize,
    pub saturation_samples: usize,
    pub formulas: Formulas,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            max_modulus: 10,
            covering_samples: 200,
            covering_window: 400,
            kneser_samples: 10_000,
            saturation_samples: 50,
            formulas: Formulas::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str, cases: u64, counterexample: Option<String>) -> Self {
        SuiteResult {
            name,
            passed: counterexample.is_none(),
            cases,
            counterexample,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifySummary {
    pub suites: Vec<SuiteResult>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn get(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

pub fn verify_suites(config: &VerifyConfig) -> VerifySummary {
    VerifySummary {
        suites: vec![
            bound_identities(&config.formulas),
            diameter_count(),
            kneser_exhaustive(config.max_modulus.min(8)),
            kneser_sampled(config.seed, config.kneser_samples, 9..=16),
            kneser_triples(config.max_modulus.min(6)),
            saturation_exhaustive(config.max_modulus.min(8)),
            profile_shape(config.max_modulus.min(10)),
            periodicity_exhaustive(config.max_modulus.min(8)),
            periodicity_sampled(config.seed, config.saturation_samples * 2),
            saturation_identity(config.seed, config.saturation_samples),
            covering_sampled(config.seed, config.covering_samples, config.covering_window),
        ],
    }
}

fn exact(b: BoundValue) -> BigUint {
    b.exact_value().expect("certified bound").clone()
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// Closed forms against the sums they simplify.
pub fn bound_identities(f: &Formulas) -> SuiteResult {
    let mut cases = 0u64;
    let mut check = |ok: bool, what: String| -> Option<String> {
        cases += 1;
        (!ok).then_some(what)
    };
    let mut first = None;
    'outer: {
        for h in 1..=20 {
            for k in 1..=20 {
                let (a, b) = (
                    exact((f.nash_general)(h, k)),
                    exact((f.nash_original_sum)(h, k)),
                );
                first = check(
                    a == b,
                    format!("nash_general({h},{k}) = {a} but the original sum is {b}"),
                );
                if first.is_some() {
                    break 'outer;
                }
            }
        }
        for h in 1..=30u64 {
            for d in 0..=10u64 {
                let sum: BigUint = (0..h).map(|l| big(l * d + 1) * big(h - l + 1)).sum();
                let closed = exact((f.farhi_d)(h, d));
                first = check(
                    closed == sum,
                    format!("farhi_d({h},{d}) = {closed} but the sum is {sum}"),
                );
                if first.is_some() {
                    break 'outer;
                }
            }
        }
        for h in 1..=50u64 {
            for eta in 1..=20u64 {
                let product = big(eta * (h - 1) + 1) * big(h + 1);
                let closed = exact((f.farhi_eta)(h, eta));
                first = check(
                    closed == product,
                    format!("farhi_eta({h},{eta}) = {closed} but (η(h-1)+1)(h+1) = {product}"),
                );
                if first.is_some() {
                    break 'outer;
                }
            }
        }
        for h in 1..=50u64 {
            let single = big((h * h + 3 * h) / 2);
            let (n, m) = (exact((f.nash_general)(h, 1)), exact((f.farhi_mu)(h, 1)));
            first = check(
                n == single && m == single,
                format!(
                    "h = {h}: nash_general(h,1) = {n}, farhi_mu(h,1) = {m}, (h²+3h)/2 = {single}"
                ),
            );
            if first.is_some() {
                break 'outer;
            }
        }
    }
    SuiteResult::new("bound-identities", cases, first)
}

/// `|X| <= d + 1` on every nonempty `X ⊆ [0, 12]`, with equality exactly on
/// arithmetic progressions.
pub fn diameter_count() -> SuiteResult {
    let mut cases = 0;
    let counterexample = (1u32..1 << 13).find_map(|bits| {
        cases += 1;
        let x: FiniteIntSet = (0..13).filter(|i| bits >> i & 1 == 1).collect();
        let bound = d_param(&x).expect("nonempty") + 1;
        let size = x.len() as u64;
        let ok = size <= bound && ((size == bound) == x.is_arithmetic_progression());
        (!ok).then(|| format!("X = {x}: |X| = {size}, d + 1 = {bound}"))
    });
    SuiteResult::new("diameter-count", cases, counterexample)
}

fn pairs_exhaustive(
    max_modulus: u64,
    check: impl Fn(&ResidueSet, &ResidueSet) -> Option<String> + Sync,
) -> (u64, Option<String>) {
    let mut cases = 0;
    for g in 1..=max_modulus {
        let sets: Vec<ResidueSet> = ResidueSet::all_nonempty(g).collect();
        cases += (sets.len() * sets.len()) as u64;
        let bad = sets
            .par_iter()
            .find_map_first(|b| sets.iter().find_map(|c| check(b, c)));
        if bad.is_some() {
            return (cases, bad);
        }
    }
    (cases, None)
}

/// Second Kneser theorem with `H = stab(B + C)` on every pair.
pub fn kneser_exhaustive(max_modulus: u64) -> SuiteResult {
    let (cases, bad) = pairs_exhaustive(max_modulus, |b, c| {
        let w = residue::kneser_witness(b, c).expect("valid pair");
        (!w.holds()).then(|| format!("B = {b}, C = {c}: {w:?}"))
    });
    SuiteResult::new("kneser-exhaustive", cases, bad)
}

fn random_residue_set<R: Rng>(rng: &mut R, g: u64) -> ResidueSet {
    let bits = rng.random_range(1..1u64 << g);
    ResidueSet::from_bits(g, bits)
}

/// Second Kneser theorem on random pairs with moduli drawn from `moduli`
/// (at most 63).
pub fn kneser_sampled(seed: u64, samples: usize, moduli: RangeInclusive<u64>) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6b6e_6573);
    let pairs: Vec<(ResidueSet, ResidueSet)> = (0..samples)
        .map(|_| {
            let g = rng.random_range(moduli.clone());
            (
                random_residue_set(&mut rng, g),
                random_residue_set(&mut rng, g),
            )
        })
        .collect();
    let bad = pairs.par_iter().find_map_first(|(b, c)| {
        let w = residue::kneser_witness(b, c).expect("valid pair");
        (!w.holds()).then(|| format!("B = {b}, C = {c}: {w:?}"))
    });
    SuiteResult::new("kneser-sampled", samples as u64, bad)
}

/// `|B1 + B2 + B3| >= |B1| + |B2| + |B3| - 2` whenever the sum is
/// non-degenerate.
pub fn kneser_triples(max_modulus: u64) -> SuiteResult {
    let mut cases = 0u64;
    for g in 1..=max_modulus {
        let sets: Vec<ResidueSet> = ResidueSet::all_nonempty(g).collect();
        let (n, bad) = sets
            .par_iter()
            .map(|b1| {
                let mut n = 0u64;
                for b2 in &sets {
                    for b3 in &sets {
                        let triple = [b1.clone(), b2.clone(), b3.clone()];
                        match residue::sum_lower_bound_check(&triple) {
                            Ok(true) => n += 1,
                            Ok(false) => {
                                return (n + 1, Some(format!("B = ({b1}, {b2}, {b3})")));
                            }
                            Err(_) => {}
                        }
                    }
                }
                (n, None)
            })
            .reduce(|| (0, None), |a, b| (a.0 + b.0, a.1.or(b.1)));
        cases += n;
        if bad.is_some() {
            return SuiteResult::new("kneser-triples", cases, bad);
        }
    }
    SuiteResult::new("kneser-triples", cases, None)
}

/// Non-degenerate sums have non-degenerate summands, and
/// `stab(B) + stab(C) ⊆ stab(B + C)`.
pub fn saturation_exhaustive(max_modulus: u64) -> SuiteResult {
    let (cases, bad) = pairs_exhaustive(max_modulus, |b, c| {
        let ok = residue::prop2_check(b, c).expect("valid pair");
        let sb = residue::stabilizer(b).expect("nonempty");
        let sc = residue::stabilizer(c).expect("nonempty");
        let sum = b.sum(c).expect("same modulus");
        let ssum = residue::stabilizer(&sum).expect("nonempty");
        let contained = sb.join(&sc).is_subgroup_of(&ssum);
        (!(ok && contained)).then(|| format!("B = {b}, C = {c}"))
    });
    SuiteResult::new("saturation-exhaustive", cases, bad)
}

/// `|rB|` strictly increases up to `r0` and is constant afterwards.
pub fn profile_shape(max_modulus: u64) -> SuiteResult {
    let mut cases = 0;
    for g in 1..=max_modulus {
        for b in ResidueSet::all_nonempty(g) {
            cases += 1;
            let p = residue::lemma1_profile(&b).expect("nonempty");
            if !p.has_expected_shape() {
                return SuiteResult::new("profile-shape", cases, Some(format!("B = {b}: {p:?}")));
            }
        }
    }
    SuiteResult::new("profile-shape", cases, None)
}

/// For every nonempty `B ⊆ [0, g)`: `B` is non-degenerate mod `g` iff no
/// `m < g` has `B^(m) = B^(g)`. All `m` are tried, not only divisors.
pub fn periodicity_exhaustive(max_modulus: u64) -> SuiteResult {
    let mut cases = 0;
    for g in 1..=max_modulus {
        for bits in 1u64..1 << g {
            cases += 1;
            let b: FiniteIntSet = (0..g as i64).filter(|i| bits >> i & 1 == 1).collect();
            let set = EventuallyPeriodicSet::from(&b);
            let degenerate = residue::is_degenerate(&residue::project(&set, g).expect("nonempty"))
                .expect("nonempty");
            let full = set.saturate_mod(g).expect("nonempty");
            let collapses = (1..g).any(|m| set.saturate_mod(m).expect("nonempty") == full);
            if degenerate != collapses {
                return SuiteResult::new(
                    "periodicity-exhaustive",
                    cases,
                    Some(format!(
                        "B = {b}, g = {g}: degenerate = {degenerate}, collapses = {collapses}"
                    )),
                );
            }
        }
    }
    SuiteResult::new("periodicity-exhaustive", cases, None)
}

/// A saturable random set whose exceptional residues all lie in its periodic
/// part.
fn random_saturable<R: Rng>(rng: &mut R) -> EventuallyPeriodicSet {
    let s = random_set(rng, 12, 20, 4);
    let exceptional: Vec<i64> = s
        .exceptional()
        .iter()
        .copied()
        .filter(|&x| s.in_pattern(x))
        .collect();
    EventuallyPeriodicSet::new(exceptional, s.threshold(), s.modulus(), s.residues())
        .expect("valid")
}

/// On saturable sets the minimal saturation modulus is the canonical one,
/// the set is non-degenerate there, and no proper divisor saturates to the
/// same tail.
pub fn periodicity_sampled(seed: u64, samples: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7072_6f70);
    for i in 0..samples {
        let s = random_saturable(&mut rng);
        let g = s.modulus();
        let m = match residue::minimal_saturation_modulus(&s) {
            Ok(m) => m,
            Err(e) => {
                return SuiteResult::new(
                    "periodicity-sampled",
                    i as u64 + 1,
                    Some(format!("S = {s}: {e}")),
                );
            }
        };
        let degenerate =
            residue::is_degenerate(&residue::project(&s, g).expect("nonempty")).expect("nonempty");
        let full = s.saturate_mod(g).expect("nonempty");
        let divisor_collapses = (1..g)
            .filter(|d| g % d == 0)
            .any(|d| s.saturate_mod(d).expect("nonempty").equal_mod_finite(&full));
        if m != g || degenerate || divisor_collapses {
            return SuiteResult::new(
                "periodicity-sampled",
                i as u64 + 1,
                Some(format!(
                    "S = {s}: minimal modulus {m}, degenerate = {degenerate}"
                )),
            );
        }
    }
    SuiteResult::new("periodicity-sampled", samples as u64, None)
}

/// `(B + C)^(g) ~ B^(g) + C`.
pub fn saturation_identity(seed: u64, samples: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7361_7475);
    for i in 0..samples {
        let b = random_set(&mut rng, 10, 20, 4);
        let c = random_set(&mut rng, 10, 20, 4);
        let g = rng.random_range(1..=10);
        let lhs = b.sumset(&c).and_then(|s| s.saturate_mod(g));
        let rhs = b.saturate_mod(g).and_then(|s| s.sumset(&c));
        let ok = match (&lhs, &rhs) {
            (Ok(l), Ok(r)) => l.equal_mod_finite(r),
            _ => false,
        };
        if !ok {
            return SuiteResult::new(
                "saturation-identity",
                i as u64 + 1,
                Some(format!("B = {b}, C = {c}, g = {g}: {lhs:?} vs {rhs:?}")),
            );
        }
    }
    SuiteResult::new("saturation-identity", samples as u64, None)
}

/// One sampled instance for the covering relation and its two inequalities.
#[derive(Clone, Debug)]
pub struct CoveringCase {
    pub b: EventuallyPeriodicSet,
    pub x: FiniteIntSet,
    pub u: u32,
    pub v: u32,
}

pub fn covering_cases(seed: u64, samples: usize) -> Vec<CoveringCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6c65_6d33);
    (0..samples)
        .map(|_| {
            let b = loop {
                let s = random_set(&mut rng, 6, 10, 3);
                if !s.is_finite() {
                    break s;
                }
            };
            let len = rng.random_range(1..=4);
            let x: FiniteIntSet = (0..len).map(|_| rng.random_range(-5..=15)).collect();
            CoveringCase {
                b,
                x,
                u: rng.random_range(0..=3),
                v: rng.random_range(0..=3),
            }
        })
        .collect()
}

/// Checks one case: the covering relation on `[0, window]`, the counting
/// inequality in the original frame with its exact translation slack for
/// `m` in `[-window, window]`, and the residue inequality for `g <= 12`.
pub fn covering_case_check(case: &CoveringCase, window: i64) -> Result<(), String> {
    let CoveringCase { b, x, u, v } = case;
    let cover = basis::lemma3_cover_check(b, x, *u, *v, 0, window).map_err(|e| e.to_string())?;
    if let Some(n) = cover.uncovered {
        return Err(format!("{n} in uB' + vX' is not covered ({cover:?})"));
    }
    let eta = cover.eta;
    let lhs = basis::mixed_sum(b, *u, x, *v).map_err(|e| e.to_string())?;
    let rhs = b.nfold_or_zero(u + v).map_err(|e| e.to_string())?;
    // uB + vX = (uB' + vX') + s; the covering gives the count bound with the
    // right-hand side shifted by v(b0 - x0).
    let shift = (cover.x_shift - cover.b_shift).unsigned_abs();
    let slack = eta * (*v as u64) * shift;
    for m in -window..=window {
        let (l, r) = (lhs.count_upto(m), rhs.count_upto(m));
        if l > eta * r + slack {
            return Err(format!("m = {m}: count {l} > {eta}·{r} + {slack}"));
        }
    }
    for g in 1..=12 {
        if !basis::lemma3_residue_check(b, x, *u, *v, g).map_err(|e| e.to_string())? {
            return Err(format!("residue inequality fails for g = {g}"));
        }
    }
    Ok(())
}

pub fn covering_sampled(seed: u64, samples: usize, window: i64) -> SuiteResult {
    let cases = covering_cases(seed, samples);
    let bad = cases.par_iter().find_map_first(|c| {
        covering_case_check(c, window)
            .err()
            .map(|why| format!("B = {}, X = {}, u = {}, v = {}: {why}", c.b, c.x, c.u, c.v))
    });
    SuiteResult::new("covering-sampled", samples as u64, bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_pass() {
        assert!(bound_identities(&Formulas::default()).passed);
    }

    fn broken_farhi_eta(h: u64, eta: u64) -> BoundValue {
        let mut b = bounds::farhi_eta(h, eta);
        if h == 7 {
            b.value = bounds::BoundNumber::Exact(exact(b.clone()) + 1u32);
        }
        b
    }

    #[test]
    fn wrong_formula_is_caught() {
        let f = Formulas {
            farhi_eta: broken_farhi_eta,
            ..Formulas::default()
        };
        let r = bound_identities(&f);
        assert!(!r.passed);
        assert!(r.counterexample.unwrap().starts_with("farhi_eta(7,1)"));
    }

    #[test]
    fn small_suites() {
        assert!(kneser_exhaustive(5).passed);
        assert!(saturation_exhaustive(5).passed);
        assert!(profile_shape(7).passed);
        assert!(periodicity_exhaustive(6).passed);
        assert!(kneser_triples(4).passed);
    }

    #[test]
    fn seeded_cases_repeat() {
        let a: Vec<String> = covering_cases(5, 10)
            .iter()
            .map(|c| format!("{} {} {} {}", c.b, c.x, c.u, c.v))
            .collect();
        let b: Vec<String> = covering_cases(5, 10)
            .iter()
            .map(|c| format!("{} {} {} {}", c.b, c.x, c.u, c.v))
            .collect();
        assert_eq!(a, b);
    }
}
