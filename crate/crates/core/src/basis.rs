//! Orders of additive bases and the removal parameters `d`, `η`, `μ`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intset::{EventuallyPeriodicSet, FiniteIntSet};
use crate::residue::project;

pub const DEFAULT_ORDER_CAP: u64 = 64;

/// Exact order `h` with its certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderResult {
    pub order: u64,
    /// `hA`, cofinite.
    pub certificate: EventuallyPeriodicSet,
    /// `(h-1)A`, not cofinite; absent when `h = 1`.
    pub sub_certificate: Option<EventuallyPeriodicSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovalParameters {
    /// `|X|`.
    pub k: u64,
    /// `diam(X) / δ(X)`.
    pub d: u64,
    pub eta: u64,
    pub mu: u64,
}

/// Gcd of all pairwise differences of an infinite set.
pub fn eventual_gcd(a: &EventuallyPeriodicSet) -> Result<u64> {
    if a.is_finite() {
        return Err(Error::FiniteSet);
    }
    let g = a.modulus();
    let base = a.min().expect("infinite set has a least element");
    // Every element is a window element plus a multiple of g.
    Ok(a.enumerate_window(base, a.threshold() + g as i64 - 1)?
        .iter()
        .fold(g, |acc, x| acc.gcd(&((x - base) as u64))))
}

/// Least `h <= cap` with `hA ~ N`.
///
/// `NotABasis` is returned only for provable obstructions (a finite set, or
/// common difference `> 1`). Running past `cap` is `CapExceeded`, which says
/// nothing about basis-hood.
pub fn order(a: &EventuallyPeriodicSet, cap: u64) -> Result<OrderResult> {
    if a.is_empty() {
        return Err(Error::NotABasis("empty set".into()));
    }
    if a.is_finite() {
        return Err(Error::NotABasis("finite set".into()));
    }
    let g = eventual_gcd(a)?;
    if g > 1 {
        return Err(Error::NotABasis(format!(
            "all differences divisible by {g}"
        )));
    }
    let mut prev: Option<EventuallyPeriodicSet> = None;
    let mut current = a.clone();
    for h in 1..=cap {
        if current.is_cofinite() {
            return Ok(OrderResult {
                order: h,
                certificate: current,
                sub_certificate: prev,
            });
        }
        let next = current.sumset(a)?;
        prev = Some(std::mem::replace(&mut current, next));
    }
    Err(Error::CapExceeded(cap))
}

fn check_subset(a: &EventuallyPeriodicSet, x: &FiniteIntSet) -> Result<()> {
    match x.iter().find(|&e| !a.contains(e)) {
        Some(element) => Err(Error::XNotSubset { element }),
        None => Ok(()),
    }
}

/// `G(A \ X)`.
pub fn remove_and_order(
    a: &EventuallyPeriodicSet,
    x: &FiniteIntSet,
    cap: u64,
) -> Result<OrderResult> {
    check_subset(a, x)?;
    order(&a.remove_finite(x), cap)
}

/// `d = diam(X) / δ(X)`.
pub fn d_param(x: &FiniteIntSet) -> Result<u64> {
    let diam = x.diameter()?;
    let delta = x.delta()?;
    assert_eq!(diam % delta, 0, "δ(X) must divide diam(X)");
    Ok(diam / delta)
}

/// Least gap `|a - b| >= diam(X)` between distinct elements of `B`.
///
/// The gap structure above `T + g` repeats with period `g`, so base points
/// are limited to the exceptional part and one period `[T, T + g)`.
pub fn eta_param(b: &EventuallyPeriodicSet, x: &FiniteIntSet) -> Result<u64> {
    if b.is_empty() {
        return Err(Error::EmptyOperand);
    }
    if b.is_finite() {
        return Err(Error::FiniteSet);
    }
    let reach = x.diameter()?.max(1) as i64;
    let base_top = b.threshold() + b.modulus() as i64 - 1;
    let eta = b
        .enumerate_window(i64::MIN / 4, base_top)?
        .iter()
        .map(|a| {
            let succ = b.next_member(a + reach).expect("infinite set");
            (succ - a) as u64
        })
        .min()
        .expect("infinite set has elements below T + g");
    Ok(eta)
}

/// `μ` together with the least element `y0 ∈ B \ X` realizing it.
pub fn mu_witness(b: &EventuallyPeriodicSet, x: &FiniteIntSet) -> Result<(u64, i64)> {
    let (lo, hi) = match (x.min(), x.max()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(Error::EmptySet),
    };
    let not_in_x = |y: &i64| !x.contains(*y);

    let mut below = None;
    let mut probe = lo;
    while let Some(y) = b.prev_member(probe) {
        if not_in_x(&y) {
            below = Some(y);
            break;
        }
        probe = y - 1;
    }
    let inside = (lo..=hi).filter(not_in_x).find(|&y| b.contains(y));
    let mut above = None;
    let mut probe = hi;
    while let Some(y) = b.next_member(probe) {
        if not_in_x(&y) {
            above = Some(y);
            break;
        }
        probe = y + 1;
    }

    let diam_with = |y: i64| (hi.max(y) - lo.min(y)) as u64;
    [below, inside, above]
        .into_iter()
        .flatten()
        .map(|y| (diam_with(y), y))
        .min()
        .ok_or(Error::EmptyOperand)
}

/// `μ = min over y ∈ B \ X of diam(X ∪ {y})`.
pub fn mu_param(b: &EventuallyPeriodicSet, x: &FiniteIntSet) -> Result<u64> {
    mu_witness(b, x).map(|(mu, _)| mu)
}

/// `(k, d, η, μ)` for removing `X` from `A`; `η` and `μ` are taken over `A \ X`.
pub fn removal_parameters(
    a: &EventuallyPeriodicSet,
    x: &FiniteIntSet,
) -> Result<RemovalParameters> {
    check_subset(a, x)?;
    let b = a.remove_finite(x);
    Ok(RemovalParameters {
        k: x.len() as u64,
        d: d_param(x)?,
        eta: eta_param(&b, x)?,
        mu: mu_param(&b, x)?,
    })
}

/// `hB ∪ ((h-1)B + X) ∪ ... ∪ (B + (h-1)X) ~ N` with `B = A \ X`.
pub fn decomposition_check(a: &EventuallyPeriodicSet, x: &FiniteIntSet, h: u64) -> Result<bool> {
    check_subset(a, x)?;
    if h == 0 {
        return Err(Error::PreconditionViolated("h must be positive".into()));
    }
    let b = a.remove_finite(x);
    let h = h as u32;
    let mut acc = EventuallyPeriodicSet::empty();
    for ell in 0..h {
        let lx = EventuallyPeriodicSet::from(&x.nfold(ell));
        let term = b.nfold(h - ell)?.sumset(&lx)?;
        acc = acc.union(&term);
    }
    Ok(acc.is_cofinite())
}

/// The set used to bound `G(A \ X)` through `μ`: translate so the
/// `μ`-minimizer sits at 0, then adjoin `+1` (or `-1` when `X <= 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem5Construction {
    pub h: u64,
    pub mu: u64,
    pub y0: i64,
    pub adjoined: i64,
    /// `((A - y0) \ (X - y0)) ∪ {adjoined}`.
    pub set: EventuallyPeriodicSet,
    /// Its order, if found within `h·μ`.
    pub order: Option<u64>,
}

impl Theorem5Construction {
    pub fn holds(&self) -> bool {
        self.order.is_some_and(|o| o <= self.h * self.mu)
    }
}

pub fn theorem5_construction(
    a: &EventuallyPeriodicSet,
    x: &FiniteIntSet,
    cap: u64,
) -> Result<Theorem5Construction> {
    check_subset(a, x)?;
    if x.is_empty() {
        return Err(Error::EmptySet);
    }
    let h = order(a, cap)?.order;
    let b = a.remove_finite(x);
    let (mu, y0) = mu_witness(&b, x)?;
    let shifted_x = x.translate(-y0);
    let adjoined = if FiniteIntSet::max(&shifted_x).is_some_and(|m| m <= 0) {
        -1
    } else {
        1
    };
    let set = b
        .translate(-y0)
        .union(&EventuallyPeriodicSet::from(&FiniteIntSet::from([
            adjoined,
        ])));
    let order = match order(&set, h * mu) {
        Ok(r) => Some(r.order),
        Err(Error::CapExceeded(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(Theorem5Construction {
        h,
        mu,
        y0,
        adjoined,
        set,
        order,
    })
}

pub fn theorem5_construction_check(
    a: &EventuallyPeriodicSet,
    x: &FiniteIntSet,
    cap: u64,
) -> Result<bool> {
    theorem5_construction(a, x, cap).map(|c| c.holds())
}

/// `uB + vX` with `0·S = {0}`.
pub fn mixed_sum(
    b: &EventuallyPeriodicSet,
    u: u32,
    x: &FiniteIntSet,
    v: u32,
) -> Result<EventuallyPeriodicSet> {
    b.nfold_or_zero(u)?
        .sumset(&EventuallyPeriodicSet::from(&x.nfold(v)))
}

/// Outcome of the covering check `uB + vX ⊆ ∪_{τ<η} ((u+v)B + τ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCheck {
    pub eta: u64,
    /// Translation applied to `B` so the `η`-pair is `{0, η}`.
    pub b_shift: i64,
    /// Translation applied to `X` so its minimum is 0.
    pub x_shift: i64,
    /// First element of `uB' + vX'` in the window that is not covered.
    pub uncovered: Option<i64>,
}

impl CoverCheck {
    pub fn holds(&self) -> bool {
        self.uncovered.is_none()
    }
}

/// Checks the covering relation on `[lo, hi]` after normalizing `X` to start
/// at 0 and `B` so that its least `η`-realizing pair is `{0, η}`.
pub fn lemma3_cover_check(
    b: &EventuallyPeriodicSet,
    x: &FiniteIntSet,
    u: u32,
    v: u32,
    lo: i64,
    hi: i64,
) -> Result<CoverCheck> {
    let eta = eta_param(b, x)?;
    let b0 = eta_pair_base(b, eta)?;
    let x0 = x.min().ok_or(Error::EmptySet)?;
    let bn = b.translate(-b0);
    let xn = x.translate(-x0);
    let lhs = mixed_sum(&bn, u, &xn, v)?;
    let rhs = bn.nfold_or_zero(u + v)?;
    let uncovered = lhs
        .enumerate_window(lo, hi)?
        .iter()
        .find(|&n| !(0..eta as i64).any(|tau| rhs.contains(n - tau)));
    Ok(CoverCheck {
        eta,
        b_shift: -b0,
        x_shift: -x0,
        uncovered,
    })
}

/// Least `b0 ∈ B` with `b0 + η ∈ B`.
pub fn eta_pair_base(b: &EventuallyPeriodicSet, eta: u64) -> Result<i64> {
    let top = b.threshold() + b.modulus() as i64 - 1;
    b.enumerate_window(i64::MIN / 4, top)?
        .iter()
        .find(|&a| b.contains(a + eta as i64))
        .ok_or_else(|| Error::PreconditionViolated(format!("no pair at distance {eta}")))
}

/// `|project(uB + vX, g)| <= η·|project((u+v)B, g)|`.
pub fn lemma3_residue_check(
    b: &EventuallyPeriodicSet,
    x: &FiniteIntSet,
    u: u32,
    v: u32,
    g: u64,
) -> Result<bool> {
    let eta = eta_param(b, x)?;
    let lhs = project(&mixed_sum(b, u, x, v)?, g)?.len() as u64;
    let rhs = project(&b.nfold_or_zero(u + v)?, g)?.len() as u64;
    Ok(lhs <= eta * rhs)
}
