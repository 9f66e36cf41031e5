//! Closed-form upper bounds for the order of `A \ X`, evaluated exactly.
//!
//! Certified bounds are computed in arbitrary precision. The Erdős–Graham
//! estimate and the asymptotic magnitude estimates carry unspecified `O(·)`
//! terms, so they are returned as floating-point references only.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::basis::RemovalParameters;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    /// `(h+1)·C(h+k-1, k) - k·C(h+k-1, k+1)`.
    Nash,
    /// The unsimplified form of [`BoundName::Nash`].
    NashOriginal,
    FarhiD,
    FarhiEta,
    FarhiMu,
    RemarkD,
    /// `farhi_d(h, k - 1)` when `X` is an arithmetic progression.
    Cor2,
    ErdosGraham,
    Grekos,
    NashSingle,
    Plagne,
}

impl BoundName {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundName::Nash => "nash",
            BoundName::NashOriginal => "nash_original",
            BoundName::FarhiD => "farhi_d",
            BoundName::FarhiEta => "farhi_eta",
            BoundName::FarhiMu => "farhi_mu",
            BoundName::RemarkD => "remark_d",
            BoundName::Cor2 => "cor2",
            BoundName::ErdosGraham => "erdos_graham",
            BoundName::Grekos => "grekos",
            BoundName::NashSingle => "nash_single",
            BoundName::Plagne => "plagne",
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundNumber {
    Exact(#[serde(serialize_with = "serialize_biguint")] BigUint),
    /// Not a certified bound at finite `h`.
    Reference(f64),
}

fn serialize_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(n) => s.serialize_u64(n),
        None => s.serialize_str(&v.to_string()),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundInputs {
    pub h: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundValue {
    pub name: BoundName,
    pub value: BoundNumber,
    pub inputs: BoundInputs,
}

impl BoundValue {
    fn exact(name: BoundName, value: BigUint, inputs: BoundInputs) -> Self {
        BoundValue {
            name,
            value: BoundNumber::Exact(value),
            inputs,
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self.value, BoundNumber::Exact(_))
    }

    pub fn exact_value(&self) -> Option<&BigUint> {
        match &self.value {
            BoundNumber::Exact(v) => Some(v),
            BoundNumber::Reference(_) => None,
        }
    }

    pub fn as_f64(&self) -> f64 {
        match &self.value {
            BoundNumber::Exact(v) => v.to_f64().unwrap_or(f64::INFINITY),
            BoundNumber::Reference(x) => *x,
        }
    }
}

impl fmt::Display for BoundNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundNumber::Exact(v) => write!(f, "{v}"),
            BoundNumber::Reference(x) => write!(f, "{x:.3}"),
        }
    }
}

/// `C(n, k)` in arbitrary precision; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // Exact at every step: acc = C(n, i) before the update.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn inputs_hk(h: u64, k: u64) -> BoundInputs {
    BoundInputs {
        h,
        k: Some(k),
        ..Default::default()
    }
}

pub fn nash_general(h: u64, k: u64) -> BoundValue {
    let n = h + k - 1;
    let value = big(h + 1) * binomial(n, k) - big(k) * binomial(n, k + 1);
    BoundValue::exact(BoundName::Nash, value, inputs_hk(h, k))
}

/// `C(h+k-1, k) + Σ_{i<h} C(k+i-1, i)·(h-i)`.
pub fn nash_original_sum(h: u64, k: u64) -> BoundValue {
    let mut value = binomial(h + k - 1, k);
    for i in 0..h {
        value += binomial(k + i - 1, i) * big(h - i);
    }
    BoundValue::exact(BoundName::NashOriginal, value, inputs_hk(h, k))
}

/// `h(h+3)/2 + d·h(h-1)(h+4)/6`.
pub fn farhi_d(h: u64, d: u64) -> BoundValue {
    let (bh, bd) = (big(h), big(d));
    let value = &bh * big(h + 3) / 2u32 + bd * &bh * big(h - 1) * big(h + 4) / 6u32;
    BoundValue::exact(
        BoundName::FarhiD,
        value,
        BoundInputs {
            h,
            d: Some(d),
            ..Default::default()
        },
    )
}

/// `η(h² - 1) + h + 1`.
pub fn farhi_eta(h: u64, eta: u64) -> BoundValue {
    let value = big(eta) * (big(h) * big(h) - 1u32) + big(h + 1);
    BoundValue::exact(
        BoundName::FarhiEta,
        value,
        BoundInputs {
            h,
            eta: Some(eta),
            ..Default::default()
        },
    )
}

/// `hμ(hμ + 3)/2`.
pub fn farhi_mu(h: u64, mu: u64) -> BoundValue {
    let hm = big(h) * big(mu);
    let value = &hm * (&hm + 3u32) / 2u32;
    BoundValue::exact(
        BoundName::FarhiMu,
        value,
        BoundInputs {
            h,
            mu: Some(mu),
            ..Default::default()
        },
    )
}

/// `hd(hd+1)(hd+5)/6`.
pub fn remark_d(h: u64, d: u64) -> BoundValue {
    let hd = big(h) * big(d);
    let value = &hd * (&hd + 1u32) * (&hd + 5u32) / 6u32;
    BoundValue::exact(
        BoundName::RemarkD,
        value,
        BoundInputs {
            h,
            d: Some(d),
            ..Default::default()
        },
    )
}

/// Bounds for removing a single element: Erdős–Graham (reference only),
/// Grekos, Nash and Plagne.
pub fn historical_single(h: u64) -> Vec<BoundValue> {
    let inputs = inputs_hk(h, 1);
    let hf = h as f64;
    let eg = 1.25 * hf * hf + 0.5 * hf * hf.ln() + 2.0 * hf;
    vec![
        BoundValue {
            name: BoundName::ErdosGraham,
            value: BoundNumber::Reference(eg),
            inputs: inputs.clone(),
        },
        BoundValue::exact(BoundName::Grekos, big(h * h + h), inputs.clone()),
        BoundValue::exact(
            BoundName::NashSingle,
            big((h * h + 3 * h) / 2),
            inputs.clone(),
        ),
        BoundValue::exact(
            BoundName::Plagne,
            big(h * (h + 1) / 2 + (h - 1).div_ceil(3)),
            inputs,
        ),
    ]
}

/// Main terms of the asymptotic bounds on `G_k(h)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MagnitudeReference {
    /// `4/3 · (h/(k+1))^(k+1)`.
    pub lower: f64,
    /// `2/k! · h^(k+1)`.
    pub upper: f64,
}

pub fn magnitude_reference(h: u64, k: u64) -> MagnitudeReference {
    let (hf, kf) = (h as f64, k as f64);
    let k_fact: f64 = (1..=k).map(|i| i as f64).product();
    MagnitudeReference {
        lower: 4.0 / 3.0 * (hf / (kf + 1.0)).powi(k as i32 + 1),
        upper: 2.0 / k_fact * hf.powi(k as i32 + 1),
    }
}

/// Every certified bound that applies to the given parameters, ascending.
///
/// `remark_d` appears only for `d >= 1`; `cor2` only when `ap` says `X` is an
/// arithmetic progression.
pub fn compare_all(h: u64, params: &RemovalParameters, ap: bool) -> Vec<BoundValue> {
    let mut out = vec![
        nash_general(h, params.k),
        farhi_d(h, params.d),
        farhi_eta(h, params.eta),
        farhi_mu(h, params.mu),
    ];
    if params.d >= 1 {
        out.push(remark_d(h, params.d));
    }
    if ap {
        let mut cor2 = farhi_d(h, params.k - 1);
        cor2.name = BoundName::Cor2;
        cor2.inputs.k = Some(params.k);
        out.push(cor2);
    }
    out.sort_by(|a, b| a.exact_value().cmp(&b.exact_value()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn val(b: BoundValue) -> u64 {
        b.exact_value().unwrap().to_u64().unwrap()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), big(10));
        assert_eq!(binomial(3, 4), big(0));
        assert_eq!(binomial(0, 0), big(1));
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }

    #[test]
    fn nash_values() {
        assert_eq!(val(nash_general(2, 1)), 5);
        assert_eq!(val(nash_general(2, 2)), 7);
        assert_eq!(val(nash_original_sum(2, 2)), 7);
        for k in 1..6 {
            assert_eq!(val(nash_original_sum(1, k)), 2);
            assert_eq!(val(nash_general(1, k)), 2);
        }
    }

    #[test]
    fn farhi_values() {
        assert_eq!(val(farhi_d(2, 1)), 7);
        for h in 1..20 {
            assert_eq!(val(farhi_d(h, 0)), h * (h + 3) / 2);
        }
        assert_eq!(val(farhi_eta(2, 1)), 6);
        assert_eq!(val(farhi_eta(1, 9)), 2);
        assert_eq!(val(farhi_mu(2, 1)), 5);
        assert_eq!(val(farhi_mu(2, 2)), 14);
        assert_eq!(val(remark_d(2, 1)), 7);
        assert_eq!(val(remark_d(1, 1)), 2);
    }

    #[test]
    fn historical() {
        let hs = historical_single(2);
        assert_eq!(hs[3].name, BoundName::Plagne);
        assert_eq!(val(hs[3].clone()), 4);
        let hs = historical_single(3);
        assert_eq!(val(hs[1].clone()), 12);
        assert_eq!(val(hs[2].clone()), 9);
        assert!(!hs[0].is_certified());
    }

    #[test]
    fn magnitude() {
        let m = magnitude_reference(10, 1);
        assert!((m.lower - 100.0 / 3.0).abs() < 1e-9);
        assert!((m.upper - 200.0).abs() < 1e-9);
    }

    #[test]
    fn compare_single_element() {
        let p = RemovalParameters {
            k: 1,
            d: 0,
            eta: 1,
            mu: 1,
        };
        let all = compare_all(2, &p, false);
        let names: Vec<_> = all.iter().map(|b| b.name).collect();
        let values: Vec<_> = all.into_iter().map(val).collect();
        assert_eq!(values, vec![5, 5, 5, 6]);
        assert_eq!(names.last(), Some(&BoundName::FarhiEta));
        assert!(!names.contains(&BoundName::RemarkD));
    }

    #[test]
    fn compare_with_progression() {
        let p = RemovalParameters {
            k: 3,
            d: 2,
            eta: 4,
            mu: 5,
        };
        let all = compare_all(3, &p, true);
        let cor2 = all.iter().find(|b| b.name == BoundName::Cor2).unwrap();
        assert_eq!(cor2.exact_value(), farhi_d(3, 2).exact_value());
        assert!(all.iter().any(|b| b.name == BoundName::RemarkD));
        assert!(all
            .windows(2)
            .all(|w| w[0].exact_value() <= w[1].exact_value()));
    }
}
