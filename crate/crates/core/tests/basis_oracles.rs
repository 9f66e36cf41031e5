mod common;

use addbasis_core::basis::{self, DEFAULT_ORDER_CAP};
use addbasis_core::bounds;
use addbasis_core::harness::generate::{random_removal, random_set};
use addbasis_core::{Error, EventuallyPeriodicSet, FiniteIntSet};
use common::{least, members};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A random basis of small order together with a removal from it.
fn instance(seed: u64) -> (EventuallyPeriodicSet, FiniteIntSet) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = loop {
        let a = random_set(&mut rng, 8, 20, 3);
        if basis::order(&a, 8).is_ok() {
            break a;
        }
    };
    let x = random_removal(&mut rng, &a, 4);
    (a, x)
}

fn brute_gcd(s: &EventuallyPeriodicSet) -> u64 {
    let xs = members(
        s,
        common::FLOOR,
        s.threshold() + 3 * s.modulus() as i64 + 40,
    );
    xs.windows(2)
        .fold(0, |g, w| num_integer::gcd(g, (w[1] - w[0]) as u64))
}

fn brute_eta(b: &EventuallyPeriodicSet, x: &FiniteIntSet) -> u64 {
    let reach = (x.max().unwrap() - x.min().unwrap()).max(1);
    let xs = members(
        b,
        common::FLOOR,
        b.threshold() + 3 * b.modulus() as i64 + 2 * reach + 40,
    );
    let mut best = u64::MAX;
    for (i, &p) in xs.iter().enumerate() {
        if let Some(&q) = xs[i + 1..].iter().find(|&&q| q - p >= reach) {
            best = best.min((q - p) as u64);
        }
    }
    best
}

fn brute_mu(b: &EventuallyPeriodicSet, x: &FiniteIntSet) -> u64 {
    let (lo, hi) = (x.min().unwrap(), x.max().unwrap());
    members(
        b,
        common::FLOOR,
        hi + b.threshold().abs() + 3 * b.modulus() as i64 + 40,
    )
    .into_iter()
    .filter(|y| !x.contains(*y))
    .map(|y| (hi.max(y) - lo.min(y)) as u64)
    .min()
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn eventual_gcd_matches_differences(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_set(&mut rng, 12, 20, 4);
        prop_assume!(!s.is_finite());
        prop_assert_eq!(basis::eventual_gcd(&s).unwrap(), brute_gcd(&s));
    }

    #[test]
    fn order_matches_bitset_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_set(&mut rng, 10, 20, 4);
        let engine = basis::order(&s, 12).ok().map(|r| r.order);
        let oracle = common::order_oracle(&s, 12, common::oracle_window(&s, 12));
        prop_assert_eq!(engine, oracle);
    }

    #[test]
    fn parameters_match_brute_force(seed in any::<u64>()) {
        let (a, x) = instance(seed);
        let b = a.remove_finite(&x);
        let p = basis::removal_parameters(&a, &x).unwrap();
        let xs = x.as_slice();
        let delta = xs.windows(2).fold(0u64, |g, w| num_integer::gcd(g, (w[1] - w[0]) as u64)).max(1);
        prop_assert_eq!(p.k, xs.len() as u64);
        prop_assert_eq!(p.d, (xs[xs.len() - 1] - xs[0]) as u64 / delta);
        prop_assert_eq!(p.eta, brute_eta(&b, &x));
        prop_assert_eq!(p.mu, brute_mu(&b, &x));
        prop_assert!(p.mu >= 1);
    }

    #[test]
    fn removal_orders_respect_every_bound(seed in any::<u64>()) {
        let (a, x) = instance(seed);
        let h = basis::order(&a, DEFAULT_ORDER_CAP).unwrap().order;
        match basis::remove_and_order(&a, &x, DEFAULT_ORDER_CAP) {
            Ok(r) => {
                let p = basis::removal_parameters(&a, &x).unwrap();
                let exact = BigUint::from(r.order);
                for b in bounds::compare_all(h, &p, x.is_arithmetic_progression()) {
                    prop_assert!(&exact <= b.exact_value().unwrap(), "{:?}", b);
                }
                prop_assert!(basis::decomposition_check(&a, &x, h).unwrap());
                prop_assert!(basis::theorem5_construction_check(&a, &x, DEFAULT_ORDER_CAP).unwrap());
            }
            Err(Error::NotABasis(_)) => prop_assert!(brute_gcd(&a.remove_finite(&x)) > 1 || a.remove_finite(&x).is_finite()),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn order_certificates(seed in any::<u64>()) {
        let (a, _) = instance(seed);
        let r = basis::order(&a, 8).unwrap();
        prop_assert!(r.certificate.is_cofinite());
        prop_assert_eq!(&r.certificate, &a.nfold(r.order as u32).unwrap());
        if let Some(sub) = &r.sub_certificate {
            prop_assert!(!sub.is_cofinite());
        } else {
            prop_assert_eq!(r.order, 1);
        }
    }
}

#[test]
fn micro_parameters() {
    let a = EventuallyPeriodicSet::new([0, 1], 2, 2, [0]).unwrap();
    let x = FiniteIntSet::from([2]);
    let p = basis::removal_parameters(&a, &x).unwrap();
    assert_eq!((p.k, p.d, p.eta, p.mu), (1, 0, 1, 1));
    assert_eq!(basis::remove_and_order(&a, &x, 64).unwrap().order, 2);
    assert!(matches!(
        basis::remove_and_order(&a, &FiniteIntSet::from([1]), 64),
        Err(Error::NotABasis(_))
    ));
}

#[test]
fn removal_outside_basis() {
    let a = EventuallyPeriodicSet::progression(0, 3).unwrap();
    assert_eq!(
        basis::remove_and_order(&a, &FiniteIntSet::from([3, 4]), 64),
        Err(Error::XNotSubset { element: 4 })
    );
}

#[test]
fn covering_instances_from_the_window() {
    let b = EventuallyPeriodicSet::new([0, 3], 5, 4, [1, 2]).unwrap();
    let x = FiniteIntSet::from([-2, 1, 4]);
    for u in 0..=3 {
        for v in 0..=3 {
            let c = basis::lemma3_cover_check(&b, &x, u, v, 0, 400).unwrap();
            assert!(c.holds(), "u = {u}, v = {v}: {c:?}");
        }
    }
    assert_eq!(least(&b), Some(0));
}
