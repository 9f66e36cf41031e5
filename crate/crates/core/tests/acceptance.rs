//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line.

mod common;

use std::path::Path;
use std::time::{Duration, Instant};

use addbasis_core::basis::{self, RemovalParameters};
use addbasis_core::bounds::{self, BoundName};
use addbasis_core::harness::generate::random_set;
use addbasis_core::harness::verify::{
    covering_sampled, diameter_count, kneser_exhaustive, kneser_triples, profile_shape,
};
use addbasis_core::harness::{load_corpus, run_corpus, run_entry, CorpusEntry, EntryOutcome};
use addbasis_core::{EventuallyPeriodicSet, FiniteIntSet};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn golden() -> Vec<CorpusEntry> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/golden.json");
    load_corpus(path).expect("golden corpus loads")
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn value(b: bounds::BoundValue) -> BigUint {
    b.exact_value().expect("certified").clone()
}

/// Pascal's triangle up to row `n`.
fn pascal(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![big(1)]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![big(1); i + 1];
        for j in 1..i {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows
}

fn choose(t: &[Vec<BigUint>], n: u64, k: u64) -> BigUint {
    if k > n {
        big(0)
    } else {
        t[n as usize][k as usize].clone()
    }
}

fn bound_domination(entries: &[CorpusEntry]) -> Outcome {
    if entries.len() < 50 {
        return Err(format!("only {} corpus entries", entries.len()));
    }
    let mut checked = 0;
    for e in entries {
        if e.basis.modulus() > 12 {
            return Err(format!(
                "{}: modulus {} above 12",
                e.name,
                e.basis.modulus()
            ));
        }
        let Ok(h) = basis::order(&e.basis, e.order_cap) else {
            continue;
        };
        let Ok(exact) = basis::remove_and_order(&e.basis, &e.remove, e.order_cap) else {
            continue;
        };
        let (h, exact) = (h.order, big(exact.order));
        if h > 8 {
            return Err(format!("{}: order {h} too large for the corpus", e.name));
        }
        let p = basis::removal_parameters(&e.basis, &e.remove)
            .map_err(|err| format!("{}: {err}", e.name))?;
        for b in [
            bounds::nash_general(h, p.k),
            bounds::farhi_d(h, p.d),
            bounds::farhi_eta(h, p.eta),
            bounds::farhi_mu(h, p.mu),
        ] {
            let name = b.name;
            let v = value(b);
            if exact > v {
                return Err(format!(
                    "{}: G(A\\X) = {exact} > {} = {v}",
                    e.name,
                    name.as_str()
                ));
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} entries, zero violations"))
}

fn micro_instance() -> Outcome {
    // {1} ∪ 2N
    let a = EventuallyPeriodicSet::new([0, 1], 2, 2, [0]).unwrap();
    let entry = CorpusEntry {
        name: "micro".into(),
        basis: a,
        remove: FiniteIntSet::from([2]),
        order_cap: 64,
        window: 512,
        ap_flag: true,
    };
    let EntryOutcome::Report(r) = run_entry(&entry) else {
        return Err("micro-instance skipped".into());
    };
    let got = |n| r.bound(n).cloned();
    let expect = (
        2,
        2,
        RemovalParameters {
            k: 1,
            d: 0,
            eta: 1,
            mu: 1,
        },
        [Some(big(5)), Some(big(5)), Some(big(6)), Some(big(5))],
    );
    let actual = (
        r.h,
        r.exact,
        r.params,
        [
            got(BoundName::Nash),
            got(BoundName::FarhiD),
            got(BoundName::FarhiEta),
            got(BoundName::FarhiMu),
        ],
    );
    if actual == expect && r.passed() {
        Ok("h = 2, G(A\\X) = 2, (k,d,η,μ) = (1,0,1,1), bounds (5,5,6,5)".into())
    } else {
        Err(format!("got {actual:?}"))
    }
}

fn formula_identities() -> Outcome {
    let t = pascal(60);
    for h in 1..=20u64 {
        for k in 1..=20u64 {
            let general = value(bounds::nash_general(h, k));
            let original = value(bounds::nash_original_sum(h, k));
            let oracle = choose(&t, h + k - 1, k)
                + (0..h)
                    .map(|i| choose(&t, k + i - 1, i) * big(h - i))
                    .sum::<BigUint>();
            if general != original || general != oracle {
                return Err(format!(
                    "nash at ({h},{k}): {general} vs {original} vs {oracle}"
                ));
            }
        }
    }
    for h in 1..=30u64 {
        for d in 0..=10u64 {
            let sum: BigUint = (0..h).map(|l| big(l * d + 1) * big(h - l + 1)).sum();
            if value(bounds::farhi_d(h, d)) != sum {
                return Err(format!("farhi_d({h},{d})"));
            }
        }
    }
    for h in 1..=50u64 {
        for eta in 1..=20u64 {
            if value(bounds::farhi_eta(h, eta)) != big(eta * (h - 1) + 1) * big(h + 1) {
                return Err(format!("farhi_eta({h},{eta})"));
            }
        }
    }
    for h in 1..=50u64 {
        let single = big((h * h + 3 * h) / 2);
        if value(bounds::nash_general(h, 1)) != single
            || value(bounds::farhi_mu(h, 1)) != single
            || value(bounds::farhi_d(h, 0)) != single
        {
            return Err(format!("single-element consistency at h = {h}"));
        }
    }
    Ok("nash, farhi_d, farhi_eta and k = 1 consistency exact".into())
}

fn lemma2() -> Outcome {
    let suite = diameter_count();
    // Independent pass: gcd of differences and the progression test by hand.
    for bits in 1u32..1 << 13 {
        let xs: Vec<i64> = (0..13).filter(|i| bits >> i & 1 == 1).collect();
        let diam = xs[xs.len() - 1] - xs[0];
        let delta = xs
            .windows(2)
            .fold(0i64, |g, w| num_integer::gcd(g, w[1] - w[0]));
        let d = if delta == 0 { 0 } else { diam / delta };
        let step = if xs.len() > 1 { xs[1] - xs[0] } else { 0 };
        let ap = xs.windows(2).all(|w| w[1] - w[0] == step);
        let size = xs.len() as i64;
        if size > d + 1 || (size == d + 1) != ap {
            return Err(format!("X = {xs:?}"));
        }
    }
    match suite.counterexample {
        None => Ok(format!("{} subsets of [0,12]", suite.cases)),
        Some(c) => Err(c),
    }
}

fn kneser() -> Outcome {
    let suites = [kneser_exhaustive(8), kneser_triples(6), profile_shape(10)];
    for s in &suites {
        if let Some(c) = &s.counterexample {
            return Err(format!("{}: {c}", s.name));
        }
    }
    Ok(suites
        .iter()
        .map(|s| format!("{} {}", s.name, s.cases))
        .collect::<Vec<_>>()
        .join(", "))
}

fn lemma3() -> Outcome {
    let s = covering_sampled(0, 200, 400);
    match (s.counterexample, s.cases >= 200) {
        (None, true) => Ok(format!("{} sampled cases on [0,400]", s.cases)),
        (Some(c), _) => Err(c),
        (None, false) => Err(format!("only {} cases", s.cases)),
    }
}

fn structural(entries: &[CorpusEntry]) -> Outcome {
    let mut checked = 0;
    for o in run_corpus(entries) {
        let EntryOutcome::Report(r) = o else { continue };
        if !(r.decomposition && r.theorem5) {
            return Err(format!(
                "{}: decomposition {}, construction {}",
                r.name, r.decomposition, r.theorem5
            ));
        }
        checked += 1;
    }
    Ok(format!("{checked} entries"))
}

fn oracle_equivalence(entries: &[CorpusEntry]) -> Outcome {
    const MAX_H: u64 = 16;
    let mut orders = 0;
    for e in entries {
        let b = e.basis.remove_finite(&e.remove);
        for (label, set) in [("A", &e.basis), ("A\\X", &b)] {
            let engine = basis::order(set, MAX_H).ok().map(|r| r.order);
            let window = common::oracle_window(set, MAX_H).max(e.window as i64);
            let oracle = common::order_oracle(set, MAX_H, window);
            if engine != oracle {
                return Err(format!(
                    "{} {label}: engine {engine:?}, oracle {oracle:?}",
                    e.name
                ));
            }
            orders += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..100 {
        let a = random_set(&mut rng, 12, 30, 4);
        let b = random_set(&mut rng, 12, 30, 4);
        let sum = a.sumset(&b).map_err(|err| err.to_string())?;
        let hi = 300;
        let brute = common::sumset_window(&a, &b, hi);
        let lo = common::least(&a).unwrap() + common::least(&b).unwrap();
        let engine = common::members(&sum, lo - 50, hi);
        if engine != brute {
            return Err(format!("pair {i}: {a} + {b}"));
        }
    }
    Ok(format!("{orders} orders, 100 sumsets"))
}

fn main() {
    let entries = golden();
    let criteria: Vec<Criterion> = vec![
        (
            "1 bound domination",
            Duration::from_secs(60),
            Box::new(|| bound_domination(&entries)),
        ),
        (
            "2 worked micro-instance",
            Duration::MAX,
            Box::new(micro_instance),
        ),
        (
            "3 formula identities",
            Duration::from_secs(5),
            Box::new(formula_identities),
        ),
        (
            "4 diameter count",
            Duration::from_secs(10),
            Box::new(lemma2),
        ),
        (
            "5 kneser exhaustive",
            Duration::from_secs(120),
            Box::new(kneser),
        ),
        ("6 covering relation", Duration::MAX, Box::new(lemma3)),
        (
            "7 decomposition and construction",
            Duration::MAX,
            Box::new(|| structural(&entries)),
        ),
        (
            "8 engine oracle equivalence",
            Duration::MAX,
            Box::new(|| oracle_equivalence(&entries)),
        ),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed > limit => {
                Err(format!("{msg}; took {elapsed:.2?}, limit {limit:.0?}"))
            }
            other => other,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {name}: {msg} ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name}: {msg} ({elapsed:.2?})");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
