//! Acceptance suite: one line per criterion, exit status 1 if any fails.

mod common;

use parabolic_core::closed_forms::{
    main_lemma_window, reduced_form_series, verify_main_lemma, verify_q_iterate,
};
use parabolic_core::ramification::{
    definitional_truncation, is_minimally_ramified, ramification_profile, resit, MinimalityMode,
};
use parabolic_core::rings::{FiniteField, LaurentField, Ring, TriState};
use parabolic_core::series::{ParabolicGerm, TruncatedSeries, Wideg};
use parabolic_core::valuation::{cycle_valuations, periodic_valuation_bound, Rational};
use parabolic_lab::checks;
use parabolic_lab::parse::{parse_scalar, parse_series};
use parabolic_lab::sample::{self, PQ_PAIRS};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::time::Instant;

const SEED: u64 = 0x5EED_2024;

/// Runs `count` cases of `f` on streams `(criterion, config, case)`, in case order.
fn cases<T: Send>(
    criterion: u64,
    config: u64,
    count: u64,
    f: impl Fn(&mut ChaCha8Rng) -> T + Sync,
) -> Vec<T> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            f(&mut sample::rng_for(
                SEED,
                criterion << 40 | config << 32 | i,
            ))
        })
        .collect()
}

fn prime(p: u64) -> FiniteField {
    FiniteField::prime(p).unwrap()
}

struct Tally {
    total: usize,
    passed: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            total: 0,
            passed: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(what());
        }
    }

    fn all(&self) -> bool {
        self.total > 0 && self.passed == self.total
    }

    fn summary(&self) -> String {
        let mut s = format!("{}/{} cases", self.passed, self.total);
        if let Some(f) = &self.first_failure {
            s.push_str(&format!("; first failure: {f}"));
        }
        s
    }
}

fn main_lemma_and_q_iterate() -> [(bool, String); 2] {
    let start = Instant::now();
    let (mut ml, mut qi) = (Tally::new(), Tally::new());
    for (idx, &(p, q)) in PQ_PAIRS.iter().enumerate() {
        let f = prime(p);
        let gamma = f.root_of_unity(q).unwrap();
        for n in [1u32, 2] {
            let window = main_lemma_window(p, q, n);
            let results = cases(1, (idx as u64) << 4 | n as u64, 50, |rng| {
                let a = sample::elements(&f, (window - 2) / q as usize, rng);
                let m = verify_main_lemma(&f, &gamma, n, &a, window).map(|r| r.pass);
                let i = verify_q_iterate(&f, &gamma, &a).map(|r| r.pass);
                (a, m, i)
            });
            for (a, m, i) in results {
                ml.record(m == Ok(true), || {
                    format!("p={p} q={q} n={n} a={a:?}: {m:?}")
                });
                qi.record(i == Ok(true), || format!("p={p} q={q} a={a:?}: {i:?}"));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    [
        (
            ml.all() && secs < 60.0,
            format!("{} in {secs:.2} s", ml.summary()),
        ),
        (qi.all(), qi.summary()),
    ]
}

fn delta_tower() -> (bool, String) {
    let mut t = Tally::new();
    for p in [2u64, 3, 5] {
        let f = prime(p);
        for out in cases(3, p, 100, |rng| {
            let mut c = vec![f.zero(), sample::nonzero_element(&f, rng)];
            c.extend(sample::elements(&f, 22, rng));
            checks::delta_tower_identity(&TruncatedSeries::new(f, c, 24))
        }) {
            t.record(matches!(out, Ok(ref o) if o.pass), || {
                format!("p={p}: {out:?}")
            });
        }
    }
    (t.all(), t.summary())
}

/// Criteria 4 and 5 share their germs.
fn ramification_and_minimality() -> [(bool, String); 2] {
    let (mut bounds, mut agree) = (Tally::new(), Tally::new());
    let (mut minimal, mut not_minimal, mut vacuous) = (0, 0, 0);
    for (idx, &(p, q)) in PQ_PAIRS.iter().enumerate() {
        let f = prime(p);
        let n = definitional_truncation(p, q, 2);
        for (b, m) in cases(4, idx as u64, 200, |rng| {
            let g = sample::germ(&f, q, n, rng);
            (
                checks::ramification_bounds(&g, 2),
                checks::minimality_agreement(&g, 2),
            )
        }) {
            bounds.record(matches!(b, Ok(ref o) if o.pass), || {
                format!("p={p} q={q}: {b:?}")
            });
            if matches!(&b, Ok(o) if o.detail["i"].as_array().is_some_and(|i| i.len() == 1 && i[0].is_string()))
            {
                vacuous += 1;
            }
            agree.record(matches!(m, Ok(ref o) if o.pass), || {
                format!("p={p} q={q}: {m:?}")
            });
            if let Ok(o) = &m {
                match o.detail["definitional"]["verdict"].as_str() {
                    Some("yes") => minimal += 1,
                    Some("no") => not_minimal += 1,
                    _ => {}
                }
            }
        }
    }
    [
        (
            bounds.all(),
            format!(
                "{}; {vacuous} with i_0 past the truncation",
                bounds.summary()
            ),
        ),
        (
            agree.all() && minimal > 0 && not_minimal > 0,
            format!("{}; {minimal} minimal, {not_minimal} not", agree.summary()),
        ),
    ]
}

fn normal_form() -> (bool, String) {
    let mut t = Tally::new();
    for (idx, &(p, q)) in [(3u64, 2u64), (5, 2), (5, 4)].iter().enumerate() {
        let f = prime(p);
        for out in cases(6, idx as u64, 100, |rng| {
            checks::normal_form(&sample::germ(&f, q, 4 * q as usize + 4, rng))
        }) {
            t.record(matches!(out, Ok(ref o) if o.pass), || {
                format!("p={p} q={q}: {out:?}")
            });
        }
    }
    (t.all(), t.summary())
}

fn quasi_invariance() -> (bool, String) {
    let mut t = Tally::new();
    let mut rejected = 0;
    for (idx, &(p, q)) in PQ_PAIRS.iter().enumerate() {
        let f = prime(p);
        let n = sample::quasi_truncation(p, q, 1);
        for (out, r) in cases(7, idx as u64, 50, |rng| {
            let (g, r) = sample::germ_with_exact_levels(&f, q, n, 1, rng);
            let h = sample::tangent_change(&f, n, rng);
            (checks::quasi_invariance(&g, &h, 1), r)
        }) {
            rejected += r;
            let ok = matches!(out, Ok(ref o) if o.pass && o.detail["decided"] == true);
            t.record(ok, || format!("p={p} q={q}: {out:?}"));
        }
    }
    (
        t.all(),
        format!(
            "{}; {rejected} draws with i_0 or i_1 past the truncation skipped",
            t.summary()
        ),
    )
}

fn show_valuations(vs: &[(Rational, usize)]) -> String {
    let parts: Vec<String> = vs.iter().map(|(v, m)| format!("{v} (x{m})")).collect();
    format!("[{}]", parts.join(", "))
}

fn laurent3() -> LaurentField {
    LaurentField::new(prime(3))
}

fn desk_germ(k: &LaurentField) -> ParabolicGerm<LaurentField> {
    ParabolicGerm::new(parse_series(k, "z + t*z^2 + z^3").unwrap()).unwrap()
}

fn desk_experiment() -> (bool, String) {
    let start = Instant::now();
    let k = laurent3();
    let f = desk_germ(&k);
    let mut notes = Vec::new();
    let mut ok = true;
    let mut check = |cond: bool, what: String| {
        ok &= cond;
        notes.push(what);
    };

    let prof = ramification_profile(&f, 0).unwrap();
    check(prof.delta(0) == Some(&k.t()), "delta0 = t".into());
    let r = resit(&f).unwrap();
    check(
        r == parse_scalar(&k, "1 - t^-2").unwrap(),
        format!("resit = {}", k.format(&r)),
    );

    let cert = periodic_valuation_bound(&f, 1).unwrap();
    let third = Rational::new(1, 3);
    check(
        cert.bound_valuation == third,
        format!("bound(1) = {}", cert.bound_valuation),
    );

    let one = cycle_valuations(&f, 1, 1000).unwrap();
    let all_below = one.positive_valuations.iter().all(|(v, _)| *v <= third);
    check(
        one.quotient.degree() == Some(24)
            && one.integral
            && all_below
            && !one.positive_valuations.is_empty(),
        format!(
            "n=1 quotient degree {}, positive root valuations {}",
            one.quotient.degree().unwrap_or(0),
            show_valuations(&one.positive_valuations)
        ),
    );

    let zero = cycle_valuations(&f, 0, 1000).unwrap();
    let i0 = prof.i(0).finite().unwrap() as usize;
    // The quotient is (f - z)/z, so wideg(f - z) is one more.
    let wideg_f = match zero.wideg {
        Wideg::Finite(w) => Some(w + 1),
        _ => None,
    };
    check(
        zero.positive_valuations == vec![(Rational::from_integer(1), 1)]
            && wideg_f == Some(3)
            && wideg_f == Some(i0 + 1 + 1)
            && zero.equality_condition == TriState::Yes,
        format!(
            "n=0 positive root valuations {}, wideg(f - z) = {} = i_0 + q + 1",
            show_valuations(&zero.positive_valuations),
            wideg_f.map_or("?".into(), |w| w.to_string())
        ),
    );

    let secs = start.elapsed().as_secs_f64();
    check(secs < 5.0, format!("{secs:.2} s"));
    (ok, notes.join("; "))
}

fn uniform_bound() -> (bool, String) {
    let k = laurent3();
    let germs = [
        "z + t*z^2 + z^3",
        "z + t*z^2 + (1 + t)*z^3",
        "z + (1 + t^2)*z^2 + t*z^4",
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for s in germs {
        let f = ParabolicGerm::new(parse_series(&k, s).unwrap()).unwrap();
        let certified = is_minimally_ramified(&f, MinimalityMode::Criterion).map(|v| v.verdict);
        let bounds: Vec<Option<Rational>> = (1..=3)
            .map(|n| {
                periodic_valuation_bound(&f, n)
                    .ok()
                    .map(|c| c.bound_valuation)
            })
            .collect();
        let uniform = bounds[0].is_some() && bounds.iter().all(|b| *b == bounds[0]);
        ok &= certified == Ok(TriState::Yes) && uniform;
        let shown: Vec<String> = bounds
            .iter()
            .map(|b| b.map_or("none".into(), |r| r.to_string()))
            .collect();
        notes.push(format!("{s}: {}", shown.join(", ")));
    }
    (ok, notes.join("; "))
}

fn divisibility() -> (bool, String) {
    let configs: [(u64, u64, usize, u32); 7] = [
        (2, 1, 3, 1),
        (2, 1, 3, 2),
        (3, 1, 3, 1),
        (3, 1, 2, 2),
        (3, 2, 2, 1),
        (5, 1, 2, 1),
        (5, 2, 2, 1),
    ];
    let mut t = Tally::new();
    for (idx, &(p, q, degree, n)) in configs.iter().enumerate() {
        let k = LaurentField::new(prime(p));
        for out in cases(10, idx as u64, 10, |rng| {
            let f = sample::laurent_polynomial_germ(&k, q, degree, 2, rng);
            checks::divisibility(&f, n)
        }) {
            t.record(matches!(out, Ok(ref o) if o.pass), || {
                format!("p={p} q={q} n={n}: {out:?}")
            });
        }
    }
    (t.all(), t.summary())
}

fn semiconjugacy() -> (bool, String) {
    let mut t = Tally::new();
    for (idx, &(p, q)) in PQ_PAIRS.iter().enumerate() {
        let f = prime(p);
        let gamma = f.root_of_unity(q).unwrap();
        let n = 6 * q as usize + 2;
        for (j, m) in [q, q * p].into_iter().enumerate() {
            for out in cases(11, (idx as u64) << 1 | j as u64, 50, |rng| {
                let a = sample::elements(&f, (n - 2) / q as usize, rng);
                let g = ParabolicGerm::new(reduced_form_series(&f, &gamma, q, &a, n))?;
                checks::semiconjugacy(&g, m)
            }) {
                t.record(matches!(out, Ok(ref o) if o.pass), || {
                    format!("p={p} q={q} m={m}: {out:?}")
                });
            }
        }
    }
    (t.all(), t.summary())
}

fn golden() -> (bool, String) {
    let mut t = Tally::new();
    for (stem, args) in common::GOLDEN {
        let out = common::check_golden(stem, args);
        t.record(out.is_ok(), || out.unwrap_err());
    }
    (t.all(), t.summary().replace("cases", "documents"))
}

fn main() {
    let [c1, c2] = main_lemma_and_q_iterate();
    let [c4, c5] = ramification_and_minimality();
    let results = [
        ("main lemma sweep", c1),
        ("q-iterate formula", c2),
        ("delta tower", delta_tower()),
        ("ramification lower bound and growth", c4),
        (
            "criterion agrees with definition, M_q vanishes off the minimal locus",
            c5,
        ),
        ("normal form", normal_form()),
        ("quasi-invariance", quasi_invariance()),
        ("desk experiment", desk_experiment()),
        ("uniform bound for n = 1, 2, 3", uniform_bound()),
        ("divisibility with integral quotient", divisibility()),
        ("semiconjugacy", semiconjugacy()),
        ("golden CLI output", golden()),
    ];
    let mut failed = 0;
    for (i, (name, (pass, detail))) in results.iter().enumerate() {
        println!(
            "criterion {:>2} {}: {name}: {detail}",
            i + 1,
            if *pass { "PASS" } else { "FAIL" }
        );
        failed += usize::from(!pass);
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
