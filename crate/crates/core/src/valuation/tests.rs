use super::*;
use crate::error::Error;
use crate::ramification::{is_minimally_ramified, MinimalityMode};
use crate::rings::{LaurentField, Ring, TriState};
use crate::series::{ParabolicGerm, TruncatedSeries, Wideg};
use crate::testing::{laurent, tgerm, tpoly};
use proptest::prelude::*;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn tseries(k: &LaurentField, cs: &[&[i64]]) -> TruncatedSeries<LaurentField> {
    TruncatedSeries::polynomial(*k, cs.iter().map(|c| tpoly(k, c)).collect())
}

#[test]
fn newton_examples() {
    let k = laurent(3);
    let poly = tseries(&k, &[&[0, -1], &[], &[1]]);
    let np = newton_polygon(&poly).unwrap();
    assert_eq!(
        np.segments,
        vec![Segment {
            slope: r(-1, 2),
            length: 2
        }]
    );
    assert_eq!(np.root_valuations(), vec![(r(1, 2), 2)]);

    let np = newton_polygon(&tseries(&k, &[&[0, -1], &[1]])).unwrap();
    assert_eq!(np.root_valuations(), vec![(r(1, 1), 1)]);

    let np = newton_polygon(&tseries(&k, &[&[], &[], &[0, 1], &[1]])).unwrap();
    assert_eq!(np.ord(), 2);
    assert_eq!(
        np.segments,
        vec![Segment {
            slope: r(-1, 1),
            length: 1
        }]
    );
    assert_eq!(np.vertices, vec![(2, r(1, 1)), (3, r(0, 1))]);
}

#[test]
fn hull_drops_points_on_and_above_chords() {
    let pts = [
        (0, r(4, 1)),
        (1, r(2, 1)),
        (2, r(3, 1)),
        (3, r(0, 1)),
        (4, r(1, 1)),
        (6, r(1, 1)),
    ];
    let np = NewtonPolygon::from_points(&pts).unwrap();
    assert_eq!(
        np.vertices,
        vec![(0, r(4, 1)), (1, r(2, 1)), (3, r(0, 1)), (6, r(1, 1))]
    );
    assert_eq!(
        np.root_valuations(),
        vec![(r(2, 1), 1), (r(1, 1), 2), (r(-1, 3), 3)]
    );
    assert_eq!(np.positive_root_valuations().len(), 2);
    assert!(NewtonPolygon::from_points(&[]).is_err());
    assert!(newton_polygon(&tseries(&laurent(2), &[])).is_err());
}

#[test]
fn inexact_input_is_rejected() {
    let k = laurent(3);
    let trunc = tseries(&k, &[&[], &[1]]).truncate(4);
    assert_eq!(newton_polygon(&trunc).unwrap_err(), Error::NotAPolynomial);
    let fuzzy = TruncatedSeries::polynomial(k, vec![k.big_o(3).unwrap(), k.one()]);
    assert_eq!(
        newton_polygon(&fuzzy).unwrap_err(),
        Error::IndeterminateValuation
    );
}

fn desk_germ() -> ParabolicGerm<LaurentField> {
    let k = laurent(3);
    tgerm(&k, &[&[], &[1], &[0, 1], &[1]])
}

#[test]
fn bound_examples() {
    let cert = periodic_valuation_bound(&desk_germ(), 1).unwrap();
    let k = laurent(3);
    // 1 - t^-2
    let b = k.base();
    let expected = k.from_coeffs(-2, vec![b.from_int(-1), b.zero(), b.one()], None);
    assert_eq!(cert.resit.as_ref(), Some(&expected));
    assert_eq!(cert.delta0_valuation, 1);
    assert_eq!(cert.branch, BoundBranch::Generic);
    assert_eq!(cert.bound_valuation, r(1, 3));
    assert_eq!(cert.lemma_bound, Some(r(1, 3)));

    let cert0 = periodic_valuation_bound(&desk_germ(), 0).unwrap();
    assert_eq!(cert0.bound_valuation, r(1, 1));
    assert_eq!(cert0.equality_condition, TriState::Yes);

    // resit = 0: a2 = a1^2.
    let flat = tgerm(&k, &[&[], &[1], &[0, 1], &[0, 0, 1]]);
    assert_eq!(
        periodic_valuation_bound(&flat, 1).unwrap_err(),
        Error::UnboundedBound
    );
    let no_a1 = tgerm(&k, &[&[], &[1], &[], &[1]]);
    assert_eq!(
        periodic_valuation_bound(&no_a1, 1).unwrap_err(),
        Error::ResitUndefined
    );
    assert_eq!(
        periodic_valuation_bound(&no_a1, 0).unwrap().bound_valuation,
        r(0, 1)
    );
}

#[test]
fn characteristic_two_bounds() {
    let k = laurent(2);
    let f = tgerm(&k, &[&[], &[1], &[0, 1], &[0, 0, 0, 1]]);
    let c1 = periodic_valuation_bound(&f, 1).unwrap();
    // v(t)/1 + v(1 - t)/2
    assert_eq!(
        (c1.branch, c1.bound_valuation),
        (BoundBranch::Generic, r(1, 1))
    );
    let c2 = periodic_valuation_bound(&f, 2).unwrap();
    // v(t)/1 + v((1 - t) t)/4
    assert_eq!(
        (c2.branch, c2.bound_valuation),
        (BoundBranch::CharTwoDeep, r(5, 4))
    );
    // resit = 1 when a2 = 0.
    let one = tgerm(&k, &[&[], &[1], &[0, 1]]);
    assert!(periodic_valuation_bound(&one, 1).is_ok());
    assert_eq!(
        periodic_valuation_bound(&one, 2).unwrap_err(),
        Error::UnboundedBound
    );
}

#[test]
fn non_integral_germ_is_rejected() {
    let k = laurent(3);
    let coeffs = vec![k.zero(), k.one(), k.monomial(k.base().one(), -1)];
    let f = ParabolicGerm::new(TruncatedSeries::polynomial(k, coeffs)).unwrap();
    assert_eq!(
        periodic_valuation_bound(&f, 1).unwrap_err(),
        Error::NonIntegralCoefficient { degree: 2 }
    );
}

#[test]
fn cycle_examples() {
    let k = laurent(3);
    let rep = cycle_valuations(&desk_germ(), 0, 100).unwrap();
    assert_eq!(rep.quotient, tseries(&k, &[&[], &[0, 1], &[1]]));
    assert_eq!(rep.positive_valuations, vec![(r(1, 1), 1)]);
    assert_eq!(rep.wideg, Wideg::Finite(2));
    assert_eq!(rep.target, 2);
    assert_eq!(rep.equality_condition, TriState::Yes);
    assert!(rep.bound_attained);

    let rep = cycle_valuations(&desk_germ(), 1, 100).unwrap();
    assert_eq!(rep.quotient.degree(), Some(24));
    assert!(rep.integral);
    assert_eq!(rep.lemma_bound, r(1, 3));
    assert!(rep.positive_valuations.iter().all(|&(v, _)| v <= r(1, 3)));
    assert_eq!(rep.bound_attained, rep.equality_condition == TriState::Yes);
    let cert = periodic_valuation_bound(&desk_germ(), 1).unwrap();
    assert_eq!(cert.equality_condition, rep.equality_condition);

    let plain = tgerm(&k, &[&[], &[1], &[1]]);
    let rep = cycle_valuations(&plain, 0, 100).unwrap();
    assert_eq!(rep.quotient, tseries(&k, &[&[], &[1]]));
    assert!(rep.positive_valuations.is_empty());
    assert_eq!(rep.zero_multiplicity, 1);

    assert_eq!(
        cycle_valuations(&desk_germ(), 2, 1000).unwrap_err(),
        Error::DegreeTooLarge {
            degree: 19683,
            limit: 1000
        }
    );
    let trunc = ParabolicGerm::new(desk_germ().series().truncate(10)).unwrap();
    assert_eq!(
        cycle_valuations(&trunc, 0, 100).unwrap_err(),
        Error::NotAPolynomial
    );
}

#[test]
fn bound_is_level_independent_for_odd_p() {
    let k = laurent(3);
    let f = tgerm(&k, &[&[], &[1], &[0, 1], &[1, 1]]);
    let v = is_minimally_ramified(&f, MinimalityMode::Criterion).unwrap();
    assert_eq!(v.verdict, TriState::Yes);
    let bounds: Vec<_> = (1..=3)
        .map(|n| periodic_valuation_bound(&f, n).unwrap().bound_valuation)
        .collect();
    assert_eq!(bounds, vec![bounds[0]; 3]);
}

/// `(p, q, max z-degree)` small enough for the level-one quotient.
fn cases() -> impl Strategy<Value = (u64, u64, usize)> {
    prop::sample::select(vec![(2u64, 1u64, 3usize), (3, 1, 3), (5, 1, 2), (3, 2, 2)])
}

/// An exact polynomial germ with integral coefficients and a constant top coefficient.
fn arb_poly_germ() -> impl Strategy<Value = ParabolicGerm<LaurentField>> {
    (
        cases(),
        prop::collection::vec(prop::collection::vec(0i64..5, 0..3), 3),
        1i64..5,
    )
        .prop_filter_map("degenerate", |((p, q, deg), mid, top)| {
            let k = laurent(p);
            let gamma = k.base().root_of_unity(q).unwrap();
            let mut coeffs = vec![k.zero(), k.constant(gamma)];
            for c in mid.iter().take(deg - 1) {
                coeffs.push(tpoly(&k, c));
            }
            coeffs.pop();
            coeffs.push(tpoly(&k, &[top]));
            let f = ParabolicGerm::new(TruncatedSeries::polynomial(k, coeffs)).ok()?;
            (f.series().degree()? >= 2).then_some(f)
        })
}

fn arb_poly(p: u64) -> impl Strategy<Value = TruncatedSeries<LaurentField>> {
    prop::collection::vec(prop::collection::vec(-2i64..3, 0..3), 1..5).prop_map(move |cs| {
        let k = laurent(p);
        let coeffs = cs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let base = k.base();
                k.from_coeffs(
                    i as i64 % 3 - 1,
                    c.iter().map(|&x| base.from_int(x)).collect(),
                    None,
                )
            })
            .collect();
        TruncatedSeries::polynomial(k, coeffs)
    })
}

fn multiset(np: &NewtonPolygon) -> Vec<(Rational, usize)> {
    let mut out: Vec<(Rational, usize)> = Vec::new();
    for (v, m) in np.root_valuations() {
        match out.iter_mut().find(|(w, _)| *w == v) {
            Some(slot) => slot.1 += m,
            None => out.push((v, m)),
        }
    }
    out.sort();
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn segment_lengths_cover_the_nonzero_roots(a in arb_poly(3)) {
        prop_assume!(a.degree().is_some());
        let np = newton_polygon(&a).unwrap();
        let total: usize = np.segments.iter().map(|s| s.length).sum();
        prop_assert_eq!(total, np.degree() - np.ord());
        prop_assert!(np.segments.windows(2).all(|w| w[0].slope < w[1].slope));
    }

    #[test]
    fn polygon_of_a_product_merges_slopes(a in arb_poly(5), b in arb_poly(5)) {
        prop_assume!(a.degree().is_some() && b.degree().is_some());
        let prod = a.mul(&b).unwrap();
        let (na, nb, np) = (newton_polygon(&a).unwrap(), newton_polygon(&b).unwrap(), newton_polygon(&prod).unwrap());
        prop_assert_eq!(np.ord(), na.ord() + nb.ord());
        let mut merged = multiset(&na);
        for (v, m) in multiset(&nb) {
            match merged.iter_mut().find(|(w, _)| *w == v) {
                Some(slot) => slot.1 += m,
                None => merged.push((v, m)),
            }
        }
        merged.sort();
        prop_assert_eq!(multiset(&np), merged);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn period_quotients_are_integral(f in arb_poly_germ(), n in 0u32..2) {
        let rep = cycle_valuations(&f, n, 4096);
        prop_assume!(!matches!(rep, Err(Error::InvalidParameter(_))));
        prop_assert!(rep.unwrap().integral);
    }

    #[test]
    fn root_valuations_obey_the_level_bound(f in arb_poly_germ()) {
        let cert = match periodic_valuation_bound(&f, 1) {
            Err(Error::ResitUndefined | Error::UnboundedBound) => return Ok(()),
            other => other.unwrap(),
        };
        let rep = cycle_valuations(&f, 1, 4096).unwrap();
        for &(v, _) in &rep.positive_valuations {
            prop_assert!(v <= cert.bound_valuation, "{} > {}", v, cert.bound_valuation);
        }
    }

    #[test]
    fn lemma_bound_is_attained_iff_wideg_condition(f in arb_poly_germ(), n in 0u32..2) {
        let rep = match cycle_valuations(&f, n, 4096) {
            Err(Error::InvalidParameter(_)) => return Ok(()),
            other => other.unwrap(),
        };
        prop_assume!(rep.equality_condition != TriState::Indeterminate);
        prop_assert_eq!(rep.bound_attained, rep.equality_condition == TriState::Yes);
        if let Some(v) = rep.max_positive_valuation {
            prop_assert!(v <= rep.lemma_bound);
        }
        if let Ok(cert) = periodic_valuation_bound(&f, n) {
            if cert.equality_condition != TriState::Indeterminate {
                prop_assert_eq!(cert.equality_condition, rep.equality_condition);
            }
        }
    }
}
