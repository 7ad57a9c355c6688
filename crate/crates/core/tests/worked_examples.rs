use parabolic_core::closed_forms::chi_xi;
use parabolic_core::normal_form::mq_evaluate;
use parabolic_core::ramification::{ramification_profile, LowerRamification};
use parabolic_core::rings::{FiniteField, LaurentField, Ring};
use parabolic_core::series::{ParabolicGerm, TruncatedSeries};
use parabolic_core::valuation::{newton_polygon, periodic_valuation_bound, Rational};

fn series<R: Ring>(ring: &R, cs: &[i64], n: usize) -> TruncatedSeries<R> {
    TruncatedSeries::new(
        ring.clone(),
        cs.iter().map(|&c| ring.from_int(c)).collect(),
        n,
    )
}

#[test]
fn second_iterate_over_f2() {
    let f2 = FiniteField::prime(2).unwrap();
    let f = ParabolicGerm::new(series(&f2, &[0, 1, 1, 1], 20)).unwrap();
    // (z + z^2 + z^3) composed with itself, expanded by hand.
    let mut want = vec![0; 10];
    want[1] = 1;
    want[8] = 1;
    want[9] = 1;
    assert_eq!(f.series().iterate(2).unwrap(), series(&f2, &want, 20));
    let prof = ramification_profile(&f, 1).unwrap();
    assert_eq!(prof.i(0), LowerRamification::Finite(1));
    assert_eq!(prof.i(1), LowerRamification::Finite(7));
    assert_eq!(prof.delta(1), Some(&f2.one()));
}

#[test]
fn order_two_multiplier_over_f3() {
    let f3 = FiniteField::prime(3).unwrap();
    let g = ParabolicGerm::new(series(&f3, &[0, 2, 0, 2], 12)).unwrap();
    assert_eq!(g.q(), 2);
    let mut want = vec![0; 10];
    want[1] = 1;
    want[3] = 2;
    want[9] = 1;
    assert_eq!(g.series().iterate(2).unwrap(), series(&f3, &want, 12));
    let prof = ramification_profile(&g, 0).unwrap();
    assert_eq!(prof.i(0), LowerRamification::Finite(2));
    assert_eq!(prof.delta(0), Some(&f3.from_int(2)));
    // a_1 = 1, a_2 = 0 and (q + 1)/2 = 0 in F_3.
    assert_eq!(mq_evaluate(&g).unwrap(), f3.zero());
}

#[test]
fn mq_for_q_one() {
    let f3 = FiniteField::prime(3).unwrap();
    let f = ParabolicGerm::new(series(&f3, &[0, 1, 1], 8)).unwrap();
    assert_eq!(mq_evaluate(&f).unwrap(), f3.one());
    let f2 = FiniteField::prime(2).unwrap();
    let f = ParabolicGerm::new(series(&f2, &[0, 1, 1], 8)).unwrap();
    assert_eq!(mq_evaluate(&f).unwrap(), f2.zero());
}

#[test]
fn chi_for_a1_one() {
    let f3 = FiniteField::prime(3).unwrap();
    let pair = chi_xi(&f3, 1, 1, &f3.one(), &f3.zero()).unwrap();
    assert_eq!(pair.chi, f3.one());
}

#[test]
fn polygon_and_bound_over_laurent_field() {
    let k = LaurentField::new(FiniteField::prime(3).unwrap());
    let t = k.t();
    let np = newton_polygon(&TruncatedSeries::polynomial(
        k,
        vec![k.zero(), k.zero(), t.clone(), k.one()],
    ))
    .unwrap();
    assert_eq!(np.segments.len(), 1);
    assert_eq!(
        (np.segments[0].slope, np.segments[0].length),
        (Rational::from_integer(-1), 1)
    );

    let f = ParabolicGerm::new(TruncatedSeries::polynomial(
        k,
        vec![k.zero(), k.one(), t, k.one()],
    ))
    .unwrap();
    assert_eq!(
        periodic_valuation_bound(&f, 1).unwrap().bound_valuation,
        Rational::new(1, 3)
    );
}
