//! Builders shared by the unit tests.

use crate::rings::{FiniteField, LaurentField, LaurentScalar, Ring};
use crate::series::{ParabolicGerm, TruncatedSeries};

pub(crate) fn fp(p: u64) -> FiniteField {
    FiniteField::prime(p).unwrap()
}

/// `gamma z + sum_k cs[k] z^{k+2} mod z^n` over `F_p`, with `gamma` of order `q`.
pub(crate) fn germ_from(p: u64, q: u64, cs: &[u64], n: usize) -> ParabolicGerm<FiniteField> {
    let f = fp(p);
    let gamma = f.root_of_unity(q).unwrap();
    let mut coeffs = vec![f.zero(), gamma];
    coeffs.extend(cs.iter().map(|&c| f.from_int(c as i64)));
    ParabolicGerm::new(TruncatedSeries::new(f, coeffs, n)).unwrap()
}

/// The germ with series coefficients `cs` (starting at `z^0`).
pub(crate) fn germ(f: FiniteField, cs: &[i64], n: usize) -> ParabolicGerm<FiniteField> {
    ParabolicGerm::new(TruncatedSeries::new(
        f,
        cs.iter().map(|&c| f.from_int(c)).collect(),
        n,
    ))
    .unwrap()
}

pub(crate) fn laurent(p: u64) -> LaurentField {
    LaurentField::new(fp(p))
}

/// `sum_k cs[k] t^k`, exact.
pub(crate) fn tpoly(k: &LaurentField, cs: &[i64]) -> LaurentScalar {
    let base = k.base();
    k.from_coeffs(0, cs.iter().map(|&c| base.from_int(c)).collect(), None)
}

/// The exact polynomial germ whose `z^i` coefficient is `tpoly(cs[i])`.
pub(crate) fn tgerm(k: &LaurentField, cs: &[&[i64]]) -> ParabolicGerm<LaurentField> {
    let coeffs = cs.iter().map(|c| tpoly(k, c)).collect();
    ParabolicGerm::new(TruncatedSeries::polynomial(*k, coeffs)).unwrap()
}
