//! Truncated Laurent series `F_{p^d}((t))` with exact valuations.

use super::{FieldElement, FiniteField, Ring, ZeroTest};
use crate::error::{Error, Result};

/// Relative precision used when an inverse has to be expanded.
pub const DEFAULT_TPREC: i64 = 64;

/// `F_{p^d}((t))` with a working relative precision for inverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LaurentField {
    base: FiniteField,
    rel_prec: i64,
}

/// `sum_k coeffs[k] t^{v0 + k}` plus, when `tprec` is set, an unknown tail `O(t^tprec)`.
///
/// Normalized: stored coefficients are trimmed at both ends and all lie below
/// `tprec`. Empty `coeffs` with `tprec == None` is the exact zero, and with
/// `Some(P)` it is `O(t^P)`, a zero known only up to precision.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentScalar {
    v0: i64,
    coeffs: Vec<FieldElement>,
    tprec: Option<i64>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl LaurentScalar {
    /// Start exponent. Meaningless for zeros.
    pub fn v0(&self) -> i64 {
        self.v0
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn tprec(&self) -> Option<i64> {
        self.tprec
    }

    pub fn is_exact(&self) -> bool {
        self.tprec.is_none()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.tprec.is_none()
    }

    /// `Ok(None)` for the exact zero.
    pub fn valuation(&self) -> Result<Option<i64>> {
        match (self.coeffs.is_empty(), self.tprec) {
            (false, _) => Ok(Some(self.v0)),
            (true, None) => Ok(None),
            (true, Some(_)) => Err(Error::IndeterminateValuation),
        }
    }

    /// Every `t`-exponent below this is known to be absent.
    fn valuation_lower_bound(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.tprec
        } else {
            Some(self.v0)
        }
    }

    /// Coefficient of `t^k`, or `None` when `k` is at or beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<FieldElement> {
        if matches!(self.tprec, Some(p) if k >= p) {
            return None;
        }
        let idx = k - self.v0;
        if self.coeffs.is_empty() || idx < 0 || idx as usize >= self.coeffs.len() {
            Some(FieldElement::default())
        } else {
            Some(self.coeffs[idx as usize])
        }
    }
}

impl LaurentField {
    pub fn new(base: FiniteField) -> Self {
        Self::with_precision(base, DEFAULT_TPREC)
    }

    pub fn with_precision(base: FiniteField, rel_prec: i64) -> Self {
        assert!(rel_prec >= 1, "relative precision must be positive");
        LaurentField { base, rel_prec }
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    pub fn rel_prec(&self) -> i64 {
        self.rel_prec
    }

    /// Builds and normalizes `sum coeffs[k] t^{v0+k} + O(t^tprec)`.
    pub fn from_coeffs(
        &self,
        v0: i64,
        coeffs: Vec<FieldElement>,
        tprec: Option<i64>,
    ) -> LaurentScalar {
        let zero = FieldElement::default();
        let mut coeffs = coeffs;
        if let Some(p) = tprec {
            let keep = (p - v0).clamp(0, coeffs.len() as i64) as usize;
            coeffs.truncate(keep);
        }
        while coeffs.last() == Some(&zero) {
            coeffs.pop();
        }
        let lead = coeffs
            .iter()
            .position(|c| *c != zero)
            .unwrap_or(coeffs.len());
        coeffs.drain(..lead);
        let v0 = if coeffs.is_empty() {
            0
        } else {
            v0 + lead as i64
        };
        LaurentScalar { v0, coeffs, tprec }
    }

    pub fn constant(&self, c: FieldElement) -> LaurentScalar {
        self.from_coeffs(0, vec![c], None)
    }

    pub fn monomial(&self, c: FieldElement, k: i64) -> LaurentScalar {
        self.from_coeffs(k, vec![c], None)
    }

    pub fn t(&self) -> LaurentScalar {
        self.monomial(self.base.one(), 1)
    }

    /// The `t^0` coefficient of an integral element: its image in the residue field.
    pub fn residue(&self, a: &LaurentScalar) -> Result<FieldElement> {
        match self.is_integral(a) {
            Some(true) => {}
            Some(false) => return Err(Error::NonIntegralCoefficient { degree: 0 }),
            None => return Err(Error::IndeterminateValuation),
        }
        a.coeff(0).ok_or(Error::IndeterminateValuation)
    }

    fn unit_inverse(&self, unit: &[FieldElement], terms: usize) -> Result<Vec<FieldElement>> {
        let f = &self.base;
        let c0_inv = f.inv(&unit[0])?;
        let mut out: Vec<FieldElement> = Vec::with_capacity(terms);
        out.push(c0_inv);
        for k in 1..terms {
            let mut acc = f.zero();
            for j in 1..=k.min(unit.len() - 1) {
                acc = f.add(&acc, &f.mul(&unit[j], &out[k - j]));
            }
            out.push(f.neg(&f.mul(&c0_inv, &acc)));
        }
        Ok(out)
    }
}

impl Ring for LaurentField {
    type Elem = LaurentScalar;

    fn characteristic(&self) -> u64 {
        self.base.p()
    }

    fn zero(&self) -> LaurentScalar {
        LaurentScalar {
            v0: 0,
            coeffs: Vec::new(),
            tprec: None,
        }
    }

    fn one(&self) -> LaurentScalar {
        self.constant(self.base.one())
    }

    fn from_int(&self, n: i64) -> LaurentScalar {
        self.constant(self.base.from_int(n))
    }

    fn add(&self, a: &LaurentScalar, b: &LaurentScalar) -> LaurentScalar {
        if a.coeffs.is_empty() && b.coeffs.is_empty() {
            return self.from_coeffs(0, Vec::new(), min_prec(a.tprec, b.tprec));
        }
        if b.is_exact_zero() {
            return a.clone();
        }
        if a.is_exact_zero() {
            return b.clone();
        }
        let tprec = min_prec(a.tprec, b.tprec);
        let lo = [a, b]
            .iter()
            .filter(|x| !x.coeffs.is_empty())
            .map(|x| x.v0)
            .min()
            .unwrap();
        let hi = [a, b]
            .iter()
            .map(|x| x.v0 + x.coeffs.len() as i64)
            .max()
            .unwrap();
        let hi = tprec.map_or(hi, |p| hi.min(p)).max(lo);
        let mut out = vec![FieldElement::default(); (hi - lo) as usize];
        for x in [a, b] {
            for (k, c) in x.coeffs.iter().enumerate() {
                let e = x.v0 + k as i64;
                if e < hi {
                    let slot = &mut out[(e - lo) as usize];
                    *slot = self.base.add(slot, c);
                }
            }
        }
        self.from_coeffs(lo, out, tprec)
    }

    fn sub(&self, a: &LaurentScalar, b: &LaurentScalar) -> LaurentScalar {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &LaurentScalar) -> LaurentScalar {
        LaurentScalar {
            v0: a.v0,
            coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect(),
            tprec: a.tprec,
        }
    }

    fn mul(&self, a: &LaurentScalar, b: &LaurentScalar) -> LaurentScalar {
        if a.is_exact_zero() || b.is_exact_zero() {
            return self.zero();
        }
        let bound =
            |tp: Option<i64>, other: &LaurentScalar| match (tp, other.valuation_lower_bound()) {
                (Some(t), Some(v)) => Some(t + v),
                _ => None,
            };
        let tprec = min_prec(bound(a.tprec, b), bound(b.tprec, a));
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.from_coeffs(0, Vec::new(), tprec);
        }
        let v0 = a.v0 + b.v0;
        let mut len = a.coeffs.len() + b.coeffs.len() - 1;
        if let Some(p) = tprec {
            len = len.min((p - v0).max(0) as usize);
        }
        let mut out = vec![FieldElement::default(); len];
        for (i, x) in a.coeffs.iter().enumerate().take(len) {
            for (j, y) in b.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        self.from_coeffs(v0, out, tprec)
    }

    fn inv(&self, a: &LaurentScalar) -> Result<LaurentScalar> {
        if a.is_exact_zero() {
            return Err(Error::DivisionByZero);
        }
        let v = a.valuation()?.expect("nonzero");
        if a.is_exact() && a.coeffs.len() == 1 {
            return Ok(self.monomial(self.base.inv(&a.coeffs[0])?, -v));
        }
        let rel = a
            .tprec
            .map_or(self.rel_prec, |p| (p - v).min(self.rel_prec));
        let out = self.unit_inverse(&a.coeffs, rel as usize)?;
        Ok(self.from_coeffs(-v, out, Some(rel - v)))
    }

    fn zero_test(&self, a: &LaurentScalar) -> ZeroTest {
        match (a.coeffs.is_empty(), a.tprec) {
            (false, _) => ZeroTest::NonZero,
            (true, None) => ZeroTest::Zero,
            (true, Some(_)) => ZeroTest::Unknown,
        }
    }

    fn is_integral(&self, a: &LaurentScalar) -> Option<bool> {
        match a.valuation() {
            Ok(Some(v)) => Some(v >= 0),
            Ok(None) => Some(true),
            Err(_) => (a.tprec? >= 0).then_some(true),
        }
    }

    fn multiplicative_order(&self, a: &LaurentScalar) -> Option<u64> {
        if a.is_exact() && a.v0 == 0 && a.coeffs.len() == 1 {
            self.base.multiplicative_order(&a.coeffs[0])
        } else {
            None
        }
    }

    fn generator(&self, name: &str) -> Option<LaurentScalar> {
        match name {
            "t" => Some(self.t()),
            "w" => self.base.generator_w().map(|w| self.constant(w)),
            _ => None,
        }
    }

    fn big_o(&self, exponent: i64) -> Option<LaurentScalar> {
        Some(self.from_coeffs(0, Vec::new(), Some(exponent)))
    }

    fn format(&self, a: &LaurentScalar) -> String {
        let mut terms = Vec::new();
        for (k, c) in a.coeffs.iter().enumerate() {
            if *c == FieldElement::default() {
                continue;
            }
            let e = a.v0 + k as i64;
            let coeff = self.base.format(c);
            let is_one = *c == self.base.one();
            let coeff = if self.base.is_compound(c) {
                format!("({coeff})")
            } else {
                coeff
            };
            terms.push(match (e, is_one) {
                (0, _) => coeff,
                (1, true) => "t".to_string(),
                (1, false) => format!("{coeff}*t"),
                (e, true) => format!("t^{e}"),
                (e, false) => format!("{coeff}*t^{e}"),
            });
        }
        if let Some(p) = a.tprec {
            terms.push(format!("O(t^{p})"));
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    fn is_compound(&self, a: &LaurentScalar) -> bool {
        let nonzero = a
            .coeffs
            .iter()
            .filter(|c| **c != FieldElement::default())
            .count();
        let terms = nonzero + usize::from(a.tprec.is_some());
        terms > 1
            || (nonzero == 1 && a.tprec.is_none() && {
                let c = a
                    .coeffs
                    .iter()
                    .find(|c| **c != FieldElement::default())
                    .unwrap();
                self.base.is_compound(c)
            })
    }
}
