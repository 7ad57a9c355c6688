//! Truncated power series `R[[z]] mod z^N` over a generic scalar ring.
//!
//! A series is either truncated (`trunc = Some(N)`, coefficients `c_0..c_{N-1}`
//! known, the rest unknown) or an exact polynomial (`trunc = None`, omitted
//! coefficients are true zeros). Binary operations intersect truncations.

mod germ;

pub use germ::ParabolicGerm;

use crate::error::{Error, Result};
use crate::rings::{FieldElement, FiniteField, LaurentField, LaurentScalar, Ring, ZeroTest};

/// Order of vanishing at `z = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    /// The exact zero polynomial.
    Infinite,
    /// Coefficients below this index are certified zero; the next one is not
    /// known to be zero or nonzero (or lies beyond the truncation).
    AtLeast(usize),
}

/// Weierstrass degree: order of the reduction modulo the maximal ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wideg {
    Finite(usize),
    Infinite,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<R: Ring> {
    ring: R,
    coeffs: Vec<R::Elem>,
    trunc: Option<usize>,
}

fn min_trunc(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// `out[k] = sum_i a[i] b[k - i]` for `k < len`; missing entries are zero.
fn convolve<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem], len: usize) -> Vec<R::Elem> {
    let mut out = vec![ring.zero(); len];
    if a.is_empty() || b.is_empty() {
        return out;
    }
    let brev: Vec<R::Elem> = b.iter().rev().cloned().collect();
    let lb = b.len();
    for (k, slot) in out.iter_mut().enumerate() {
        let lo = (k + 1).saturating_sub(lb);
        let hi = k.min(a.len() - 1);
        if lo > hi {
            continue;
        }
        let start = lb - 1 + lo - k;
        *slot = ring.dot(&a[lo..=hi], &brev[start..start + (hi - lo + 1)]);
    }
    out
}

impl<R: Ring> TruncatedSeries<R> {
    /// `sum coeffs[i] z^i mod z^n`; missing coefficients are zero.
    pub fn new(ring: R, mut coeffs: Vec<R::Elem>, n: usize) -> Self {
        assert!(n >= 1, "truncation order must be at least 1");
        coeffs.resize(n, ring.zero());
        TruncatedSeries {
            ring,
            coeffs,
            trunc: Some(n),
        }
    }

    /// An exact polynomial.
    pub fn polynomial(ring: R, coeffs: Vec<R::Elem>) -> Self {
        let mut s = TruncatedSeries {
            ring,
            coeffs,
            trunc: None,
        };
        s.trim();
        s
    }

    /// `z`, exact when `n` is `None`.
    pub fn identity(ring: R, n: Option<usize>) -> Self {
        Self::monomial(ring.clone(), ring.one(), 1, n)
    }

    pub fn monomial(ring: R, c: R::Elem, k: usize, n: Option<usize>) -> Self {
        let mut coeffs = vec![ring.zero(); k + 1];
        coeffs[k] = c;
        Self::from_parts(ring, coeffs, n)
    }

    pub(crate) fn from_parts(ring: R, coeffs: Vec<R::Elem>, trunc: Option<usize>) -> Self {
        match trunc {
            Some(n) => Self::new(ring, coeffs, n),
            None => Self::polynomial(ring, coeffs),
        }
    }

    fn trim(&mut self) {
        if self.trunc.is_none() {
            while self.coeffs.last().is_some_and(|c| self.ring.is_zero(c)) {
                self.coeffs.pop();
            }
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Truncation order `N`; `None` for exact polynomials.
    pub fn trunc(&self) -> Option<usize> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// Stored coefficients: all `N` of them, or up to the degree.
    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    /// Degree of an exact polynomial (`None` for the zero polynomial).
    pub fn degree(&self) -> Option<usize> {
        debug_assert!(self.is_exact());
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `z^i`, `None` at or beyond the truncation.
    pub fn try_coeff(&self, i: usize) -> Option<R::Elem> {
        match self.coeffs.get(i) {
            Some(c) => Some(c.clone()),
            None if self.trunc.is_none() => Some(self.ring.zero()),
            None => None,
        }
    }

    /// Coefficient of `z^i`. Panics beyond the truncation.
    pub fn coeff(&self, i: usize) -> R::Elem {
        self.try_coeff(i)
            .unwrap_or_else(|| panic!("coefficient {i} lies beyond the truncation"))
    }

    pub fn truncate(&self, n: usize) -> Self {
        let n = self.trunc.map_or(n, |m| m.min(n));
        Self::new(
            self.ring.clone(),
            self.coeffs.iter().take(n).cloned().collect(),
            n,
        )
    }

    pub fn ord(&self) -> Order {
        for (i, c) in self.coeffs.iter().enumerate() {
            match self.ring.zero_test(c) {
                ZeroTest::Zero => {}
                ZeroTest::NonZero => return Order::Finite(i),
                ZeroTest::Unknown => return Order::AtLeast(i),
            }
        }
        match self.trunc {
            None => Order::Infinite,
            Some(n) => Order::AtLeast(n),
        }
    }

    /// Indices of coefficients not certified zero.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| !self.ring.is_zero(&self.coeffs[i]))
            .collect()
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::ScalarRingMismatch)
        }
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&R::Elem, &R::Elem) -> R::Elem) -> Result<Self> {
        self.check_ring(other)?;
        let trunc = min_trunc(self.trunc, other.trunc);
        let len = trunc.unwrap_or_else(|| self.coeffs.len().max(other.coeffs.len()));
        let zero = self.ring.zero();
        let coeffs = (0..len)
            .map(|i| {
                op(
                    self.coeffs.get(i).unwrap_or(&zero),
                    other.coeffs.get(i).unwrap_or(&zero),
                )
            })
            .collect();
        Ok(Self::from_parts(self.ring.clone(), coeffs, trunc))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| self.ring.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| self.ring.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.ring.neg(c)).collect();
        Self::from_parts(self.ring.clone(), coeffs, self.trunc)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let trunc = min_trunc(self.trunc, other.trunc);
        let len = trunc.unwrap_or_else(|| {
            if self.coeffs.is_empty() || other.coeffs.is_empty() {
                0
            } else {
                self.coeffs.len() + other.coeffs.len() - 1
            }
        });
        let coeffs = convolve(&self.ring, &self.coeffs, &other.coeffs, len);
        Ok(Self::from_parts(self.ring.clone(), coeffs, trunc))
    }

    pub fn scalar_mul(&self, c: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|x| self.ring.mul(c, x)).collect();
        Self::from_parts(self.ring.clone(), coeffs, self.trunc)
    }

    /// `self^k` under multiplication.
    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_parts(self.ring.clone(), vec![self.ring.one()], self.trunc);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// `self(other(z))`. Requires `other(0) = 0`.
    ///
    /// The result is known modulo `z^T` with `T = min(N_other, N_self * r)` where
    /// `r >= 1` is the certified order of `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let g = other;
        let r = match g.ord() {
            Order::Finite(0) => return Err(Error::NonzeroConstantTerm),
            Order::AtLeast(0) if !g.coeffs.is_empty() => return Err(Error::NonzeroConstantTerm),
            Order::Infinite => {
                let c0 = self.try_coeff(0).ok_or(Error::TruncationTooSmall {
                    needed: 1,
                    available: 0,
                })?;
                return Ok(Self::polynomial(self.ring.clone(), vec![c0]));
            }
            Order::Finite(r) | Order::AtLeast(r) => r.max(1),
        };
        let trunc = min_trunc(g.trunc, self.trunc.map(|m| m * r));
        let ring = &self.ring;
        let Some(t) = trunc else {
            let mut acc: Vec<R::Elem> = Vec::new();
            for c in self.coeffs.iter().rev() {
                let len = if acc.is_empty() {
                    0
                } else {
                    acc.len() + g.coeffs.len() - 1
                };
                acc = convolve(ring, &acc, &g.coeffs, len.max(1));
                acc[0] = ring.add(&acc[0], c);
            }
            return Ok(Self::polynomial(ring.clone(), acc));
        };
        if self.coeffs.is_empty() {
            return Ok(Self::new(ring.clone(), Vec::new(), t));
        }
        let top = (self.coeffs.len() - 1).min((t - 1) / r);
        // acc_k = sum_{j >= k} c_j g^{j - k}, needed only mod z^{t - k r}.
        let mut acc = vec![self.coeffs[top].clone()];
        acc.truncate(t - top * r);
        for k in (0..top).rev() {
            let need = t - k * r;
            acc = convolve(ring, &acc, &g.coeffs, need);
            acc[0] = ring.add(&acc[0], &self.coeffs[k]);
        }
        Ok(Self::new(ring.clone(), acc, t))
    }

    /// Compositional inverse, by undetermined coefficients.
    pub fn inverse(&self) -> Result<Self> {
        match self.ord() {
            Order::Finite(1) => {}
            Order::Finite(0) => return Err(Error::NonzeroConstantTerm),
            Order::AtLeast(0) if !self.coeffs.is_empty() => return Err(Error::NonzeroConstantTerm),
            _ => return Err(Error::NonUnitLinearTerm),
        }
        let ring = &self.ring;
        let c1_inv = ring
            .inv(&self.coeffs[1])
            .map_err(|_| Error::NonUnitLinearTerm)?;
        let n = match self.trunc {
            Some(n) => n,
            None if self.coeffs.len() == 2 => {
                return Ok(Self::polynomial(ring.clone(), vec![ring.zero(), c1_inv]));
            }
            None => {
                return Err(Error::UnboundedResult {
                    degree: self.coeffs.len() - 1,
                })
            }
        };
        // pw[k][m] = [z^m] h^k, filled column by column.
        let mut pw: Vec<Vec<R::Elem>> = vec![vec![ring.zero(); n]; n];
        let mut b = vec![ring.zero(); n];
        if n > 1 {
            b[1] = c1_inv.clone();
            pw[1][1] = c1_inv.clone();
        }
        for m in 2..n {
            for k in (2..=m).rev() {
                let mut acc = ring.zero();
                for i in 1..=(m + 1 - k) {
                    acc = ring.add(&acc, &ring.mul(&b[i], &pw[k - 1][m - i]));
                }
                pw[k][m] = acc;
            }
            let mut s = ring.zero();
            for (c, row) in self.coeffs.iter().zip(&pw).take(m + 1).skip(2) {
                s = ring.add(&s, &ring.mul(c, &row[m]));
            }
            b[m] = ring.neg(&ring.mul(&c1_inv, &s));
            pw[1][m] = b[m].clone();
        }
        Ok(Self::new(ring.clone(), b, n))
    }

    /// `self^{∘m}`; `m = 0` gives `z`.
    pub fn iterate(&self, m: u64) -> Result<Self> {
        if m == 0 {
            return Ok(Self::identity(self.ring.clone(), self.trunc));
        }
        let mut acc = self.clone();
        for bit in (0..(63 - m.leading_zeros())).rev() {
            acc = acc.compose(&acc)?;
            if (m >> bit) & 1 == 1 {
                acc = self.compose(&acc)?;
            }
        }
        Ok(acc)
    }

    /// `self / den` when the division is exact, and whether every quotient
    /// coefficient is integral.
    ///
    /// Exact polynomials whose divisor has an exactly invertible leading
    /// coefficient are divided from the top and the remainder must vanish.
    /// Everything else is divided from the bottom, giving a quotient modulo
    /// `z^{N - ord(den)}`.
    pub fn divide_exact(&self, den: &Self) -> Result<(Self, bool)> {
        self.check_ring(den)?;
        let ring = &self.ring;
        let r = match den.ord() {
            Order::Finite(r) => r,
            Order::Infinite => return Err(Error::DivisionByZero),
            Order::AtLeast(_) => return Err(Error::IndeterminateValuation),
        };
        for i in 0..r {
            match self.try_coeff(i) {
                Some(c) if ring.is_zero(&c) => {}
                _ => return Err(Error::NotDivisible { degree: i }),
            }
        }
        let quot = if self.is_exact() && den.is_exact() {
            let lead = den.coeffs.last().unwrap();
            // Over Laurent scalars a non-monomial leading coefficient only has
            // an approximate inverse; that case falls back to bottom-up division.
            let lead_inv = ring
                .inv(lead)
                .ok()
                .filter(|x| ring.mul(x, lead) == ring.one());
            match lead_inv {
                Some(inv) => self.long_divide(den, &inv)?,
                None => {
                    let n = self.coeffs.len().max(r + 1);
                    self.truncate_or_pad(n).low_divide(den, r)?
                }
            }
        } else {
            self.low_divide(den, r)?
        };
        let integral = quot
            .coeffs
            .iter()
            .all(|c| ring.is_integral(c) == Some(true));
        Ok((quot, integral))
    }

    fn truncate_or_pad(&self, n: usize) -> Self {
        Self::new(self.ring.clone(), self.coeffs.clone(), n)
    }

    fn long_divide(&self, den: &Self, lead_inv: &R::Elem) -> Result<Self> {
        let ring = &self.ring;
        let dd = den.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if rem.iter().all(|c| ring.is_zero(c)) {
                Ok(Self::polynomial(ring.clone(), Vec::new()))
            } else {
                Err(Error::NotDivisible {
                    degree: rem.len().saturating_sub(1),
                })
            };
        }
        let mut quot = vec![ring.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = ring.mul(&rem[k + dd], lead_inv);
            for (j, dj) in den.coeffs.iter().enumerate() {
                rem[k + j] = ring.sub(&rem[k + j], &ring.mul(&c, dj));
            }
            quot[k] = c;
        }
        if let Some(bad) = rem.iter().position(|c| !ring.is_zero(c)) {
            return Err(Error::NotDivisible { degree: bad });
        }
        Ok(Self::polynomial(ring.clone(), quot))
    }

    fn low_divide(&self, den: &Self, r: usize) -> Result<Self> {
        let ring = &self.ring;
        let avail = min_trunc(self.trunc, den.trunc).expect("one side is truncated");
        let n = avail
            .checked_sub(r)
            .filter(|&n| n > 0)
            .ok_or(Error::TruncationTooSmall {
                needed: r + 1,
                available: avail,
            })?;
        let d0_inv = ring
            .inv(&den.coeffs[r])
            .map_err(|_| Error::NotDivisible { degree: r })?;
        let mut quot: Vec<R::Elem> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeff(k + r);
            for (j, qj) in quot.iter().enumerate() {
                if let Some(d) = den.coeffs.get(r + k - j) {
                    acc = ring.sub(&acc, &ring.mul(qj, d));
                }
            }
            quot.push(ring.mul(&acc, &d0_inv));
        }
        Ok(Self::new(ring.clone(), quot, n))
    }

    /// Coefficient-wise equality of the first `n` coefficients.
    pub fn eq_mod(&self, other: &Self, n: usize) -> bool {
        (0..n).all(|i| self.try_coeff(i).is_some() && self.try_coeff(i) == other.try_coeff(i))
    }

    /// Literal form, re-readable by the CLI grammar.
    pub fn format(&self) -> String {
        let ring = &self.ring;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if ring.zero_test(c) == ZeroTest::Zero {
                continue;
            }
            let body = ring.format(c);
            let body = if ring.is_compound(c) {
                format!("({body})")
            } else {
                body
            };
            let one = *c == ring.one();
            terms.push(match (i, one) {
                (0, _) => body,
                (1, true) => "z".to_string(),
                (1, false) => format!("{body}*z"),
                (i, true) => format!("z^{i}"),
                (i, false) => format!("{body}*z^{i}"),
            });
        }
        let poly = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        match self.trunc {
            Some(n) => format!("{poly} mod z^{n}"),
            None => poly,
        }
    }
}

impl TruncatedSeries<LaurentField> {
    /// Reduction modulo the maximal ideal and its order.
    pub fn reduce_and_wideg(&self) -> Result<(TruncatedSeries<FiniteField>, Wideg)> {
        let k = &self.ring;
        let mut reduced: Vec<FieldElement> = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            match k.is_integral(c) {
                Some(true) => {}
                Some(false) => return Err(Error::NonIntegralCoefficient { degree: i }),
                None => return Err(Error::IndeterminateValuation),
            }
            reduced.push(c.coeff(0).ok_or(Error::IndeterminateValuation)?);
        }
        let red = TruncatedSeries::from_parts(*k.base(), reduced, self.trunc);
        let wideg = match red.ord() {
            Order::Finite(i) => Wideg::Finite(i),
            Order::Infinite => Wideg::Infinite,
            Order::AtLeast(_) => Wideg::Indeterminate,
        };
        Ok((red, wideg))
    }

    /// `self(a)` for `a` of positive valuation.
    ///
    /// A truncated series must have integral coefficients so that the unknown
    /// tail is `O(t^{N v(a)})`. Summation stops once further terms fall below
    /// the precision already lost.
    pub fn evaluate(&self, a: &LaurentScalar) -> Result<LaurentScalar> {
        let k = &self.ring;
        let va = match a.valuation()? {
            Some(v) if v >= 1 => v,
            Some(_) => return Err(Error::NonIntegralCoefficient { degree: 0 }),
            None => return Ok(self.try_coeff(0).unwrap_or_else(|| k.zero())),
        };
        let mut acc = match self.trunc {
            Some(n) => {
                if let Some(i) = (0..n).find(|&i| k.is_integral(&self.coeffs[i]) != Some(true)) {
                    return Err(Error::NonIntegralCoefficient { degree: i });
                }
                k.big_o(n as i64 * va).expect("laurent precision")
            }
            None => k.zero(),
        };
        let vmin = self
            .coeffs
            .iter()
            .filter_map(|c| {
                if c.coeffs().is_empty() {
                    c.tprec()
                } else {
                    Some(c.v0())
                }
            })
            .min()
            .unwrap_or(0);
        let mut power = k.one();
        for (i, c) in self.coeffs.iter().enumerate() {
            if acc.tprec().is_some_and(|p| vmin + i as i64 * va >= p) {
                break;
            }
            acc = k.add(&acc, &k.mul(c, &power));
            power = k.mul(&power, a);
        }
        Ok(acc)
    }
}
