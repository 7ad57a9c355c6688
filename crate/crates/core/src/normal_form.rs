//! Conjugation of a parabolic germ to the reduced form
//! `gamma z (1 + sum_j a_j z^{jq})`, and the genericity value `M_q`.

use crate::error::{Error, Result};
use crate::rings::{Ring, TriState};
use crate::series::{ParabolicGerm, TruncatedSeries};

#[derive(Debug, Clone, PartialEq)]
pub struct NormalFormResult<R: Ring> {
    /// Tangent to the identity.
    pub h: TruncatedSeries<R>,
    /// `h ∘ f ∘ h^{-1}`, supported on exponents `1 mod q`.
    pub g: TruncatedSeries<R>,
    pub gamma: R::Elem,
    pub q: u64,
}

impl<R: Ring> NormalFormResult<R> {
    /// `a_j`: coefficient of `z^{jq+1}` in `g`, divided by `gamma`.
    pub fn a(&self, j: usize) -> R::Elem {
        let ring = self.g.ring();
        let c = self.g.coeff(j * self.q as usize + 1);
        ring.div(&c, &self.gamma).expect("gamma is a unit")
    }

    /// All `a_j` the truncation exposes.
    pub fn a_list(&self) -> Vec<R::Elem> {
        let n = self.g.trunc().expect("normal forms are truncated");
        (1..)
            .take_while(|j| j * (self.q as usize) + 1 < n)
            .map(|j| self.a(j))
            .collect()
    }
}

/// Runs the degree-by-degree clearing at truncation `min(n, N_f)`.
///
/// For each `l = 1, ..., N-2` with `q ∤ l`, the coefficient `A` of `z^{l+1}`
/// (relative to `gamma`) is cleared by conjugating with `z + B z^{l+1}`,
/// `B = -A / (gamma^l - 1)`. Degrees with `q | l` are kept.
pub fn to_normal_form<R: Ring>(f: &ParabolicGerm<R>, n: usize) -> Result<NormalFormResult<R>> {
    let q = f.q();
    let n = f.trunc().map_or(n, |m| m.min(n));
    let need = 2 * q as usize + 2;
    if n < need {
        return Err(Error::TruncationTooSmall {
            needed: need,
            available: n,
        });
    }
    let ring = f.ring().clone();
    let gamma = f.gamma().clone();
    let mut g = f.series().truncate(n);
    let mut h = TruncatedSeries::identity(ring.clone(), Some(n));
    if q == 1 {
        return Ok(NormalFormResult { h, g, gamma, q });
    }
    for l in 1..=n - 2 {
        if (l as u64).is_multiple_of(q) {
            continue;
        }
        let a = ring.div(&g.coeff(l + 1), &gamma)?;
        if ring.is_zero(&a) {
            continue;
        }
        let denom = ring.sub(&ring.pow(&gamma, l as u64), &ring.one());
        let b = ring.neg(&ring.div(&a, &denom)?);
        let step = TruncatedSeries::identity(ring.clone(), Some(n))
            .add(&TruncatedSeries::monomial(ring.clone(), b, l + 1, Some(n)))?;
        let step_inv = step.inverse()?;
        g = step.compose(&g.compose(&step_inv)?)?;
        h = step.compose(&h)?;
    }
    Ok(NormalFormResult { h, g, gamma, q })
}

/// The value of `M_q` at the coefficients of `f`, via the reduced form:
/// `a_1((q+1)/2 a_1^2 - a_2)` for odd `p`, `a_1 a_2 (a_1^2 - a_2)` for `p = 2`.
pub fn mq_evaluate<R: Ring>(f: &ParabolicGerm<R>) -> Result<R::Elem> {
    let q = f.q();
    let nf = to_normal_form(f, 2 * q as usize + 2)?;
    let ring = f.ring();
    let (a1, a2) = (nf.a(1), nf.a(2));
    let a1_sq = ring.mul(&a1, &a1);
    Ok(if ring.characteristic() == 2 {
        ring.mul(&ring.mul(&a1, &a2), &ring.sub(&a1_sq, &a2))
    } else {
        let head = ring.mul(&ring.half_int(q as i64 + 1)?, &a1_sq);
        ring.mul(&a1, &ring.sub(&head, &a2))
    })
}

/// Minimality of a reduced-form germ read from `a_1, a_2`.
pub fn normal_form_criterion<R: Ring>(
    ring: &R,
    a1: &R::Elem,
    a2: &R::Elem,
    q: u64,
) -> Result<TriState> {
    let nonzero = |x: &R::Elem| !ring.zero_test(x).is_zero();
    let a1_sq = ring.mul(a1, a1);
    Ok(if ring.characteristic() == 2 {
        nonzero(a1)
            .and(nonzero(a2))
            .and(nonzero(&ring.sub(a2, &a1_sq)))
    } else {
        let head = ring.mul(&ring.half_int(q as i64 + 1)?, &a1_sq);
        nonzero(a1).and(nonzero(&ring.sub(a2, &head)))
    })
}
