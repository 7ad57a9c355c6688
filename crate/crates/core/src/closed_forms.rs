//! Explicit leading coefficients of iterates, and checks of them against
//! brute-force iteration.

use crate::error::{Error, Result};
use crate::ramification::least_ramification;
use crate::rings::Ring;
use crate::series::{ParabolicGerm, TruncatedSeries};

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormPair<E> {
    pub p: u64,
    pub q: u64,
    pub n: u32,
    pub chi: E,
    pub xi: E,
}

/// `chi_{q,n}` and `xi_{q,n}` for a reduced-form germ with coefficients `a1, a2`.
///
/// With `K = (q+1)/2 a1^2 - a2` and `e = (p^n - 1)/(p - 1)`:
/// odd `p` gives `chi = q a1^{p^n - e} K^e`, `xi = -q a1^{p^n - e - 1} K^{e+1}`;
/// `p = 2` gives `chi = a1 K` at `n = 1` and
/// `chi = a1 ((q-1)/2 a1^2 - a2)^{2^{n-1} - 1} K^{2^{n-1}}` beyond, with
/// `xi = a2^{2^{n-1}} (a1^2 - a2)^{2^{n-1}}` throughout.
pub fn chi_xi<R: Ring>(
    ring: &R,
    q: u64,
    n: u32,
    a1: &R::Elem,
    a2: &R::Elem,
) -> Result<ClosedFormPair<R::Elem>> {
    let p = ring.characteristic();
    if n == 0 {
        return Err(Error::InvalidParameter(
            "chi and xi are defined for n >= 1".into(),
        ));
    }
    if q.is_multiple_of(p) {
        return Err(Error::POrderRequested { q, p });
    }
    let a1_sq = ring.mul(a1, a1);
    let k_plus = ring.sub(&ring.mul(&ring.half_int(q as i64 + 1)?, &a1_sq), a2);
    let qe = ring.from_int((q % p) as i64);
    let (chi, xi) = if p != 2 {
        let pn = p.pow(n);
        let e = (pn - 1) / (p - 1);
        let chi = ring.mul(&qe, &ring.mul(&ring.pow(a1, pn - e), &ring.pow(&k_plus, e)));
        let xi = ring.neg(&ring.mul(
            &qe,
            &ring.mul(&ring.pow(a1, pn - e - 1), &ring.pow(&k_plus, e + 1)),
        ));
        (chi, xi)
    } else {
        let half = 1u64 << (n - 1);
        let xi = ring.mul(&ring.pow(a2, half), &ring.pow(&ring.sub(&a1_sq, a2), half));
        let chi = if n == 1 {
            ring.mul(a1, &k_plus)
        } else {
            let k_minus = ring.sub(&ring.mul(&ring.half_int(q as i64 - 1)?, &a1_sq), a2);
            ring.mul(
                a1,
                &ring.mul(&ring.pow(&k_minus, half - 1), &ring.pow(&k_plus, half)),
            )
        };
        (chi, xi)
    };
    Ok(ClosedFormPair { p, q, n, chi, xi })
}

/// Coefficients of `z^0, z^q, z^{2q}` in `g^q / z`:
/// `(1, q a1, q((q^2 - 1)/2 a1^2 + a2))`.
pub fn iterate_q_closed<R: Ring>(
    ring: &R,
    q: u64,
    a1: &R::Elem,
    a2: &R::Elem,
) -> Result<[R::Elem; 3]> {
    let qe = ring.from_int((q % ring.characteristic()) as i64);
    let half = ring.half_int((q * q) as i64 - 1)?;
    let second = ring.mul(&qe, &ring.add(&ring.mul(&half, &ring.mul(a1, a1)), a2));
    Ok([ring.one(), ring.mul(&qe, a1), second])
}

/// Coefficients of `z^2` and `z^3` in the `l`-th iterate of `z + a z^2 + b z^3 + ...`.
pub fn ell_iterate_quadratic<R: Ring>(
    ring: &R,
    ell: u64,
    a: &R::Elem,
    b: &R::Elem,
) -> (R::Elem, R::Elem) {
    let p = ring.characteristic();
    let l = ring.from_int((ell % p) as i64);
    let l1 = ring.from_int(((ell + p - 1) % p) as i64);
    let c2 = ring.mul(&l, a);
    let c3 = ring.add(
        &ring.mul(&ring.mul(&l, &l1), &ring.mul(a, a)),
        &ring.mul(&l, b),
    );
    (c2, c3)
}

/// `Delta_1 = f - z`, `Delta_m = Delta_{m-1} ∘ f - Delta_{m-1}`.
///
/// `Delta_m = sum_j (-1)^{m-j} C(m, j) f^j`, so `Delta_p = f^p - z` in characteristic `p`.
pub fn delta_tower<R: Ring>(f: &TruncatedSeries<R>, m: u32) -> Result<TruncatedSeries<R>> {
    let z = TruncatedSeries::identity(f.ring().clone(), f.trunc());
    if m == 0 {
        return Ok(z);
    }
    let mut delta = f.sub(&z)?;
    for _ in 1..m {
        delta = delta.compose(f)?.sub(&delta)?;
    }
    Ok(delta)
}

/// `g = gamma z (1 + sum_j a[j-1] z^{jq}) mod z^n`.
pub fn reduced_form_series<R: Ring>(
    ring: &R,
    gamma: &R::Elem,
    q: u64,
    a: &[R::Elem],
    n: usize,
) -> TruncatedSeries<R> {
    let mut coeffs = vec![ring.zero(); n];
    if n > 1 {
        coeffs[1] = gamma.clone();
    }
    for (j, aj) in a.iter().enumerate() {
        let e = (j + 1) * q as usize + 1;
        if e < n {
            coeffs[e] = ring.mul(gamma, aj);
        }
    }
    TruncatedSeries::new(ring.clone(), coeffs, n)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch<E> {
    pub exponent: usize,
    pub expected: E,
    pub actual: E,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SemiconjReport<E> {
    pub q: u64,
    pub m: u64,
    pub window: usize,
    pub holds: bool,
    pub first_mismatch: Option<Mismatch<E>>,
}

fn first_mismatch<R: Ring>(
    lhs: &TruncatedSeries<R>,
    rhs: &TruncatedSeries<R>,
    window: usize,
) -> Option<Mismatch<R::Elem>> {
    (0..window).find_map(|e| {
        let (a, b) = (lhs.coeff(e), rhs.coeff(e));
        (a != b).then(|| Mismatch {
            exponent: e,
            expected: b,
            actual: a,
        })
    })
}

/// Checks `pi ∘ g^m = ghat^m ∘ pi` with `pi(z) = z^q` and
/// `ghat(z) = z (1 + sum_j a_j z^j)^q`, for `g` in reduced form.
pub fn semiconj_check<R: Ring>(g: &ParabolicGerm<R>, m: u64) -> Result<SemiconjReport<R::Elem>> {
    let ring = g.ring().clone();
    let q = g.q();
    let n = g.trunc().ok_or(Error::UnboundedResult {
        degree: g.series().coeffs().len().saturating_sub(1),
    })?;
    for e in g.series().support() {
        if q > 1 && e as u64 % q != 1 {
            return Err(Error::SupportViolation { exponent: e, q });
        }
    }
    // Inner factor 1 + sum a_j z^j is known for j*q + 1 < n.
    let known = (n - 2) / q as usize + 1;
    let mut inner = vec![ring.one()];
    for j in 1..known {
        inner.push(ring.div(&g.series().coeff(j * q as usize + 1), g.gamma())?);
    }
    let inner = TruncatedSeries::new(ring.clone(), inner, known);
    let ghat = TruncatedSeries::new(
        ring.clone(),
        std::iter::once(ring.zero())
            .chain(inner.pow(q).coeffs().iter().cloned())
            .collect(),
        known + 1,
    );
    let pi = TruncatedSeries::monomial(ring.clone(), ring.one(), q as usize, None);
    let lhs = pi.compose(&g.series().iterate(m)?)?;
    let rhs = ghat.iterate(m)?.compose(&pi)?;
    let window = n.min(rhs.trunc().unwrap_or(n));
    let mismatch = first_mismatch(&lhs, &rhs, window);
    Ok(SemiconjReport {
        q,
        m,
        window,
        holds: mismatch.is_none(),
        first_mismatch: mismatch,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MainLemmaReport<E> {
    pub p: u64,
    pub q: u64,
    pub n: u32,
    /// The comparison covers exponents below this.
    pub window: usize,
    pub chi: E,
    pub xi: E,
    pub pass: bool,
    pub first_mismatch: Option<Mismatch<E>>,
}

/// Truncation needed to check level `n`: `q(p^{n+1} - 1)/(p - 1) + 2q + 1`.
pub fn main_lemma_window(p: u64, q: u64, n: u32) -> usize {
    (least_ramification(p, q, n) + 2 * q + 1) as usize
}

/// Compares `g^{q p^n}` with `z (1 + chi z^E + xi z^{E+q})` modulo `z^{E + 2q + 1}`,
/// every other coefficient in the window being required to vanish.
pub fn verify_main_lemma<R: Ring>(
    ring: &R,
    gamma: &R::Elem,
    n: u32,
    a: &[R::Elem],
    trunc: usize,
) -> Result<MainLemmaReport<R::Elem>> {
    let p = ring.characteristic();
    let q = ring
        .multiplicative_order(gamma)
        .ok_or_else(|| Error::NotParabolic("gamma is not a root of unity".into()))?;
    let window = main_lemma_window(p, q, n);
    if trunc < window {
        return Err(Error::TruncationTooSmall {
            needed: window,
            available: trunc,
        });
    }
    let zero = ring.zero();
    let a1 = a.first().unwrap_or(&zero);
    let a2 = a.get(1).unwrap_or(&zero);
    let pair = chi_xi(ring, q, n, a1, a2)?;
    let e = least_ramification(p, q, n) as usize;
    let mut expected = vec![ring.zero(); window];
    expected[1] = ring.one();
    expected[e + 1] = pair.chi.clone();
    expected[e + q as usize + 1] = pair.xi.clone();
    let expected = TruncatedSeries::new(ring.clone(), expected, window);

    let g = reduced_form_series(ring, gamma, q, a, window);
    let iterate = g.iterate(q * p.pow(n))?;
    let mismatch = first_mismatch(&iterate, &expected, window);
    Ok(MainLemmaReport {
        p,
        q,
        n,
        window,
        chi: pair.chi,
        xi: pair.xi,
        pass: mismatch.is_none(),
        first_mismatch: mismatch,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct QIterateReport<E> {
    pub q: u64,
    pub window: usize,
    pub expected: [E; 3],
    pub pass: bool,
    pub first_mismatch: Option<Mismatch<E>>,
}

/// Compares `g^q` with `z (1 + q a1 z^q + q((q^2-1)/2 a1^2 + a2) z^{2q})` modulo `z^{3q+1}`.
pub fn verify_q_iterate<R: Ring>(
    ring: &R,
    gamma: &R::Elem,
    a: &[R::Elem],
) -> Result<QIterateReport<R::Elem>> {
    let q = ring
        .multiplicative_order(gamma)
        .ok_or_else(|| Error::NotParabolic("gamma is not a root of unity".into()))?;
    let window = 3 * q as usize + 1;
    let zero = ring.zero();
    let a1 = a.first().unwrap_or(&zero);
    let a2 = a.get(1).unwrap_or(&zero);
    let triple = iterate_q_closed(ring, q, a1, a2)?;
    let mut expected = vec![ring.zero(); window];
    for (k, c) in triple.iter().enumerate() {
        expected[k * q as usize + 1] = c.clone();
    }
    let expected = TruncatedSeries::new(ring.clone(), expected, window);
    let g = reduced_form_series(ring, gamma, q, a, window);
    let iterate = g.iterate(q)?;
    let mismatch = first_mismatch(&iterate, &expected, window);
    Ok(QIterateReport {
        q,
        window,
        expected: triple,
        pass: mismatch.is_none(),
        first_mismatch: mismatch,
    })
}
