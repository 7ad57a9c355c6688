//! Single-instance checks behind the verification sweeps.

use crate::json;
use parabolic_core::closed_forms::{
    delta_tower, semiconj_check, verify_main_lemma, verify_q_iterate,
};
use parabolic_core::error::{Error, Result};
use parabolic_core::normal_form::{mq_evaluate, to_normal_form};
use parabolic_core::ramification::{
    check_quasi_invariance, is_minimally_ramified, least_ramification, ramification_profile,
    LowerRamification, MinimalityMode,
};
use parabolic_core::rings::{LaurentField, Ring, TriState};
use parabolic_core::series::{ParabolicGerm, TruncatedSeries};
use serde_json::{json, Value};

/// Outcome of one check; `detail` is what a sweep reports on failure.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseOutcome {
    pub pass: bool,
    pub detail: Value,
}

/// Main Lemma at level `n` and the `q`-iterate formula for `gamma z (1 + sum a_j z^{jq})`.
pub fn main_lemma<R: Ring>(
    ring: &R,
    gamma: &R::Elem,
    n: u32,
    a: &[R::Elem],
    trunc: usize,
) -> Result<CaseOutcome> {
    let ml = verify_main_lemma(ring, gamma, n, a, trunc)?;
    let qi = verify_q_iterate(ring, gamma, a)?;
    Ok(CaseOutcome {
        pass: ml.pass && qi.pass,
        detail: json!({
            "coeffs": json::scalars(ring, a),
            "window": ml.window,
            "chi": json::scalar(ring, &ml.chi),
            "xi": json::scalar(ring, &ml.xi),
            "main_lemma_pass": ml.pass,
            "first_mismatch": json::mismatch(ring, &ml.first_mismatch),
            "q_iterate_window": qi.window,
            "q_iterate": json::scalars(ring, &qi.expected),
            "q_iterate_pass": qi.pass,
            "q_iterate_mismatch": json::mismatch(ring, &qi.first_mismatch),
        }),
    })
}

/// `Delta_p` against the `p`-th iterate minus `z`.
pub fn delta_tower_identity<R: Ring>(f: &TruncatedSeries<R>) -> Result<CaseOutcome> {
    let p = f.ring().characteristic();
    let tower = delta_tower(f, p as u32)?;
    let z = TruncatedSeries::identity(f.ring().clone(), f.trunc());
    let direct = f.iterate(p)?.sub(&z)?;
    Ok(CaseOutcome {
        pass: tower == direct,
        detail: json!({
            "series": f.format(),
            "delta_tower": tower.format(),
            "iterate_minus_z": direct.format(),
        }),
    })
}

/// Lower bound `i_n >= q(p^{n+1}-1)/(p-1)` and strict growth of the exact `i_n`.
pub fn ramification_bounds<R: Ring>(f: &ParabolicGerm<R>, n_max: u32) -> Result<CaseOutcome> {
    let prof = match ramification_profile(f, n_max) {
        Ok(prof) => prof,
        // No level is exact, so there is nothing to bound.
        Err(Error::TruncationTooSmall { .. }) => {
            return Ok(CaseOutcome {
                pass: true,
                detail: json!({"series": f.series().format(), "i": [format!(">={}", f.trunc().unwrap_or(1) - 1)]}),
            })
        }
        Err(e) => return Err(e),
    };
    let exact: Vec<Option<u64>> = prof.entries.iter().map(|e| e.i.finite()).collect();
    let above = prof.entries.iter().all(|e| match e.i {
        LowerRamification::Finite(i) => i >= least_ramification(f.p(), f.q(), e.n),
        _ => true,
    });
    let increasing = exact.windows(2).all(|w| match (w[0], w[1]) {
        (Some(a), Some(b)) => a < b,
        _ => true,
    });
    let nonzero_delta = prof
        .entries
        .iter()
        .all(|e| e.i.finite().is_none() || e.delta.as_ref().is_some_and(|d| !f.ring().is_zero(d)));
    let (i, delta) = json::profile(f.ring(), &prof);
    Ok(CaseOutcome {
        pass: above && increasing && nonzero_delta,
        detail: json!({"series": f.series().format(), "i": i, "delta": delta}),
    })
}

/// Criterion and definitional verdicts agree, and `M_q` vanishes off the minimal locus.
pub fn minimality_agreement<R: Ring>(f: &ParabolicGerm<R>, n_max: u32) -> Result<CaseOutcome> {
    let ring = f.ring();
    let crit = is_minimally_ramified(f, MinimalityMode::Criterion)?;
    let defn = is_minimally_ramified(f, MinimalityMode::Definitional { n_max })?;
    let mq = mq_evaluate(f)?;
    let agree = crit.verdict == defn.verdict && crit.verdict != TriState::Indeterminate;
    let mq_ok = defn.verdict != TriState::No || ring.is_zero(&mq);
    Ok(CaseOutcome {
        pass: agree && mq_ok,
        detail: json!({
            "series": f.series().format(),
            "criterion": json::verdict(ring, &crit),
            "definitional": json::verdict(ring, &defn),
            "mq": json::scalar(ring, &mq),
        }),
    })
}

/// Support of the reduced form, `h ∘ f = g ∘ h` mod `z^{2q+2}`, and
/// `delta_0(f^q) = q a_1` (the `z^{q+1}` coefficient of `f^q` is `q a_1` in any case).
pub fn normal_form<R: Ring>(f: &ParabolicGerm<R>) -> Result<CaseOutcome> {
    let ring = f.ring();
    let q = f.q() as usize;
    let need = 2 * q + 2;
    let nf = to_normal_form(f, f.trunc().unwrap_or(need))?;
    let support_ok = nf.g.support().iter().all(|e| e % q == 1 % q);
    let lhs = nf.h.compose(&f.series().truncate(need))?;
    let rhs = nf.g.truncate(need).compose(&nf.h.truncate(need))?;
    let recompose_ok = lhs.eq_mod(&rhs, need);
    let a1 = nf.a(1);
    let qa1 = ring.mul(&ring.from_int((f.q() % f.p()) as i64), &a1);
    let fq = f.series().truncate(need).iterate(f.q())?;
    let mut delta_ok = fq.coeff(q + 1) == qa1;
    let mut delta0 = None;
    if !ring.is_zero(&a1) {
        let prof = ramification_profile(&ParabolicGerm::new(f.series().truncate(need))?, 0)?;
        delta_ok &= prof.i(0) == LowerRamification::Finite(f.q()) && prof.delta(0) == Some(&qa1);
        delta0 = prof.delta(0).cloned();
    }
    Ok(CaseOutcome {
        pass: support_ok && recompose_ok && delta_ok,
        detail: json!({
            "series": f.series().format(),
            "g": nf.g.format(),
            "h": nf.h.format(),
            "a1": json::scalar(ring, &a1),
            "delta0": json::opt_scalar(ring, delta0.as_ref()),
            "support_ok": support_ok,
            "recompose_ok": recompose_ok,
            "delta0_ok": delta_ok,
        }),
    })
}

/// `i_n` and `delta_n` of `h^{-1} ∘ f ∘ h` against those of `f`.
pub fn quasi_invariance<R: Ring>(
    f: &ParabolicGerm<R>,
    h: &TruncatedSeries<R>,
    n_max: u32,
) -> Result<CaseOutcome> {
    let ring = f.ring();
    let rep = check_quasi_invariance(f, h, n_max)?;
    let lines: Vec<Value> = rep
        .lines
        .iter()
        .map(|l| {
            json!({
                "n": l.n,
                "i_f": json::ramification(l.i_f),
                "i_conj": json::ramification(l.i_conj),
                "delta_f": json::opt_scalar(ring, l.delta_f.as_ref()),
                "delta_conj": json::opt_scalar(ring, l.delta_conj.as_ref()),
                "expected": json::opt_scalar(ring, l.expected.as_ref()),
                "holds": l.holds,
            })
        })
        .collect();
    // Levels beyond the truncation on both sides only agree as lower bounds.
    let decided = rep
        .lines
        .iter()
        .all(|l| l.i_f.finite().is_some() || l.i_f == LowerRamification::Infinite);
    Ok(CaseOutcome {
        pass: rep.holds,
        detail: json!({
            "series": f.series().format(),
            "h": h.format(),
            "scale": json::scalar(ring, &rep.scale),
            "decided": decided,
            "lines": lines,
        }),
    })
}

/// `pi ∘ g^m = ghat^m ∘ pi` for a reduced-form germ.
pub fn semiconjugacy<R: Ring>(g: &ParabolicGerm<R>, m: u64) -> Result<CaseOutcome> {
    let ring = g.ring();
    let rep = semiconj_check(g, m)?;
    Ok(CaseOutcome {
        pass: rep.holds,
        detail: json!({
            "series": g.series().format(),
            "m": m,
            "window": rep.window,
            "first_mismatch": json::mismatch(ring, &rep.first_mismatch),
        }),
    })
}

/// `f^{qp^{n-1}} - z` divides `f^{qp^n} - z` exactly with integral quotient.
pub fn divisibility(f: &ParabolicGerm<LaurentField>, n: u32) -> Result<CaseOutcome> {
    let (p, q) = (f.p(), f.q());
    let z = TruncatedSeries::identity(*f.ring(), None);
    let prev = f.series().iterate(q * p.pow(n - 1))?;
    let cur = prev.iterate(p)?;
    let (quot, integral) = cur.sub(&z)?.divide_exact(&prev.sub(&z)?)?;
    Ok(CaseOutcome {
        pass: integral && quot.is_exact(),
        detail: json!({
            "series": f.series().format(),
            "n": n,
            "quotient_degree": quot.degree(),
            "integral": integral,
        }),
    })
}
