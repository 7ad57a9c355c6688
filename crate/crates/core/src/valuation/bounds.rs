use super::newton::{newton_polygon, NewtonPolygon};
use super::Rational;
use crate::error::{Error, Result};
use crate::ramification::{
    least_ramification, level_zero_coefficients, ramification_profile, resit_from_coefficients,
    LowerRamification,
};
use crate::rings::{LaurentField, LaurentScalar, Ring, TriState};
use crate::series::{Order, ParabolicGerm, TruncatedSeries, Wideg};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundBranch {
    /// `n = 0`: `v(delta_0)/q`.
    FixedPoint,
    /// `p` odd, or `p = 2` and `n = 1`: `v(delta_0)/q + v(resit)/(qp)`.
    Generic,
    /// `p = 2` and `n >= 2`: `v(delta_0)/q + v(resit (1 - resit))/(4q)`.
    CharTwoDeep,
}

impl BoundBranch {
    pub fn label(self) -> &'static str {
        match self {
            BoundBranch::FixedPoint => "fixed-point",
            BoundBranch::Generic => "generic",
            BoundBranch::CharTwoDeep => "char-two-deep",
        }
    }
}

/// Every periodic point `z0` of minimal period `q p^n` in the open unit disk
/// has `v(z0) <= bound_valuation`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCertificate {
    pub p: u64,
    pub q: u64,
    pub n: u32,
    pub branch: BoundBranch,
    pub delta0_valuation: i64,
    pub resit: Option<LaurentScalar>,
    pub bound_valuation: Rational,
    /// `v(delta_n / delta_{n-1}) / (q p^n)`, when both are known.
    pub lemma_bound: Option<Rational>,
    /// Whether the Weierstrass degree of `(f^{qp^n} - z)/(f^{qp^{n-1}} - z)` is
    /// `i_n - i_{n-1} + q p^n` (at `n = 0`: `wideg(f^q - z) = i_0 + q + 1`).
    pub equality_condition: TriState,
}

fn valuation_of(x: &LaurentScalar) -> Result<Option<i64>> {
    x.valuation()
}

fn check_integral(f: &ParabolicGerm<LaurentField>) -> Result<()> {
    let ring = f.ring();
    for (i, c) in f.series().coeffs().iter().enumerate() {
        if ring.is_integral(c) == Some(false) {
            return Err(Error::NonIntegralCoefficient { degree: i });
        }
    }
    Ok(())
}

/// Truncation used for exact inputs.
fn working_truncation(p: u64, q: u64, n: u32) -> usize {
    (2 * least_ramification(p, q, n) + 2 * q * p.pow(n) + 2) as usize
}

fn truncated(f: &ParabolicGerm<LaurentField>, n: u32) -> Result<ParabolicGerm<LaurentField>> {
    match f.trunc() {
        Some(_) => Ok(f.clone()),
        None => ParabolicGerm::new(f.series().truncate(working_truncation(f.p(), f.q(), n))),
    }
}

/// Decides the Weierstrass-degree condition at level `n` from the
/// ramification numbers of `f` and of its reduction.
fn lemma_equality(
    f: &ParabolicGerm<LaurentField>,
    i: &[LowerRamification],
    n: u32,
) -> Result<TriState> {
    let q = f.q();
    let (red, _) = f.series().reduce_and_wideg()?;
    let red = ParabolicGerm::new(red)?;
    let red_prof = match ramification_profile(&red, n) {
        Ok(prof) => prof,
        Err(Error::TruncationTooSmall { .. }) => return Ok(TriState::Indeterminate),
        Err(e) => return Err(e),
    };
    let n_us = n as usize;
    let Some(i_n) = i[n_us].finite() else {
        return Ok(TriState::Indeterminate);
    };
    let (i_prev, red_prev) = if n == 0 {
        // wideg(f^q - z) = i_0(red) + 1 against i_0 + q + 1.
        (0, 0)
    } else {
        let Some(i_prev) = i[n_us - 1].finite() else {
            return Ok(TriState::Indeterminate);
        };
        let Some(red_prev) = red_prof.i(n - 1).finite() else {
            return Ok(TriState::Indeterminate);
        };
        (i_prev, red_prev)
    };
    let span = if n == 0 { q } else { q * f.p().pow(n) };
    let target = i_n - i_prev + span;
    Ok(match red_prof.i(n) {
        LowerRamification::Finite(k) => TriState::from_bool(k - red_prev == target),
        LowerRamification::Infinite => TriState::No,
        LowerRamification::BeyondTruncation { at_least } => {
            if at_least.saturating_sub(red_prev) > target {
                TriState::No
            } else {
                TriState::Indeterminate
            }
        }
    })
}

/// The lower bound on `|z0|` for periodic points of minimal period `q p^n`,
/// as an upper bound on `v(z0)`.
pub fn periodic_valuation_bound(
    f: &ParabolicGerm<LaurentField>,
    n: u32,
) -> Result<BoundCertificate> {
    check_integral(f)?;
    let (p, q) = (f.p(), f.q());
    let ring = f.ring();
    let work = truncated(f, n)?;
    let prof = ramification_profile(&work, n)?;
    let i: Vec<LowerRamification> = (0..=n).map(|m| prof.i(m)).collect();
    let delta_val = |m: u32| -> Result<Option<i64>> {
        match prof.delta(m) {
            Some(d) => valuation_of(d),
            None => Ok(None),
        }
    };
    let lemma_bound = match (
        n,
        delta_val(n)?,
        if n > 0 { delta_val(n - 1)? } else { Some(0) },
    ) {
        (_, Some(a), Some(b)) => Some(Rational::new(a - b, (q * p.pow(n)) as i64)),
        _ => None,
    };
    let equality_condition = lemma_equality(&work, &i, n)?;

    if n == 0 {
        let v0 = match i[0] {
            LowerRamification::Infinite => return Err(Error::UnboundedBound),
            _ => delta_val(0)?.ok_or(Error::IndeterminateValuation)?,
        };
        return Ok(BoundCertificate {
            p,
            q,
            n,
            branch: BoundBranch::FixedPoint,
            delta0_valuation: v0,
            resit: None,
            bound_valuation: Rational::new(v0, q as i64),
            lemma_bound,
            equality_condition,
        });
    }

    let (a1, a2) = match level_zero_coefficients(f) {
        Err(Error::NotMinimallyRamifiedAtLevelZero { .. }) => return Err(Error::ResitUndefined),
        other => other?,
    };
    let r = resit_from_coefficients(ring, q, &a1, &a2)?;
    let v0 = delta_val(0)?.ok_or(Error::IndeterminateValuation)?;
    let (branch, x, denom) = if p != 2 || n == 1 {
        (BoundBranch::Generic, r.clone(), q * p)
    } else {
        let one_minus = ring.sub(&ring.one(), &r);
        (BoundBranch::CharTwoDeep, ring.mul(&r, &one_minus), 4 * q)
    };
    let vx = valuation_of(&x)?.ok_or(Error::UnboundedBound)?;
    Ok(BoundCertificate {
        p,
        q,
        n,
        branch,
        delta0_valuation: v0,
        resit: Some(r),
        bound_valuation: Rational::new(v0, q as i64) + Rational::new(vx, denom as i64),
        lemma_bound,
        equality_condition,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CycleReport {
    pub p: u64,
    pub q: u64,
    pub n: u32,
    /// `(f^{qp^n} - z)/(f^{qp^{n-1}} - z)`, or `(f^q - z)/z` at `n = 0`.
    pub quotient: TruncatedSeries<LaurentField>,
    pub integral: bool,
    pub polygon: NewtonPolygon,
    /// Multiplicity of `0` as a root of the quotient.
    pub zero_multiplicity: usize,
    pub positive_valuations: Vec<(Rational, usize)>,
    pub max_positive_valuation: Option<Rational>,
    /// `v(delta_n / delta_{n-1}) / (q p^n)`; `v(delta_0)/q` at `n = 0`.
    pub lemma_bound: Rational,
    pub wideg: Wideg,
    /// Weierstrass degree of the quotient in the equality case.
    pub target: usize,
    pub equality_condition: TriState,
    pub bound_attained: bool,
}

fn iterate_minus_identity(
    s: &TruncatedSeries<LaurentField>,
) -> Result<(TruncatedSeries<LaurentField>, usize)> {
    let z = TruncatedSeries::identity(*s.ring(), None);
    let diff = s.sub(&z)?;
    match diff.ord() {
        Order::Finite(k) => Ok((diff, k)),
        _ => Err(Error::InvalidParameter(
            "the iterate is the identity".into(),
        )),
    }
}

/// Root valuations of the period quotient of an exact polynomial germ.
pub fn cycle_valuations(
    f: &ParabolicGerm<LaurentField>,
    n: u32,
    degree_limit: usize,
) -> Result<CycleReport> {
    if f.trunc().is_some() {
        return Err(Error::NotAPolynomial);
    }
    check_integral(f)?;
    let (p, q) = (f.p(), f.q());
    let span = q * p.pow(n);
    let d = f.series().degree().unwrap_or(1) as u64;
    let total = u32::try_from(span).ok().and_then(|s| d.checked_pow(s));
    match total {
        Some(t) if t <= degree_limit as u64 => {}
        _ => {
            return Err(Error::DegreeTooLarge {
                degree: total.map_or(usize::MAX, |t| t as usize),
                limit: degree_limit,
            })
        }
    }
    let ring = *f.ring();
    let (num, den, prev_ord) = if n == 0 {
        let num = f.series().iterate(q)?;
        let z = TruncatedSeries::identity(ring, None);
        (iterate_minus_identity(&num)?.0, z, None)
    } else {
        let prev = f.series().iterate(q * p.pow(n - 1))?;
        let cur = prev.iterate(p)?;
        let (den, k_prev) = iterate_minus_identity(&prev)?;
        (iterate_minus_identity(&cur)?.0, den, Some(k_prev))
    };
    let Order::Finite(k) = num.ord() else {
        unreachable!()
    };
    let i_n = k - 1;
    let (quotient, integral) = num.divide_exact(&den)?;
    if !quotient.is_exact() {
        return Err(Error::IndeterminateValuation);
    }
    let polygon = newton_polygon(&quotient)?;
    let zero_multiplicity = polygon.ord();
    let lead = quotient.coeff(zero_multiplicity);
    let lead_val = valuation_of(&lead)?.expect("nonzero");
    let lemma_bound = Rational::new(lead_val, span as i64);
    let positive_valuations = polygon.positive_root_valuations();
    let max_positive_valuation = positive_valuations.first().map(|&(v, _)| v);
    let target = match prev_ord {
        None => i_n + q as usize,
        Some(k_prev) => i_n - (k_prev - 1) + span as usize,
    };
    let wideg = if integral {
        quotient.reduce_and_wideg()?.1
    } else {
        Wideg::Indeterminate
    };
    let equality_condition = match wideg {
        Wideg::Finite(w) => TriState::from_bool(w == target),
        Wideg::Infinite => TriState::No,
        Wideg::Indeterminate => TriState::Indeterminate,
    };
    Ok(CycleReport {
        p,
        q,
        n,
        quotient,
        integral,
        polygon,
        zero_multiplicity,
        bound_attained: max_positive_valuation == Some(lemma_bound),
        positive_valuations,
        max_positive_valuation,
        lemma_bound,
        wideg,
        target,
        equality_condition,
    })
}
