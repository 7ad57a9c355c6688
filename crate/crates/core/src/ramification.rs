//! Lower ramification numbers `i_n(f^q)`, the coefficients `delta_n(f^q)`,
//! the iterative residue, and minimal-ramification verdicts.

use std::fmt;

use crate::error::{Error, Result};
use crate::normal_form::to_normal_form;
use crate::rings::{Ring, TriState, ZeroTest};
use crate::series::{Order, ParabolicGerm, TruncatedSeries};

/// `q (p^{n+1} - 1) / (p - 1)`, the least possible value of `i_n(f^q)`.
pub fn least_ramification(p: u64, q: u64, n: u32) -> u64 {
    q * (p.pow(n + 1) - 1) / (p - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LowerRamification {
    Finite(u64),
    /// The iterate is the identity; certified for exact polynomial input only.
    Infinite,
    /// Every coefficient the truncation exposes vanishes.
    BeyondTruncation {
        at_least: u64,
    },
}

impl LowerRamification {
    pub fn finite(self) -> Option<u64> {
        match self {
            LowerRamification::Finite(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for LowerRamification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerRamification::Finite(i) => write!(f, "{i}"),
            LowerRamification::Infinite => f.write_str("inf"),
            LowerRamification::BeyondTruncation { at_least } => write!(f, ">={at_least}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RamificationEntry<E> {
    pub n: u32,
    pub i: LowerRamification,
    /// `delta_n(f^q)`, present when `i` is finite.
    pub delta: Option<E>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RamificationProfile<R: Ring> {
    pub p: u64,
    pub q: u64,
    pub trunc: Option<usize>,
    pub entries: Vec<RamificationEntry<R::Elem>>,
}

impl<R: Ring> RamificationProfile<R> {
    pub fn i(&self, n: u32) -> LowerRamification {
        self.entries[n as usize].i
    }

    pub fn delta(&self, n: u32) -> Option<&R::Elem> {
        self.entries[n as usize].delta.as_ref()
    }
}

/// Reads `i` and `delta` off `g - z` for `g` tangent to the identity.
pub(crate) fn entry_from_iterate<R: Ring>(
    n: u32,
    iterate: &TruncatedSeries<R>,
) -> Result<RamificationEntry<R::Elem>> {
    let z = TruncatedSeries::identity(iterate.ring().clone(), iterate.trunc());
    let diff = iterate.sub(&z)?;
    Ok(match diff.ord() {
        Order::Finite(k) => RamificationEntry {
            n,
            i: LowerRamification::Finite(k as u64 - 1),
            delta: Some(diff.coeff(k)),
        },
        Order::Infinite => RamificationEntry {
            n,
            i: LowerRamification::Infinite,
            delta: None,
        },
        Order::AtLeast(k) => RamificationEntry {
            n,
            i: LowerRamification::BeyondTruncation {
                at_least: k.saturating_sub(1) as u64,
            },
            delta: None,
        },
    })
}

/// `(n, i_n(f^q), delta_n(f^q))` for `n = 0..=n_max`, at the germ's own truncation.
pub fn ramification_profile<R: Ring>(
    f: &ParabolicGerm<R>,
    n_max: u32,
) -> Result<RamificationProfile<R>> {
    let p = f.p();
    let mut cur = f.qth_iterate()?;
    let mut entries = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        if n > 0 {
            cur = cur.iterate(p)?;
        }
        let entry = entry_from_iterate(n, &cur)?;
        if n == 0 {
            if let LowerRamification::BeyondTruncation { .. } = entry.i {
                let available = f.trunc().unwrap_or(0);
                return Err(Error::TruncationTooSmall {
                    needed: available + 1,
                    available,
                });
            }
        }
        let done = entry.i == LowerRamification::Infinite;
        entries.push(entry);
        if done {
            // The identity stays the identity.
            for m in n + 1..=n_max {
                entries.push(RamificationEntry {
                    n: m,
                    i: LowerRamification::Infinite,
                    delta: None,
                });
            }
            break;
        }
    }
    Ok(RamificationProfile {
        p,
        q: f.q(),
        trunc: f.trunc(),
        entries,
    })
}

/// Truncation needed to read `a_1, a_2` (and `i_0(f^q)`).
pub(crate) fn resit_truncation(q: u64) -> usize {
    2 * q as usize + 2
}

/// `a_1, a_2` of the reduced form, after checking `i_0(f^q) = q`.
pub(crate) fn level_zero_coefficients<R: Ring>(f: &ParabolicGerm<R>) -> Result<(R::Elem, R::Elem)> {
    let q = f.q();
    let need = resit_truncation(q);
    if f.trunc().is_some_and(|n| n < need) {
        return Err(Error::TruncationTooSmall {
            needed: need,
            available: f.trunc().unwrap(),
        });
    }
    let nf = to_normal_form(f, need)?;
    let a1 = nf.a(1);
    match f.ring().zero_test(&a1) {
        ZeroTest::NonZero => {}
        ZeroTest::Unknown => return Err(Error::IndeterminateValuation),
        ZeroTest::Zero => {
            // i_0(f^q) = q exactly when a_1 != 0.
            let short = ParabolicGerm::new(f.series().truncate(need))?;
            let i0 = ramification_profile(&short, 0)
                .map(|prof| prof.i(0).to_string())
                .unwrap_or_else(|_| format!(">={}", need - 1));
            return Err(Error::NotMinimallyRamifiedAtLevelZero { i0, q });
        }
    }
    Ok((a1, nf.a(2)))
}

/// The iterative residue: `(q + 1)/2 - a_2/a_1^2` in reduced form
/// (`1 - a_2/a_1^2` when `q = 1`).
pub fn resit<R: Ring>(f: &ParabolicGerm<R>) -> Result<R::Elem> {
    let (a1, a2) = level_zero_coefficients(f)?;
    resit_from_coefficients(f.ring(), f.q(), &a1, &a2)
}

pub(crate) fn resit_from_coefficients<R: Ring>(
    ring: &R,
    q: u64,
    a1: &R::Elem,
    a2: &R::Elem,
) -> Result<R::Elem> {
    let head = ring.half_int(q as i64 + 1)?;
    let ratio = ring.div(a2, &ring.mul(a1, a1))?;
    Ok(ring.sub(&head, &ratio))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalityMode {
    Definitional { n_max: u32 },
    Criterion,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MinimalityWitness<E> {
    /// `i_n(f^q)` attains the least value for every `n <= n_max`.
    AllLevelsMinimal {
        n_max: u32,
    },
    LevelNotMinimal {
        n: u32,
        i: LowerRamification,
        least: u64,
    },
    LevelZeroNotMinimal {
        i0: String,
    },
    ResitZero,
    /// Excluded in characteristic 2.
    ResitOne,
    ResitNonDegenerate {
        resit: E,
    },
    Undecided {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimalityVerdict<E> {
    pub verdict: TriState,
    pub witness: MinimalityWitness<E>,
}

/// Minimal truncation for the definitional check up to `n_max`.
pub fn definitional_truncation(p: u64, q: u64, n_max: u32) -> usize {
    (least_ramification(p, q, n_max) + q + 1) as usize
}

pub fn is_minimally_ramified<R: Ring>(
    f: &ParabolicGerm<R>,
    mode: MinimalityMode,
) -> Result<MinimalityVerdict<R::Elem>> {
    let (p, q) = (f.p(), f.q());
    match mode {
        MinimalityMode::Definitional { n_max } => {
            let need = definitional_truncation(p, q, n_max);
            if let Some(n) = f.trunc().filter(|&n| n < need) {
                return Err(Error::TruncationTooSmall {
                    needed: need,
                    available: n,
                });
            }
            let g = ParabolicGerm::new(f.series().truncate(need))?;
            let profile = match ramification_profile(&g, n_max) {
                Ok(profile) => profile,
                // f^q - z vanishes mod z^need, so i_0 >= need - 1 > q.
                Err(Error::TruncationTooSmall { .. }) => {
                    return Ok(MinimalityVerdict {
                        verdict: TriState::No,
                        witness: MinimalityWitness::LevelNotMinimal {
                            n: 0,
                            i: LowerRamification::BeyondTruncation {
                                at_least: need as u64 - 1,
                            },
                            least: least_ramification(p, q, 0),
                        },
                    })
                }
                Err(e) => return Err(e),
            };
            for entry in &profile.entries {
                let least = least_ramification(p, q, entry.n);
                if let LowerRamification::BeyondTruncation { at_least } = entry.i {
                    if at_least <= least {
                        return Ok(MinimalityVerdict {
                            verdict: TriState::Indeterminate,
                            witness: MinimalityWitness::Undecided {
                                reason: format!(
                                    "i_{} is not determined at this precision",
                                    entry.n
                                ),
                            },
                        });
                    }
                }
                if entry.i != LowerRamification::Finite(least) {
                    return Ok(MinimalityVerdict {
                        verdict: TriState::No,
                        witness: MinimalityWitness::LevelNotMinimal {
                            n: entry.n,
                            i: entry.i,
                            least,
                        },
                    });
                }
            }
            Ok(MinimalityVerdict {
                verdict: TriState::Yes,
                witness: MinimalityWitness::AllLevelsMinimal { n_max },
            })
        }
        MinimalityMode::Criterion => {
            let r = match resit(f) {
                Ok(r) => r,
                Err(Error::NotMinimallyRamifiedAtLevelZero { i0, .. }) => {
                    return Ok(MinimalityVerdict {
                        verdict: TriState::No,
                        witness: MinimalityWitness::LevelZeroNotMinimal { i0 },
                    })
                }
                Err(e) => return Err(e),
            };
            let ring = f.ring();
            let zero = ring.zero_test(&r).is_zero();
            let one = ring.zero_test(&ring.sub(&r, &ring.one())).is_zero();
            let (verdict, witness) = if zero == TriState::Yes {
                (TriState::No, MinimalityWitness::ResitZero)
            } else if p == 2 && one == TriState::Yes {
                (TriState::No, MinimalityWitness::ResitOne)
            } else if zero == TriState::Indeterminate || (p == 2 && one == TriState::Indeterminate)
            {
                (
                    TriState::Indeterminate,
                    MinimalityWitness::Undecided {
                        reason: "resit is not determined at this precision".into(),
                    },
                )
            } else {
                (
                    TriState::Yes,
                    MinimalityWitness::ResitNonDegenerate { resit: r },
                )
            };
            Ok(MinimalityVerdict { verdict, witness })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuasiInvarianceLine<E> {
    pub n: u32,
    pub i_f: LowerRamification,
    pub i_conj: LowerRamification,
    pub delta_f: Option<E>,
    pub delta_conj: Option<E>,
    /// `h'(0)^{i_n} delta_n(f^q)`.
    pub expected: Option<E>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuasiInvarianceReport<E> {
    pub scale: E,
    pub lines: Vec<QuasiInvarianceLine<E>>,
    pub holds: bool,
}

/// Compares the profiles of `f` and `h^{-1} ∘ f ∘ h`.
pub fn check_quasi_invariance<R: Ring>(
    f: &ParabolicGerm<R>,
    h: &TruncatedSeries<R>,
    n_max: u32,
) -> Result<QuasiInvarianceReport<R::Elem>> {
    let ring = f.ring();
    let conj = f.conjugate_by(h)?;
    let pf = ramification_profile(f, n_max)?;
    let pc = ramification_profile(&conj, n_max)?;
    let scale = h.coeff(1);
    let mut lines = Vec::new();
    for (ef, ec) in pf.entries.iter().zip(&pc.entries) {
        let expected = match (ef.i, &ef.delta) {
            (LowerRamification::Finite(i), Some(d)) => Some(ring.mul(&ring.pow(&scale, i), d)),
            _ => None,
        };
        let holds = match (ef.i, ec.i) {
            (LowerRamification::Finite(_), _) | (_, LowerRamification::Finite(_)) => {
                ef.i == ec.i && expected == ec.delta
            }
            // Nothing to compare beyond the truncation.
            _ => true,
        };
        lines.push(QuasiInvarianceLine {
            n: ef.n,
            i_f: ef.i,
            i_conj: ec.i,
            delta_f: ef.delta.clone(),
            delta_conj: ec.delta.clone(),
            expected,
            holds,
        });
    }
    let holds = lines.iter().all(|l| l.holds);
    Ok(QuasiInvarianceReport {
        scale,
        lines,
        holds,
    })
}
