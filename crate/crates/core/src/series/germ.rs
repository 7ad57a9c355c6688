use super::{Order, TruncatedSeries};
use crate::error::{Error, Result};
use crate::rings::Ring;

/// A series `f` with `f(0) = 0` whose multiplier `f'(0)` is a root of unity.
#[derive(Clone, Debug, PartialEq)]
pub struct ParabolicGerm<R: Ring> {
    series: TruncatedSeries<R>,
    gamma: R::Elem,
    q: u64,
}

impl<R: Ring> ParabolicGerm<R> {
    pub fn new(series: TruncatedSeries<R>) -> Result<Self> {
        let ring = series.ring().clone();
        match series.try_coeff(0) {
            Some(c) if ring.is_zero(&c) => {}
            Some(_) => return Err(Error::NotParabolic("f(0) is not zero".into())),
            None => {
                return Err(Error::TruncationTooSmall {
                    needed: 2,
                    available: 0,
                })
            }
        }
        let gamma = series.try_coeff(1).ok_or(Error::TruncationTooSmall {
            needed: 2,
            available: series.trunc().unwrap_or(0),
        })?;
        let q = ring.multiplicative_order(&gamma).ok_or_else(|| {
            Error::NotParabolic(format!(
                "f'(0) = {} is not a root of unity",
                ring.format(&gamma)
            ))
        })?;
        if q % ring.characteristic() == 0 {
            return Err(Error::POrderRequested {
                q,
                p: ring.characteristic(),
            });
        }
        Ok(ParabolicGerm { series, gamma, q })
    }

    /// `gamma * z * (1 + sum_i c[i-1] z^i)`.
    pub fn from_multiplier_coeffs(
        ring: R,
        gamma: R::Elem,
        c: &[R::Elem],
        n: Option<usize>,
    ) -> Result<Self> {
        let mut coeffs = vec![ring.zero(), gamma.clone()];
        coeffs.extend(c.iter().map(|ci| ring.mul(&gamma, ci)));
        Self::new(TruncatedSeries::from_parts(ring, coeffs, n))
    }

    pub fn series(&self) -> &TruncatedSeries<R> {
        &self.series
    }

    pub fn gamma(&self) -> &R::Elem {
        &self.gamma
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.series.ring().characteristic()
    }

    pub fn ring(&self) -> &R {
        self.series.ring()
    }

    pub fn trunc(&self) -> Option<usize> {
        self.series.trunc()
    }

    /// `f^q`, a germ tangent to the identity.
    pub fn qth_iterate(&self) -> Result<TruncatedSeries<R>> {
        self.series.iterate(self.q)
    }

    /// `c_i / gamma`, the coefficients of `f = gamma z (1 + sum c_i z^i)`.
    pub fn multiplier_coeff(&self, i: usize) -> Result<R::Elem> {
        let c = self
            .series
            .try_coeff(i + 1)
            .ok_or(Error::TruncationTooSmall {
                needed: i + 2,
                available: self.series.trunc().unwrap_or(0),
            })?;
        self.ring().div(&c, &self.gamma)
    }

    /// `h^{-1} ∘ f ∘ h`.
    pub fn conjugate_by(&self, h: &TruncatedSeries<R>) -> Result<Self> {
        if !matches!(h.ord(), Order::Finite(1)) {
            return Err(Error::NonUnitLinearTerm);
        }
        let h = match self.trunc() {
            Some(n) => h.truncate(n),
            None => h.clone(),
        };
        let h_inv = h.inverse()?;
        Self::new(h_inv.compose(&self.series.compose(&h)?)?)
    }
}
