//! Scalar rings: finite fields `F_{p^d}` and truncated Laurent series over them.
//!
//! Everything above this layer is generic over [`Ring`]. A ring value is a
//! context object (the field, or the Laurent field with its working precision)
//! and elements are plain data manipulated through it.

mod finite_field;
mod laurent;

use std::fmt;

pub use finite_field::{FieldElement, FiniteField, MAX_DEGREE};
pub use laurent::{LaurentField, LaurentScalar, DEFAULT_TPREC};

use crate::error::Result;

/// Three-valued answer for questions that truncated data cannot always settle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriState {
    Yes,
    No,
    Indeterminate,
}

impl TriState {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TriState::Yes
        } else {
            TriState::No
        }
    }

    pub fn is_yes(self) -> bool {
        self == TriState::Yes
    }

    pub fn and(self, other: TriState) -> TriState {
        match (self, other) {
            (TriState::No, _) | (_, TriState::No) => TriState::No,
            (TriState::Yes, TriState::Yes) => TriState::Yes,
            _ => TriState::Indeterminate,
        }
    }
}

impl std::ops::Not for TriState {
    type Output = TriState;

    fn not(self) -> TriState {
        match self {
            TriState::Yes => TriState::No,
            TriState::No => TriState::Yes,
            TriState::Indeterminate => TriState::Indeterminate,
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriState::Yes => "yes",
            TriState::No => "no",
            TriState::Indeterminate => "indeterminate",
        })
    }
}

/// Outcome of testing an element against zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroTest {
    Zero,
    NonZero,
    /// Every known digit vanishes but the element is not certified zero.
    Unknown,
}

impl ZeroTest {
    pub fn is_zero(self) -> TriState {
        match self {
            ZeroTest::Zero => TriState::Yes,
            ZeroTest::NonZero => TriState::No,
            ZeroTest::Unknown => TriState::Indeterminate,
        }
    }
}

/// A commutative scalar ring of positive characteristic.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_int(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse. Fails on zero and on elements whose leading
    /// digit is not known.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn zero_test(&self, a: &Self::Elem) -> ZeroTest;

    /// Whether the element has nonnegative valuation. `None` when precision
    /// does not allow a decision. Finite fields are trivially valued.
    fn is_integral(&self, _a: &Self::Elem) -> Option<bool> {
        Some(true)
    }

    /// Order of `a` in the multiplicative group, when `a` is a root of unity
    /// that can be certified as such.
    fn multiplicative_order(&self, a: &Self::Elem) -> Option<u64>;

    /// Named generators accepted by the literal grammar (`w`, `t`).
    fn generator(&self, _name: &str) -> Option<Self::Elem> {
        None
    }

    /// `O(t^k)` for rings carrying a precision, `None` elsewhere.
    fn big_o(&self, _exponent: i64) -> Option<Self::Elem> {
        None
    }

    /// `sum_i a[i] * b[i]`; slices have equal length.
    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        debug_assert_eq!(a.len(), b.len());
        let mut acc = self.zero();
        for (x, y) in a.iter().zip(b) {
            acc = self.add(&acc, &self.mul(x, y));
        }
        acc
    }

    /// Literal rendering; parseable by the CLI grammar.
    fn format(&self, a: &Self::Elem) -> String;

    /// True when the rendering of `a` is a sum and needs parentheses as a factor.
    fn is_compound(&self, a: &Self::Elem) -> bool;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.zero_test(a) == ZeroTest::Zero
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `k / 2` as a ring element. For even `k` this is an integer and exists in
    /// every characteristic; odd `k` needs 2 to be invertible.
    fn half_int(&self, k: i64) -> Result<Self::Elem> {
        if k % 2 == 0 {
            Ok(self.from_int(k / 2))
        } else {
            self.div(&self.from_int(k), &self.from_int(2))
        }
    }
}
