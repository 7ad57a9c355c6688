use thiserror::Error;

/// Errors raised by the arithmetic and dynamics routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    CompositeP(u64),

    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u64 },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("extension degree {0} is outside the supported range 1..=8")]
    UnsupportedDegree(usize),

    #[error("field F_{p}^{d} is too large for this implementation")]
    FieldTooLarge { p: u64, d: usize },

    #[error("no element of order {q}: {q} does not divide the group order {group_order}")]
    NoSuchRoot { q: u64, group_order: u64 },

    #[error("a root of unity of order {q} cannot exist in characteristic {p}")]
    POrderRequested { q: u64, p: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("valuation cannot be determined at the available precision")]
    IndeterminateValuation,

    #[error("operands live over different scalar rings")]
    ScalarRingMismatch,

    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("linear coefficient is not a unit")]
    NonUnitLinearTerm,

    #[error("exact division failed at degree {degree}")]
    NotDivisible { degree: usize },

    #[error("coefficient of degree {degree} is not integral")]
    NonIntegralCoefficient { degree: usize },

    #[error("truncation too small: need {needed} coefficients, have {available}")]
    TruncationTooSmall { needed: usize, available: usize },

    #[error("exact polynomial of degree {degree} has no finite result here; truncate it first")]
    UnboundedResult { degree: usize },

    #[error("not a parabolic germ: {0}")]
    NotParabolic(String),

    #[error("i_0(f^q) = {i0} exceeds q = {q}; the iterative residue is undefined")]
    NotMinimallyRamifiedAtLevelZero { i0: String, q: u64 },

    #[error("the iterative residue is undefined for this germ")]
    ResitUndefined,

    #[error("the lower bound degenerates to zero: no information")]
    UnboundedBound,

    #[error("coefficient of degree {exponent} lies off the support 1 mod {q}")]
    SupportViolation { exponent: usize, q: u64 },

    #[error("polynomial degree {degree} exceeds the limit {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },

    #[error("expected an exact polynomial, got a truncated series")]
    NotAPolynomial,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
