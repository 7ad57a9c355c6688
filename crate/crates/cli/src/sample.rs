//! Seeded random inputs for the sweeps.

use parabolic_core::ramification::{
    definitional_truncation, ramification_profile, LowerRamification,
};
use parabolic_core::rings::{FieldElement, FiniteField, LaurentField, Ring};
use parabolic_core::series::{ParabolicGerm, TruncatedSeries};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(p, q)` pairs covered by the standard sweeps.
pub const PQ_PAIRS: [(u64, u64); 6] = [(2, 1), (3, 1), (3, 2), (5, 1), (5, 2), (5, 4)];

/// Independent stream `stream` of the generator seeded by `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn element(f: &FiniteField, rng: &mut ChaCha8Rng) -> FieldElement {
    f.element_from_index(rng.gen_range(0..f.size()))
}

pub fn nonzero_element(f: &FiniteField, rng: &mut ChaCha8Rng) -> FieldElement {
    f.element_from_index(rng.gen_range(1..f.size()))
}

pub fn elements(f: &FiniteField, count: usize, rng: &mut ChaCha8Rng) -> Vec<FieldElement> {
    (0..count).map(|_| element(f, rng)).collect()
}

/// `gamma z + c_2 z^2 + ... mod z^n` with `gamma` the field's chosen root of order `q`.
pub fn germ(f: &FiniteField, q: u64, n: usize, rng: &mut ChaCha8Rng) -> ParabolicGerm<FiniteField> {
    let gamma = f.root_of_unity(q).expect("q divides the group order");
    let mut coeffs = vec![f.zero(), gamma];
    coeffs.extend(elements(f, n.saturating_sub(2), rng));
    ParabolicGerm::new(TruncatedSeries::new(*f, coeffs, n)).expect("parabolic by construction")
}

/// `z + c_2 z^2 + ... mod z^n` scaled by a random unit `h'(0)`.
pub fn tangent_change(
    f: &FiniteField,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> TruncatedSeries<FiniteField> {
    let mut coeffs = vec![f.zero(), nonzero_element(f, rng)];
    coeffs.extend(elements(f, n.saturating_sub(2), rng));
    TruncatedSeries::new(*f, coeffs, n)
}

/// An exact polynomial germ over `F_p((t))` of `z`-degree `degree` with
/// coefficients in `F_p[t]` of `t`-degree below `t_len` and a constant top coefficient.
pub fn laurent_polynomial_germ(
    k: &LaurentField,
    q: u64,
    degree: usize,
    t_len: usize,
    rng: &mut ChaCha8Rng,
) -> ParabolicGerm<LaurentField> {
    let base = *k.base();
    let gamma = base.root_of_unity(q).expect("q divides the group order");
    let mut coeffs = vec![k.zero(), k.constant(gamma)];
    for _ in 2..degree {
        coeffs.push(k.from_coeffs(0, elements(&base, t_len, rng), None));
    }
    if degree >= 2 {
        coeffs.push(k.constant(nonzero_element(&base, rng)));
    }
    ParabolicGerm::new(TruncatedSeries::polynomial(*k, coeffs)).expect("parabolic by construction")
}

/// Truncation leaving room for `i_{n_max}` a little past its least value.
pub fn quasi_truncation(p: u64, q: u64, n_max: u32) -> usize {
    definitional_truncation(p, q, n_max) + (q * p.pow(n_max)) as usize
}

/// Draws germs as in [`germ`] until `i_0, ..., i_{n_max}` are all determined
/// (finite or infinite); returns the germ and the number of rejected draws.
pub fn germ_with_exact_levels(
    f: &FiniteField,
    q: u64,
    n: usize,
    n_max: u32,
    rng: &mut ChaCha8Rng,
) -> (ParabolicGerm<FiniteField>, usize) {
    for rejected in 0.. {
        let g = germ(f, q, n, rng);
        let exact = ramification_profile(&g, n_max).is_ok_and(|prof| {
            prof.entries
                .iter()
                .all(|e| !matches!(e.i, LowerRamification::BeyondTruncation { .. }))
        });
        if exact {
            return (g, rejected);
        }
    }
    unreachable!()
}
