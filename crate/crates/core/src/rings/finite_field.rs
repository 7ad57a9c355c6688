//! Finite fields `F_p[x]/(m(x))` with a monic irreducible modulus of degree `d <= 8`.

use super::{Ring, ZeroTest};
use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 8;

/// Fields larger than this are rejected; element orders are found by trial
/// factoring `p^d - 1`.
const MAX_FIELD_BITS: u32 = 40;

/// Above this size `root_of_unity` stops enumerating elements in order.
const ENUMERATION_LIMIT: u64 = 1 << 20;

/// The field `F_{p^d}`. Copyable context object; elements are [`FieldElement`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    d: usize,
    // Low-to-high coefficients of the monic modulus; unused for d = 1.
    modulus: [u64; MAX_DEGREE + 1],
}

/// Coordinates with respect to `1, w, ..., w^{d-1}` where `w` is the class of `x`.
/// Coordinates at index `>= d` are always zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coords: [u32; MAX_DEGREE],
}

impl FieldElement {
    pub fn coords(&self) -> &[u32; MAX_DEGREE] {
        &self.coords
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            while n.is_multiple_of(k) {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, low to high, used only for modulus validation.
mod fp_poly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let k = r.len() - 1;
            let c = r[k] * lead_inv % p;
            for (i, &mi) in m.iter().enumerate() {
                let idx = k - dm + i;
                r[idx] = (r[idx] + p - c * mi % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, m, p)
    }

    pub fn pow_mod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut base = rem(a, m, p);
        let mut acc = vec![1u64];
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// Rabin's test: `m` of degree `d` is irreducible iff `x^{p^d} = x mod m`
    /// and `gcd(x^{p^{d/r}} - x, m) = 1` for every prime `r | d`.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let d = m.len() - 1;
        if d <= 1 {
            return d == 1;
        }
        let x = vec![0u64, 1];
        let mut frob = vec![x.clone()];
        for _ in 0..d {
            let next = pow_mod(frob.last().unwrap(), p, m, p);
            frob.push(next);
        }
        let xr = rem(&x, m, p);
        if frob[d] != xr {
            return false;
        }
        for r in super::prime_factors(d as u64) {
            let mut diff = frob[d / r as usize].clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            if gcd(m, &diff, p).len() != 1 {
                return false;
            }
        }
        true
    }
}

impl FiniteField {
    /// `F_p` itself.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// `F_{p^d}`. Without a modulus, the lexicographically first monic
    /// irreducible polynomial of degree `d` is used.
    pub fn new(p: u64, d: usize, modulus: Option<&[i64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::CompositeP(p));
        }
        if d == 0 || d > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(d));
        }
        let too_large = Error::FieldTooLarge { p, d };
        if p >= 1 << 31 {
            return Err(too_large);
        }
        match p.checked_pow(d as u32) {
            Some(size) if size < 1u64 << MAX_FIELD_BITS => {}
            _ => return Err(too_large),
        }

        let mut field = FiniteField {
            p,
            d,
            modulus: [0; MAX_DEGREE + 1],
        };
        match modulus {
            Some(m) => {
                if m.len() != d + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients for degree {d}, got {}",
                        d + 1,
                        m.len()
                    )));
                }
                let reduced: Vec<u64> = m.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
                if reduced[d] != 1 {
                    return Err(Error::InvalidModulus("modulus is not monic".into()));
                }
                if !fp_poly::is_irreducible(&reduced, p) {
                    return Err(Error::ReducibleModulus { p });
                }
                field.modulus[..=d].copy_from_slice(&reduced);
            }
            None if d > 1 => {
                let found = Self::first_irreducible(p, d);
                field.modulus[..=d].copy_from_slice(&found);
            }
            None => {
                field.modulus[1] = 1;
            }
        }
        Ok(field)
    }

    fn first_irreducible(p: u64, d: usize) -> Vec<u64> {
        let mut candidate = vec![0u64; d + 1];
        candidate[d] = 1;
        loop {
            if fp_poly::is_irreducible(&candidate, p) {
                return candidate;
            }
            // Base-p counter over the non-leading coefficients.
            let mut i = 0;
            loop {
                candidate[i] += 1;
                if candidate[i] < p {
                    break;
                }
                candidate[i] = 0;
                i += 1;
                assert!(i < d, "an irreducible polynomial of every degree exists");
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.d as u32)
    }

    /// Monic modulus, low to high. `None` for a prime field.
    pub fn modulus(&self) -> Option<Vec<u64>> {
        (self.d > 1).then(|| self.modulus[..=self.d].to_vec())
    }

    pub fn element(&self, coords: &[i64]) -> FieldElement {
        assert!(
            coords.len() <= self.d,
            "too many coordinates for F_{}^{}",
            self.p,
            self.d
        );
        let mut e = FieldElement::default();
        for (slot, &c) in e.coords.iter_mut().zip(coords) {
            *slot = c.rem_euclid(self.p as i64) as u32;
        }
        e
    }

    /// The element whose base-`p` digits (low first) are `index`.
    pub fn element_from_index(&self, mut index: u64) -> FieldElement {
        let mut e = FieldElement::default();
        for slot in e.coords.iter_mut().take(self.d) {
            *slot = (index % self.p) as u32;
            index /= self.p;
        }
        e
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size()).map(move |k| self.element_from_index(k))
    }

    /// The class of `x`, i.e. `w`; equals the scalar 0 + 1*w only when `d > 1`.
    pub fn generator_w(&self) -> Option<FieldElement> {
        (self.d > 1).then(|| {
            let mut e = FieldElement::default();
            e.coords[1] = 1;
            e
        })
    }

    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        Ring::pow(self, a, self.p)
    }

    /// An element of exact multiplicative order `q`.
    ///
    /// Small fields return the first such element in index order, so the
    /// choice is reproducible; large ones use a power of a primitive element.
    pub fn root_of_unity(&self, q: u64) -> Result<FieldElement> {
        if q == 0 || q.is_multiple_of(self.p) {
            return Err(Error::POrderRequested { q, p: self.p });
        }
        let group_order = self.size() - 1;
        if !group_order.is_multiple_of(q) {
            return Err(Error::NoSuchRoot { q, group_order });
        }
        let factors = prime_factors(group_order);
        if self.size() <= ENUMERATION_LIMIT {
            let found = (1..self.size())
                .map(|k| self.element_from_index(k))
                .find(|e| self.order_with(e, group_order, &factors) == Some(q));
            return Ok(found.expect("cyclic group has elements of every order dividing its size"));
        }
        let primitive = (1..self.size())
            .map(|k| self.element_from_index(k))
            .find(|e| self.order_with(e, group_order, &factors) == Some(group_order))
            .expect("multiplicative group is cyclic");
        Ok(Ring::pow(self, &primitive, group_order / q))
    }

    fn order_with(&self, a: &FieldElement, group_order: u64, factors: &[u64]) -> Option<u64> {
        if *a == FieldElement::default() {
            return None;
        }
        let mut order = group_order;
        for &r in factors {
            while order.is_multiple_of(r) && Ring::pow(self, a, order / r) == self.one() {
                order /= r;
            }
        }
        Some(order)
    }

    fn reduce_wide(&self, wide: &[u128]) -> FieldElement {
        let p = self.p;
        let d = self.d;
        let mut prod = [0u64; 2 * MAX_DEGREE - 1];
        for (slot, &w) in prod.iter_mut().zip(wide) {
            *slot = (w % p as u128) as u64;
        }
        let top = wide.len().min(2 * d - 1);
        for k in (d..top).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..d {
                let idx = k - d + i;
                prod[idx] = (prod[idx] + p - c * self.modulus[i] % p) % p;
            }
        }
        let mut e = FieldElement::default();
        for (c, &x) in e.coords.iter_mut().zip(&prod[..d]) {
            *c = x as u32;
        }
        e
    }
}

impl Ring for FiniteField {
    type Elem = FieldElement;

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> FieldElement {
        FieldElement::default()
    }

    fn one(&self) -> FieldElement {
        let mut e = FieldElement::default();
        e.coords[0] = 1;
        e
    }

    fn from_int(&self, n: i64) -> FieldElement {
        let mut e = FieldElement::default();
        e.coords[0] = n.rem_euclid(self.p as i64) as u32;
        e
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        let mut e = FieldElement::default();
        for i in 0..self.d {
            e.coords[i] = ((a.coords[i] as u64 + b.coords[i] as u64) % p) as u32;
        }
        e
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        let mut e = FieldElement::default();
        for i in 0..self.d {
            e.coords[i] = ((a.coords[i] as u64 + p - b.coords[i] as u64) % p) as u32;
        }
        e
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.p;
        let mut e = FieldElement::default();
        for i in 0..self.d {
            e.coords[i] = ((p - a.coords[i] as u64) % p) as u32;
        }
        e
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        if self.d == 1 {
            let mut e = FieldElement::default();
            e.coords[0] = (a.coords[0] as u64 * b.coords[0] as u64 % self.p) as u32;
            return e;
        }
        let d = self.d;
        let mut wide = [0u128; 2 * MAX_DEGREE - 1];
        for i in 0..d {
            if a.coords[i] == 0 {
                continue;
            }
            for j in 0..d {
                wide[i + j] += a.coords[i] as u128 * b.coords[j] as u128;
            }
        }
        self.reduce_wide(&wide[..2 * d - 1])
    }

    fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if *a == FieldElement::default() {
            return Err(Error::DivisionByZero);
        }
        Ok(Ring::pow(self, a, self.size() - 2))
    }

    fn zero_test(&self, a: &FieldElement) -> ZeroTest {
        if *a == FieldElement::default() {
            ZeroTest::Zero
        } else {
            ZeroTest::NonZero
        }
    }

    fn multiplicative_order(&self, a: &FieldElement) -> Option<u64> {
        let group_order = self.size() - 1;
        self.order_with(a, group_order, &prime_factors(group_order))
    }

    fn generator(&self, name: &str) -> Option<FieldElement> {
        match name {
            "w" => self.generator_w(),
            _ => None,
        }
    }

    fn dot(&self, a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
        debug_assert_eq!(a.len(), b.len());
        if self.d == 1 {
            let acc: u128 = a
                .iter()
                .zip(b)
                .map(|(x, y)| x.coords[0] as u128 * y.coords[0] as u128)
                .sum();
            let mut e = FieldElement::default();
            e.coords[0] = (acc % self.p as u128) as u32;
            return e;
        }
        let d = self.d;
        let mut wide = [0u128; 2 * MAX_DEGREE - 1];
        for (x, y) in a.iter().zip(b) {
            for i in 0..d {
                if x.coords[i] == 0 {
                    continue;
                }
                for j in 0..d {
                    wide[i + j] += x.coords[i] as u128 * y.coords[j] as u128;
                }
            }
        }
        self.reduce_wide(&wide[..2 * d - 1])
    }

    fn format(&self, a: &FieldElement) -> String {
        let mut terms = Vec::new();
        for i in (0..self.d).rev() {
            let c = a.coords[i];
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "w".to_string(),
                (1, c) => format!("{c}*w"),
                (i, 1) => format!("w^{i}"),
                (i, c) => format!("{c}*w^{i}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }

    fn is_compound(&self, a: &FieldElement) -> bool {
        a.coords.iter().filter(|&&c| c != 0).count() > 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force factor search: a monic `m` of degree `d` is irreducible iff
    /// no monic polynomial of degree `1..=d/2` divides it.
    fn irreducible_by_search(m: &[u64], p: u64) -> bool {
        let d = m.len() - 1;
        for k in 1..=d / 2 {
            for idx in 0..p.pow(k as u32) {
                let mut f = vec![0u64; k + 1];
                let mut rest = idx;
                for c in f.iter_mut().take(k) {
                    *c = rest % p;
                    rest /= p;
                }
                f[k] = 1;
                if fp_poly::rem(m, &f, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn prime_fields() {
        let f2 = FiniteField::prime(2).unwrap();
        assert_eq!(f2.size(), 2);
        let f3 = FiniteField::new(3, 1, None).unwrap();
        assert_eq!(f3.size(), 3);
        assert_eq!(f3.add(&f3.from_int(2), &f3.from_int(2)), f3.from_int(1));
        assert!(f3.modulus().is_none());
    }

    #[test]
    fn gf9_with_x2_plus_1() {
        // x^2 + 1 has no root in F_3 (0, 1, 4 = 1 are the squares), so it is irreducible.
        let f9 = FiniteField::new(3, 2, Some(&[1, 0, 1])).unwrap();
        let w = f9.generator_w().unwrap();
        assert_eq!(f9.mul(&w, &w), f9.from_int(-1));
        assert_eq!(f9.size(), 9);
    }

    #[test]
    fn rejects_composite_and_reducible() {
        assert_eq!(FiniteField::prime(9), Err(Error::CompositeP(9)));
        assert_eq!(FiniteField::prime(1), Err(Error::CompositeP(1)));
        // x^2 + 2 = (x + 1)(x + 2) over F_3.
        assert_eq!(
            FiniteField::new(3, 2, Some(&[2, 0, 1])),
            Err(Error::ReducibleModulus { p: 3 })
        );
        assert!(matches!(
            FiniteField::new(3, 2, Some(&[1, 0, 2])),
            Err(Error::InvalidModulus(_))
        ));
        assert_eq!(
            FiniteField::new(2, 9, None),
            Err(Error::UnsupportedDegree(9))
        );
    }

    #[test]
    fn rabin_matches_factor_search() {
        for (p, d) in [
            (2u64, 2usize),
            (2, 3),
            (2, 4),
            (3, 2),
            (3, 3),
            (5, 2),
            (2, 6),
        ] {
            for idx in 0..p.pow(d as u32) {
                let mut m = vec![0u64; d + 1];
                let mut rest = idx;
                for c in m.iter_mut().take(d) {
                    *c = rest % p;
                    rest /= p;
                }
                m[d] = 1;
                assert_eq!(
                    fp_poly::is_irreducible(&m, p),
                    irreducible_by_search(&m, p),
                    "p={p} m={m:?}"
                );
            }
        }
    }

    #[test]
    fn default_moduli_are_irreducible() {
        for (p, d) in [(2u64, 2usize), (2, 8), (3, 4), (5, 3), (7, 2)] {
            let f = FiniteField::new(p, d, None).unwrap();
            assert!(irreducible_by_search(&f.modulus().unwrap(), p));
        }
        // x^2 + x + 1 is the only irreducible quadratic over F_2.
        assert_eq!(
            FiniteField::new(2, 2, None).unwrap().modulus(),
            Some(vec![1, 1, 1])
        );
    }

    fn brute_order(f: &FiniteField, a: &FieldElement) -> u64 {
        let mut x = *a;
        let mut k = 1;
        while x != f.one() {
            x = f.mul(&x, a);
            k += 1;
        }
        k
    }

    #[test]
    fn roots_of_unity_examples() {
        let f2 = FiniteField::prime(2).unwrap();
        assert_eq!(f2.root_of_unity(1).unwrap(), f2.one());
        let f3 = FiniteField::prime(3).unwrap();
        assert_eq!(f3.root_of_unity(2).unwrap(), f3.from_int(2));
        let f9 = FiniteField::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f9.root_of_unity(4).unwrap(), f9.generator_w().unwrap());
    }

    #[test]
    fn root_of_unity_errors() {
        let f3 = FiniteField::prime(3).unwrap();
        assert_eq!(
            f3.root_of_unity(3),
            Err(Error::POrderRequested { q: 3, p: 3 })
        );
        assert_eq!(
            f3.root_of_unity(4),
            Err(Error::NoSuchRoot {
                q: 4,
                group_order: 2
            })
        );
    }

    #[test]
    fn root_of_unity_has_exact_order() {
        for (p, d) in [(2u64, 4usize), (3, 2), (5, 1), (7, 2), (2, 6)] {
            let f = FiniteField::new(p, d, None).unwrap();
            let n = f.size() - 1;
            for q in (1..=n).filter(|q| n.is_multiple_of(*q)) {
                let g = f.root_of_unity(q).unwrap();
                assert_eq!(f.pow(&g, q), f.one());
                for m in 1..q {
                    assert_ne!(f.pow(&g, m), f.one());
                }
                assert_eq!(f.multiplicative_order(&g), Some(q));
            }
        }
    }

    #[test]
    fn large_prime_root_of_unity() {
        let f = FiniteField::prime(2_147_483_647).unwrap();
        let g = f.root_of_unity(2).unwrap();
        assert_eq!(g, f.from_int(-1));
    }

    #[test]
    fn orders_divide_group_order_and_match_brute_force() {
        for (p, d) in [(2u64, 3usize), (3, 2), (5, 2)] {
            let f = FiniteField::new(p, d, None).unwrap();
            for a in f.elements().skip(1) {
                let ord = f.multiplicative_order(&a).unwrap();
                assert_eq!((f.size() - 1) % ord, 0);
                assert_eq!(ord, brute_order(&f, &a));
            }
        }
    }

    #[test]
    fn frobenius_is_additive_exhaustively() {
        for (p, d) in [
            (2u64, 1usize),
            (2, 2),
            (2, 3),
            (3, 1),
            (3, 2),
            (3, 4),
            (5, 2),
            (7, 2),
        ] {
            let f = FiniteField::new(p, d, None).unwrap();
            assert!(f.size() <= 81);
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(
                        f.frobenius(&f.add(&a, &b)),
                        f.add(&f.frobenius(&a), &f.frobenius(&b))
                    );
                }
            }
        }
    }

    #[test]
    fn field_axioms_on_gf16() {
        let f = FiniteField::new(2, 4, None).unwrap();
        for a in f.elements() {
            if a != f.zero() {
                assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
            }
            for b in f.elements() {
                assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                let c = f.element_from_index(7);
                assert_eq!(
                    f.mul(&a, &f.add(&b, &c)),
                    f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                );
            }
        }
        assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn dot_matches_naive_sum() {
        for (p, d) in [(5u64, 1usize), (3, 3), (2_147_483_647, 1)] {
            let f = FiniteField::new(p, d, None).unwrap();
            let a: Vec<_> = (0..20)
                .map(|k| f.element_from_index(k * 7919 % f.size()))
                .collect();
            let b: Vec<_> = (0..20)
                .map(|k| f.element_from_index(k * 104_729 % f.size()))
                .collect();
            let naive = a
                .iter()
                .zip(&b)
                .fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)));
            assert_eq!(f.dot(&a, &b), naive);
        }
    }

    #[test]
    fn formatting() {
        let f9 = FiniteField::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f9.format(&f9.element(&[1, 2])), "2*w + 1");
        assert_eq!(f9.format(&f9.zero()), "0");
        assert!(f9.is_compound(&f9.element(&[1, 2])));
        assert!(!f9.is_compound(&f9.element(&[0, 2])));
    }
}
