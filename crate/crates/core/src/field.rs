//! Exact arithmetic in GF(p^f), cubic irreducibility, and the coefficient
//! search for the companion-matrix construction in `matgrp`.
//!
//! Elements are encoded as integers in `0..q`: the base-p digits of the code
//! are the coefficients of the polynomial-basis representation, lowest degree
//! first. Code 0 is zero, code 1 is one.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("field size {0} exceeds the supported bound 2^16")]
    TooLarge(u64),
    #[error("cannot parse field spec {0:?}")]
    ParseSpec(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
}

/// Shape of a finite field: characteristic, extension degree, and the
/// defining modulus (coefficients low-to-high, monic of degree f).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub f: u32,
    pub modulus: Vec<u32>,
}

/// Arithmetic context for GF(p^f). Immutable after construction; all
/// operations take and return element codes in `0..q`.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    primitive: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of n, ascending, without multiplicity.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes q = p^f when q is a prime power (f >= 1), else None.
pub fn factor_prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let ps = prime_factors(q);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    if p > u32::MAX as u64 {
        return None;
    }
    let mut f = 0u32;
    let mut rest = q;
    while rest > 1 {
        rest /= p;
        f += 1;
    }
    if p.pow(f) == q {
        Some((p as u32, f))
    } else {
        None
    }
}

/// Accepts "p^f" or a bare prime power like "8".
pub fn parse_prime_power(s: &str) -> Result<(u32, u32), FieldError> {
    let t = s.trim();
    if let Some((a, b)) = t.split_once('^') {
        let p: u32 = a.trim().parse().map_err(|_| FieldError::ParseSpec(s.into()))?;
        let f: u32 = b.trim().parse().map_err(|_| FieldError::ParseSpec(s.into()))?;
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if f == 0 {
            return Err(FieldError::ParseSpec(s.into()));
        }
        Ok((p, f))
    } else {
        let q: u64 = t.parse().map_err(|_| FieldError::ParseSpec(s.into()))?;
        factor_prime_power(q).ok_or(FieldError::NotPrimePower(q))
    }
}

// polynomial helpers over F_p; coefficient vectors low-to-high, no trailing zeros

fn poly_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    debug_assert_eq!(m[dm], 1, "modulus must be monic");
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for k in 0..=dm {
                let idx = shift + k;
                let sub = (lead * m[k]) % p;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    out
}

/// Irreducibility over F_p by trial division: a degree-d polynomial is
/// irreducible iff no monic polynomial of degree 1..=d/2 divides it.
fn poly_is_irreducible(m: &[u32], p: u32) -> bool {
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    for deg in 1..=(d / 2) {
        // counter enumerates the non-leading coefficients
        let count = (p as u64).pow(deg as u32);
        for c in 0..count {
            let mut div = Vec::with_capacity(deg + 1);
            let mut acc = c;
            for _ in 0..deg {
                div.push((acc % p as u64) as u32);
                acc /= p as u64;
            }
            div.push(1);
            if poly_rem(m, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Field with the canonical modulus: the first monic irreducible
    /// degree-f polynomial in the enumeration ordering non-leading
    /// coefficient vectors as base-p counters, lowest digit = constant term.
    /// The choice is deterministic, so element codes are stable across runs.
    pub fn new(p: u32, f: u32) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if f == 0 {
            return Err(FieldError::BadModulus("extension degree must be >= 1".into()));
        }
        let q = (p as u64).checked_pow(f).ok_or(FieldError::TooLarge(u64::MAX))?;
        if q > 1 << 16 {
            return Err(FieldError::TooLarge(q));
        }
        let mut modulus = None;
        for c in 0..q {
            let mut m = Vec::with_capacity(f as usize + 1);
            let mut acc = c;
            for _ in 0..f {
                m.push((acc % p as u64) as u32);
                acc /= p as u64;
            }
            m.push(1);
            if poly_is_irreducible(&m, p) {
                modulus = Some(m);
                break;
            }
        }
        let modulus = modulus.expect("an irreducible polynomial of every degree exists");
        Self::build(FieldSpec { p, f, modulus })
    }

    /// Field with a caller-supplied modulus (coefficients low-to-high,
    /// length f+1, monic). Rejects reducible polynomials.
    pub fn with_modulus(p: u32, f: u32, modulus: Vec<u32>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if modulus.len() != f as usize + 1 {
            return Err(FieldError::BadModulus(format!(
                "expected {} coefficients, got {}",
                f + 1,
                modulus.len()
            )));
        }
        if modulus.last() != Some(&1) {
            return Err(FieldError::BadModulus("modulus must be monic".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus("coefficient out of range".into()));
        }
        if !poly_is_irreducible(&modulus, p) {
            return Err(FieldError::ReducibleModulus(p));
        }
        let q = (p as u64).pow(f);
        if q > 1 << 16 {
            return Err(FieldError::TooLarge(q));
        }
        Self::build(FieldSpec { p, f, modulus })
    }

    fn build(spec: FieldSpec) -> Result<Field, FieldError> {
        let q = (spec.p as u64).pow(spec.f) as u32;
        let mut fld = Field { spec, q, primitive: 0 };
        let factors = prime_factors(q as u64 - 1);
        let primitive = (1..fld.q)
            .find(|&e| {
                factors
                    .iter()
                    .all(|&r| fld.pow(e, (q as u64 - 1) / r) != 1)
            })
            .unwrap_or(1); // q = 2: the unit group is trivial
        fld.primitive = primitive;
        Ok(fld)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    /// A fixed generator of the multiplicative group (order q-1).
    pub fn primitive_element(&self) -> u32 {
        self.primitive
    }

    fn digits(&self, e: u32) -> Vec<u32> {
        let p = self.spec.p;
        let mut out = Vec::with_capacity(self.spec.f as usize);
        let mut acc = e;
        for _ in 0..self.spec.f {
            out.push(acc % p);
            acc /= p;
        }
        out
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        let p = self.spec.p;
        let mut acc = 0u32;
        for &d in digits.iter().rev() {
            acc = acc * p + d;
        }
        acc
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p;
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.spec.p;
        let d: Vec<u32> = self.digits(a).iter().map(|&x| (p - x) % p).collect();
        self.encode(&d)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let p = self.spec.p;
        let prod = poly_mul(&self.digits(a), &self.digits(b), p);
        let mut rem = poly_rem(&prod, &self.spec.modulus, p);
        rem.resize(self.spec.f as usize, 0);
        self.encode(&rem)
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        if a == 0 {
            return if k == 0 { 1 } else { 0 };
        }
        k %= self.q as u64 - 1;
        let mut base = a;
        let mut acc = 1u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u32) -> u32 {
        assert_ne!(a, 0, "zero has no inverse");
        self.pow(a, self.q as u64 - 2)
    }

    /// Multiplicative order of a nonzero element; divides q-1.
    pub fn element_order(&self, a: u32) -> u64 {
        assert_ne!(a, 0);
        let mut o = self.q as u64 - 1;
        for r in prime_factors(o) {
            while o % r == 0 && self.pow(a, o / r) == 1 {
                o /= r;
            }
        }
        o
    }
}

/// Monic cubic T^3 + a2*T^2 + a1*T + a0 with coefficients as element codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CubicPoly {
    pub a2: u32,
    pub a1: u32,
    pub a0: u32,
}

impl CubicPoly {
    pub fn eval(&self, fld: &Field, t: u32) -> u32 {
        // Horner: ((t + a2) t + a1) t + a0
        let mut acc = fld.add(t, self.a2);
        acc = fld.add(fld.mul(acc, t), self.a1);
        fld.add(fld.mul(acc, t), self.a0)
    }
}

/// A monic cubic over a field is reducible iff it has a root there, so
/// irreducibility is decided by exhaustive evaluation.
pub fn cubic_is_irreducible(poly: &CubicPoly, fld: &Field) -> bool {
    (0..fld.q()).all(|t| poly.eval(fld, t) != 0)
}

/// First coefficient a (in code order 0,1,2,...) with T^3 + aT + 1
/// irreducible over the field, if any. The search order is fixed so the
/// result is reproducible. For even q a hit always exists; for odd q an
/// empty result is a legitimate empirical outcome, not an error.
pub fn find_engel_coefficient(fld: &Field) -> Option<u32> {
    (0..fld.q()).find(|&a| {
        cubic_is_irreducible(&CubicPoly { a2: 0, a1: a, a0: 1 }, fld)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_two_addition() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.add(1, 1), 0);
    }

    #[test]
    fn canonical_moduli_are_stable() {
        assert_eq!(Field::new(2, 2).unwrap().spec().modulus, vec![1, 1, 1]);
        assert_eq!(Field::new(2, 3).unwrap().spec().modulus, vec![1, 1, 0, 1]);
        assert_eq!(Field::new(3, 2).unwrap().spec().modulus, vec![1, 0, 1]);
        assert_eq!(Field::new(2, 4).unwrap().spec().modulus, vec![1, 1, 0, 0, 1]);
    }

    #[test]
    fn primitive_element_orders() {
        let f4 = Field::new(2, 2).unwrap();
        let c = f4.primitive_element();
        assert_ne!(c, 1);
        assert_eq!(f4.element_order(c), 3);
        assert_eq!(f4.pow(c, 3), 1);
        let f8 = Field::new(2, 3).unwrap();
        assert_eq!(f8.element_order(f8.primitive_element()), 7);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, f) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4)] {
            let fld = Field::new(p, f).unwrap();
            let q = fld.q();
            for a in 0..q {
                assert_eq!(fld.add(a, fld.neg(a)), 0);
                if a != 0 {
                    assert_eq!(fld.mul(a, fld.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(fld.mul(a, b), fld.mul(b, a));
                    for c in 0..q {
                        assert_eq!(fld.mul(fld.mul(a, b), c), fld.mul(a, fld.mul(b, c)));
                        assert_eq!(
                            fld.mul(a, fld.add(b, c)),
                            fld.add(fld.mul(a, b), fld.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cubic_irreducibility_over_f2() {
        let f2 = Field::new(2, 1).unwrap();
        assert!(cubic_is_irreducible(&CubicPoly { a2: 0, a1: 1, a0: 1 }, &f2));
        assert!(!cubic_is_irreducible(&CubicPoly { a2: 0, a1: 0, a0: 1 }, &f2));
    }

    #[test]
    fn engel_coefficient_search_matches_fixed_values() {
        assert_eq!(find_engel_coefficient(&Field::new(2, 1).unwrap()), Some(1));
        let f4 = Field::new(2, 2).unwrap();
        let a4 = find_engel_coefficient(&f4).unwrap();
        assert!(cubic_is_irreducible(&CubicPoly { a2: 0, a1: a4, a0: 1 }, &f4));
        assert_eq!(find_engel_coefficient(&Field::new(2, 3).unwrap()), Some(2));
        assert_eq!(find_engel_coefficient(&Field::new(2, 4).unwrap()), Some(1));
    }

    #[test]
    fn engel_coefficient_exists_for_even_q_up_to_256() {
        for f in 1..=8 {
            let fld = Field::new(2, f).unwrap();
            assert!(
                find_engel_coefficient(&fld).is_some(),
                "no coefficient for q = 2^{f}"
            );
        }
    }

    #[test]
    fn irreducible_count_over_f8_is_positive() {
        let f8 = Field::new(2, 3).unwrap();
        let n8 = (0..8)
            .filter(|&a| cubic_is_irreducible(&CubicPoly { a2: 0, a1: a, a0: 1 }, &f8))
            .count();
        assert!(n8 >= 1);
    }

    #[test]
    fn bad_specs_are_rejected() {
        assert!(matches!(Field::new(6, 1), Err(FieldError::NonPrime(6))));
        // x^2 + 2x + 1 = (x+1)^2 over F_3
        assert!(matches!(
            Field::with_modulus(3, 2, vec![1, 2, 1]),
            Err(FieldError::ReducibleModulus(3))
        ));
        let alt = Field::with_modulus(3, 2, vec![2, 1, 1]).unwrap();
        assert_eq!(alt.q(), 9);
    }

    #[test]
    fn prime_power_parsing() {
        assert_eq!(parse_prime_power("2^3").unwrap(), (2, 3));
        assert_eq!(parse_prime_power("8").unwrap(), (2, 3));
        assert_eq!(parse_prime_power("11").unwrap(), (11, 1));
        assert!(parse_prime_power("12").is_err());
        assert_eq!(factor_prime_power(729), Some((3, 6)));
        assert_eq!(factor_prime_power(1), None);
    }
}
