//! Exact arithmetic in cyclotomic fields Q(zeta_N). Elements are stored
//! densely as rational polynomials in zeta_N of degree < phi(N), reduced
//! modulo the N-th cyclotomic polynomial. Cyclotomic polynomials are
//! computed once and shared through a global registry.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CycError {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("{0} does not divide the conductor {1}")]
    NotASubfield(u32, u32),
    #[error("galois exponent {0} is not coprime to the conductor {1}")]
    BadGaloisExponent(u32, u32),
}

static PHI_REGISTRY: LazyLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    for d in 1..=n {
        if d * d > n {
            break;
        }
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Exact division of integer polynomials (low-to-high coefficients),
/// divisor monic; panics if the division leaves a remainder.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dd)];
    while rem.len() > dd {
        let lead = rem.last().unwrap().clone();
        let shift = rem.len() - 1 - dd;
        if !lead.is_zero() {
            quot[shift] = lead.clone();
            for (k, dc) in den.iter().enumerate() {
                let v = &rem[shift + k] - &lead * dc;
                rem[shift + k] = v;
            }
        }
        rem.pop();
    }
    assert!(rem.iter().all(Zero::is_zero), "division left a remainder");
    quot
}

/// The N-th cyclotomic polynomial, low-to-high integer coefficients,
/// degree phi(N): x^N - 1 divided by the cyclotomic polynomials of all
/// proper divisors.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1);
    if let Some(p) = PHI_REGISTRY.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    let mut acc = num;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d); // lock not held across recursion
        acc = poly_div_exact(&acc, &phi_d);
    }
    let arc = Arc::new(acc);
    PHI_REGISTRY
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| arc.clone())
        .clone()
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

fn rat(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

/// An element of Q(zeta_N), N the conductor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cyc {
    n: u32,
    c: Vec<BigRational>,
}

impl Cyc {
    pub fn zero(n: u32) -> Cyc {
        Cyc { n, c: vec![BigRational::zero(); euler_phi(n)] }
    }

    pub fn one(n: u32) -> Cyc {
        Cyc::from_int(n, 1)
    }

    pub fn from_int(n: u32, v: i64) -> Cyc {
        Cyc::from_rational(n, rat(v))
    }

    pub fn from_rational(n: u32, v: BigRational) -> Cyc {
        // phi(n) >= 1 for every n >= 1, so slot 0 always exists
        let mut out = Cyc::zero(n);
        out.c[0] = v;
        out
    }

    /// zeta_N^e reduced modulo the cyclotomic polynomial.
    pub fn zeta_pow(n: u32, e: u32) -> Cyc {
        let e = (e % n) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Cyc { n, c: reduce(n, poly) }
    }

    /// zeta_m^k viewed inside Q(zeta_N); m must divide N.
    pub fn root_of_unity(n: u32, m: u32, k: u32) -> Result<Cyc, CycError> {
        if m == 0 || n % m != 0 {
            return Err(CycError::NotASubfield(m, n));
        }
        Ok(Cyc::zeta_pow(n, (n / m).wrapping_mul(k % m) % n))
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Some(r) iff the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Cyc) -> Cyc {
        assert_eq!(self.n, other.n, "conductor mismatch");
        Cyc {
            n: self.n,
            c: self.c.iter().zip(&other.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Cyc) -> Cyc {
        assert_eq!(self.n, other.n, "conductor mismatch");
        Cyc {
            n: self.n,
            c: self.c.iter().zip(&other.c).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Cyc {
        Cyc { n: self.n, c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, s: &BigRational) -> Cyc {
        Cyc { n: self.n, c: self.c.iter().map(|a| a * s).collect() }
    }

    pub fn mul(&self, other: &Cyc) -> Cyc {
        assert_eq!(self.n, other.n, "conductor mismatch");
        if self.c.is_empty() || other.c.is_empty() {
            return Cyc::zero(self.n);
        }
        let mut prod = vec![BigRational::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Cyc { n: self.n, c: reduce(self.n, prod) }
    }

    /// The galois automorphism zeta -> zeta^t, t coprime to the conductor.
    pub fn galois(&self, t: u32) -> Result<Cyc, CycError> {
        if num_integer::gcd(t as u64, self.n as u64) != 1 {
            return Err(CycError::BadGaloisExponent(t, self.n));
        }
        let mut acc = Cyc::zero(self.n);
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let img = Cyc::zeta_pow(self.n, (t as u64 * j as u64 % self.n as u64) as u32);
            acc = acc.add(&img.scale(a));
        }
        Ok(acc)
    }

    /// Complex conjugation zeta -> zeta^-1.
    pub fn conj(&self) -> Cyc {
        if self.n == 1 {
            return self.clone();
        }
        self.galois(self.n - 1).expect("N-1 is coprime to N")
    }
}

/// Reduces a rational polynomial in zeta_N modulo the cyclotomic
/// polynomial and pads to length phi(N).
fn reduce(n: u32, mut poly: Vec<BigRational>) -> Vec<BigRational> {
    let modulus = cyclotomic_polynomial(n);
    let deg = modulus.len() - 1;
    while poly.len() > deg {
        let lead = poly.last().unwrap().clone();
        let shift = poly.len() - 1 - deg;
        if !lead.is_zero() {
            for (k, mc) in modulus.iter().enumerate() {
                let delta = &lead * BigRational::from_integer(mc.clone());
                poly[shift + k] -= delta;
            }
        }
        poly.pop();
    }
    poly.resize(deg, BigRational::zero());
    poly
}

impl std::fmt::Display for Cyc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if j == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "z{}^{j}", self.n)?;
            } else {
                write!(f, "{a}*z{}^{j}", self.n)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
