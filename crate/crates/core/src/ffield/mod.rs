//! Exact arithmetic in GF(p^r).
//!
//! Elements are stored as the integer `c0 + c1 p + ... + c_{r-1} p^{r-1}` of
//! their reduced coefficient vector modulo the field's defining polynomial, so
//! equality of elements is equality of coefficient sequences. Multiplication
//! goes through exp/log tables built once at construction.

mod poly;
mod subfield;
mod twist;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith;

pub use subfield::{trace_zero_set, unital_constant, SubfieldEmbedding};
pub use twist::{TwistKind, TwistSpec};

/// Largest field order accepted by [`FieldSpec::new`].
pub const DEFAULT_MAX_ORDER: u64 = 59_049; // 3^10

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{r} exceeds the configured bound {bound}")]
    TooLarge { p: u64, r: u32, bound: u64 },
    #[error("no irreducible polynomial of degree {r} over GF({p}) found")]
    NoIrreducible { p: u64, r: u32 },
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("operands belong to fields of order {left} and {right}")]
    MixedFields { left: u32, right: u32 },
    #[error("value {value} is not an element of GF({q})")]
    OutOfRange { value: u64, q: u32 },
    #[error("quadratic character is undefined in characteristic 2")]
    EvenCharacteristic,
    #[error("twist {kind:?} with n0 = {n0} does not match GF({q})")]
    TwistMismatch { kind: TwistKind, n0: u64, q: u32 },
    #[error("n = {0} is not a valid {1} field size")]
    InvalidTwistSize(u64, &'static str),
    #[error("GF({small}) does not embed in GF({large})")]
    NotASubfield { small: u32, large: u32 },
    #[error("GF({q}) is not a quadratic extension of GF({n})")]
    NotQuadratic { q: u32, n: u64 },
    #[error("no element c with c^n + c + 1 = 0 in GF({0})")]
    NoUnitalConstant(u32),
}

/// An element of a finite field. Carries the order of its field so that
/// operands from different fields are caught.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    q: u32,
    repr: u32,
}

impl FieldElement {
    /// Integer encoding of the coefficient vector.
    #[inline]
    pub fn value(self) -> u32 {
        self.repr
    }

    #[inline]
    pub fn field_order(self) -> u32 {
        self.q
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.repr == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.repr)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadraticCharacter {
    Square,
    Nonsquare,
    Zero,
}

/// Serializable descriptor of a field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub p: u64,
    pub r: u32,
    /// Coefficients `c0..c_r` of the monic defining polynomial.
    pub modulus: Vec<u32>,
}

/// GF(p^r) with a fixed defining polynomial: the lexicographically smallest
/// monic irreducible of degree `r` (comparing coefficients from `x^{r-1}` down).
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    r: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: u32,
    /// `exp[i] = g^i` for `i in 0..2(q-1)`, doubled to skip a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    pub fn new(p: u64, r: u32) -> Result<Self, FieldError> {
        Self::with_bound(p, r, DEFAULT_MAX_ORDER)
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: u64) -> Result<Self, FieldError> {
        let (p, r) = arith::prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Self::new(p, r)
    }

    pub fn with_bound(p: u64, r: u32, bound: u64) -> Result<Self, FieldError> {
        if !arith::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if r == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = p
            .checked_pow(r)
            .filter(|&q| q <= bound && q <= u32::MAX as u64)
            .ok_or(FieldError::TooLarge { p, r, bound })?;
        let (p, q) = (p as u32, q as u32);
        let deg = r as usize;

        let tails = q;
        let modulus = (0..tails)
            .map(|t| poly::monic_from_tail(t, p, deg))
            .find(|m| poly::is_irreducible(m, p))
            .ok_or(FieldError::NoIrreducible { p: p as u64, r })?;

        let order = (q - 1) as u128;
        let primes = arith::prime_divisors(order);
        let primitive = (1..q)
            .find(|&g| {
                let gp = poly::trim(poly::digits(g, p, deg));
                primes
                    .iter()
                    .all(|&rho| poly::pow_mod(&gp, order / rho, &modulus, p) != vec![1])
            })
            .ok_or(FieldError::NoIrreducible { p: p as u64, r })?;

        let n = (q - 1) as usize;
        let mut exp = Vec::with_capacity(2 * n);
        let mut log = vec![0u32; q as usize];
        let gp = poly::trim(poly::digits(primitive, p, deg));
        let mut cur: Vec<u32> = vec![1];
        for i in 0..n {
            let mut d = cur.clone();
            d.resize(deg, 0);
            let v = poly::from_digits(&d, p);
            exp.push(v);
            log[v as usize] = i as u32;
            cur = poly::mul_mod(&cur, &gp, &modulus, p);
        }
        for i in 0..n {
            exp.push(exp[i]);
        }

        Ok(FieldSpec {
            p,
            r,
            q,
            modulus,
            primitive,
            exp,
            log,
        })
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.r
    }

    #[inline]
    pub fn order(&self) -> u64 {
        self.q as u64
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn record(&self) -> FieldRecord {
        FieldRecord {
            p: self.p as u64,
            r: self.r,
            modulus: self.modulus.clone(),
        }
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement { q: self.q, repr: 0 }
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement { q: self.q, repr: 1 }
    }

    /// The fixed generator of the multiplicative group (smallest encoding of
    /// multiplicative order q - 1).
    pub fn primitive(&self) -> FieldElement {
        FieldElement {
            q: self.q,
            repr: self.primitive,
        }
    }

    pub fn element(&self, value: u64) -> Result<FieldElement, FieldError> {
        if value >= self.q as u64 {
            return Err(FieldError::OutOfRange { value, q: self.q });
        }
        Ok(FieldElement {
            q: self.q,
            repr: value as u32,
        })
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let p = self.p as i64;
        FieldElement {
            q: self.q,
            repr: v.rem_euclid(p) as u32,
        }
    }

    /// All elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |repr| FieldElement { q: self.q, repr })
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q).map(move |repr| FieldElement { q: self.q, repr })
    }

    /// Coefficient vector `c0..c_{r-1}`.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        poly::digits(x.repr, self.p, self.r as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<FieldElement, FieldError> {
        if c.len() != self.r as usize || c.iter().any(|&x| x >= self.p) {
            return Err(FieldError::OutOfRange {
                value: c.iter().map(|&x| x as u64).sum(),
                q: self.q,
            });
        }
        Ok(FieldElement {
            q: self.q,
            repr: poly::from_digits(c, self.p),
        })
    }

    #[inline]
    fn check(&self, x: FieldElement) -> Result<(), FieldError> {
        if x.q != self.q {
            return Err(FieldError::MixedFields {
                left: self.q,
                right: x.q,
            });
        }
        Ok(())
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.q == self.q && b.q == self.q);
        let repr = if self.p == 2 {
            a.repr ^ b.repr
        } else if self.r == 1 {
            (a.repr + b.repr) % self.p
        } else {
            let (mut x, mut y, mut place, mut out) = (a.repr, b.repr, 1u32, 0u32);
            for _ in 0..self.r {
                out += ((x % self.p + y % self.p) % self.p) * place;
                x /= self.p;
                y /= self.p;
                place *= self.p;
            }
            out
        };
        FieldElement { q: self.q, repr }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        debug_assert!(a.q == self.q);
        let repr = if self.p == 2 {
            a.repr
        } else if self.r == 1 {
            (self.p - a.repr) % self.p
        } else {
            let (mut x, mut place, mut out) = (a.repr, 1u32, 0u32);
            for _ in 0..self.r {
                out += ((self.p - x % self.p) % self.p) * place;
                x /= self.p;
                place *= self.p;
            }
            out
        };
        FieldElement { q: self.q, repr }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.q == self.q && b.q == self.q);
        if a.repr == 0 || b.repr == 0 {
            return self.zero();
        }
        let i = self.log[a.repr as usize] + self.log[b.repr as usize];
        FieldElement {
            q: self.q,
            repr: self.exp[i as usize],
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        if a.repr == 0 {
            return Err(FieldError::InverseOfZero);
        }
        let n = self.q - 1;
        let i = (n - self.log[a.repr as usize]) % n;
        Ok(FieldElement {
            q: self.q,
            repr: self.exp[i as usize],
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^k` by square-and-multiply; `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn checked_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    pub fn checked_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn checked_pow(&self, a: FieldElement, k: u64) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(self.pow(a, k))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Result<u64, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::InverseOfZero);
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.repr as usize] as u64;
        Ok(n / arith::gcd(n as u128, l as u128) as u64)
    }

    pub fn quadratic_character(&self, x: FieldElement) -> Result<QuadraticCharacter, FieldError> {
        self.check(x)?;
        if self.p == 2 {
            return Err(FieldError::EvenCharacteristic);
        }
        if x.is_zero() {
            return Ok(QuadraticCharacter::Zero);
        }
        if self.pow(x, (self.q as u64 - 1) / 2) == self.one() {
            Ok(QuadraticCharacter::Square)
        } else {
            Ok(QuadraticCharacter::Nonsquare)
        }
    }

    pub fn is_square(&self, x: FieldElement) -> Result<bool, FieldError> {
        Ok(self.quadratic_character(x)? == QuadraticCharacter::Square)
    }

    /// `x^(2 n0)` for Suzuki fields, `x^(3 n0)` for Ree fields.
    pub fn twist(&self, x: FieldElement, spec: &TwistSpec) -> Result<FieldElement, FieldError> {
        self.check(x)?;
        if !spec.matches(self) {
            return Err(FieldError::TwistMismatch {
                kind: spec.kind(),
                n0: spec.n0(),
                q: self.q,
            });
        }
        Ok(self.pow(x, spec.exponent()))
    }
}
