//! Coefficient fields: the rationals and prime fields.
//!
//! A [`Field`] value is a descriptor; elements are plain values that only make
//! sense together with their descriptor. This keeps `Poly<Rationals>` free of any
//! per-coefficient overhead while letting the same polynomial and linear-algebra
//! code run modulo a prime chosen at runtime.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::linalg;
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Human-readable rendering in the expression grammar.
    fn render(&self, a: &Self::Elem) -> String;

    /// Basis of the right kernel of `m` (rows of equal length `ncols`).
    fn nullspace(&self, m: &[Vec<Self::Elem>], ncols: usize) -> Vec<Vec<Self::Elem>> {
        linalg::nullspace_gauss(self, m, ncols)
    }
}

/// The field of rational numbers with arbitrary-precision coefficients.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_int(&self, n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn render(&self, a: &Rational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn nullspace(&self, m: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
        linalg::nullspace_rational(m, ncols)
    }
}

/// Largest modulus accepted by [`PrimeField`]; keeps products inside `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The prime field `Z/pZ`, elements stored as residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::ResourceLimit(format!("modulus {p} exceeds {MAX_PRIME}")));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduces a rational number; fails when `p` divides the denominator.
    pub fn reduce(&self, r: &Rational) -> Result<u64> {
        let p = BigInt::from(self.p);
        let den = mod_bigint(r.denom(), &p);
        if den == 0 {
            return Err(Error::DenominatorDivisibleByP { coefficient: r.to_string(), p: self.p });
        }
        let num = mod_bigint(r.numer(), &p);
        Ok(self.mul(&num, &self.inv(&den).expect("nonzero residue")))
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

fn mod_bigint(n: &BigInt, p: &BigInt) -> u64 {
    let mut r = n % p;
    if r.is_negative() {
        r += p;
    }
    r.try_into().expect("residue fits in u64")
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
