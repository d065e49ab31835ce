//! Sparse multivariate polynomials and total-degree-truncated power series.
//!
//! One structure serves both roles: a [`Poly`] with `truncation == None` is an
//! exact polynomial, one with `Some(D)` is a power series known up to total
//! degree `D`. Terms live in a `BTreeMap` keyed by [`ExponentVec`], so iteration
//! is always in graded-lex order and every operation is deterministic.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{ToPrimitive, Zero};

use super::field::{Field, PrimeField, Rational, Rationals};
use super::monomial::ExponentVec;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<K: Field = Rationals> {
    field: K,
    nvars: usize,
    truncation: Option<i32>,
    terms: BTreeMap<ExponentVec, K::Elem>,
}

/// Exact polynomial with rational coefficients.
pub type Polynomial = Poly<Rationals>;
/// Truncated power series with rational coefficients.
pub type SparseSeries = Poly<Rationals>;
/// Polynomial with coefficients in a prime field.
pub type ModPolynomial = Poly<PrimeField>;

fn min_trunc(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<K: Field> Poly<K> {
    pub fn zero(field: K, nvars: usize) -> Self {
        Self { field, nvars, truncation: None, terms: BTreeMap::new() }
    }

    pub fn constant(field: K, nvars: usize, c: K::Elem) -> Self {
        Self::monomial(field, ExponentVec::zero(nvars), c)
    }

    pub fn one(field: K, nvars: usize) -> Self {
        let one = field.one();
        Self::constant(field, nvars, one)
    }

    /// The coordinate function `x_i`.
    pub fn var(field: K, nvars: usize, i: usize) -> Self {
        let one = field.one();
        Self::monomial(field, ExponentVec::unit(nvars, i), one)
    }

    pub fn monomial(field: K, exps: ExponentVec, c: K::Elem) -> Self {
        let nvars = exps.len();
        let mut p = Self::zero(field, nvars);
        p.insert(exps, c);
        p
    }

    /// Builds from arbitrary terms; repeated exponents are summed, zeros and
    /// terms above the truncation dropped.
    pub fn from_terms(
        field: K,
        nvars: usize,
        truncation: Option<i32>,
        terms: impl IntoIterator<Item = (ExponentVec, K::Elem)>,
    ) -> Self {
        let mut p = Self { field, nvars, truncation, terms: BTreeMap::new() };
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length must equal nvars");
            p.accumulate(e, c);
        }
        p
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// `None` for an exact polynomial, `Some(D)` for a series known to degree `D`.
    pub fn truncation(&self) -> Option<i32> {
        self.truncation
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVec, &K::Elem)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &ExponentVec) -> K::Elem {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> K::Elem {
        self.coeff(&ExponentVec::zero(self.nvars))
    }

    /// Largest total degree among stored terms, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(ExponentVec::total_degree).max()
    }

    pub fn has_laurent_terms(&self) -> bool {
        self.terms.keys().any(ExponentVec::has_negative)
    }

    fn fits(&self, e: &ExponentVec) -> bool {
        self.truncation.is_none_or(|d| e.total_degree() <= d as i64)
    }

    fn insert(&mut self, e: ExponentVec, c: K::Elem) {
        if !self.field.is_zero(&c) && self.fits(&e) {
            self.terms.insert(e, c);
        }
    }

    fn accumulate(&mut self, e: ExponentVec, c: K::Elem) {
        if !self.fits(&e) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = self.field.add(old, &c);
                if self.field.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                if !self.field.is_zero(&c) {
                    self.terms.insert(e, c);
                }
            }
        }
    }

    /// Re-truncates at `min(current, d)`.
    pub fn truncate(&self, d: i32) -> Self {
        let truncation = min_trunc(self.truncation, Some(d));
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.total_degree() <= d as i64)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Self { field: self.field.clone(), nvars: self.nvars, truncation, terms }
    }

    /// Forgets the truncation bound, treating the stored terms as exact.
    pub fn into_polynomial(mut self) -> Self {
        self.truncation = None;
        self
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.total_degree() == d)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Self { field: self.field.clone(), nvars: self.nvars, truncation: self.truncation, terms }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let truncation = min_trunc(self.truncation, other.truncation);
        let mut out = Self { field: self.field.clone(), nvars: self.nvars, truncation, terms: BTreeMap::new() };
        for (e, c) in self.terms.iter().chain(other.terms.iter()) {
            out.accumulate(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    /// Cauchy product truncated at the smaller of the two truncations.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let truncation = min_trunc(self.truncation, other.truncation);
        let mut out = Self { field: self.field.clone(), nvars: self.nvars, truncation, terms: BTreeMap::new() };
        let limit = truncation.map(|d| d as i64);
        for (ea, ca) in &self.terms {
            let da = ea.total_degree();
            for (eb, cb) in &other.terms {
                if let Some(d) = limit {
                    // Negative entries only occur in untruncated polynomials.
                    if da + eb.total_degree() > d {
                        continue;
                    }
                }
                out.accumulate(ea.add(eb), self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), self.field.neg(c))).collect();
        Self { field: self.field.clone(), nvars: self.nvars, truncation: self.truncation, terms }
    }

    pub fn scale(&self, s: &K::Elem) -> Self {
        if self.field.is_zero(s) {
            return Self { terms: BTreeMap::new(), ..self.clone() };
        }
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), self.field.mul(c, s))).collect();
        Self { field: self.field.clone(), nvars: self.nvars, truncation: self.truncation, terms }
    }

    /// Multiplies by the monomial `x^e`.
    pub fn shift(&self, e: &ExponentVec) -> Self {
        let mut out = Self { terms: BTreeMap::new(), ..self.clone() };
        for (m, c) in &self.terms {
            out.insert(m.add(e), c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self { truncation: self.truncation, ..Self::one(self.field.clone(), self.nvars) };
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `x_i`. A series loses one degree of
    /// known precision.
    pub fn derivative(&self, i: usize) -> Self {
        let truncation = self.truncation.map(|d| d - 1);
        let mut out = Self { field: self.field.clone(), nvars: self.nvars, truncation, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let k = e.get(i);
            if k == 0 {
                continue;
            }
            let c = self.field.mul(c, &self.field.from_int(k as i64));
            out.accumulate(e.with_entry(i, k - 1), c);
        }
        out
    }

    /// Evaluates at a point of the coefficient field. Fails on a negative power
    /// of a coordinate that vanishes at the point.
    pub fn eval(&self, point: &[K::Elem]) -> Result<K::Elem> {
        if point.len() != self.nvars {
            return Err(Error::VariableCountMismatch(self.nvars, point.len()));
        }
        let f = &self.field;
        let mut acc = f.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.as_slice()) {
                let base = if k < 0 {
                    f.inv(x).ok_or_else(|| Error::OutOfDomain("negative power of zero".into()))?
                } else {
                    x.clone()
                };
                for _ in 0..k.unsigned_abs() {
                    t = f.mul(&t, &base);
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Replaces the coefficient field through a coefficientwise map.
    pub fn try_map_field<L: Field>(
        &self,
        target: L,
        mut map: impl FnMut(&K::Elem) -> Result<L::Elem>,
    ) -> Result<Poly<L>> {
        let mut out = Poly { field: target, nvars: self.nvars, truncation: self.truncation, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let v = map(c)?;
            out.insert(e.clone(), v);
        }
        Ok(out)
    }

    /// Embeds into a larger variable set: variable `i` becomes `positions[i]`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.nvars);
        let mut out = Self { field: self.field.clone(), nvars, truncation: self.truncation, terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            let mut v = vec![0; nvars];
            for (i, &k) in e.as_slice().iter().enumerate() {
                v[positions[i]] += k;
            }
            out.accumulate(ExponentVec::new(v), c.clone());
        }
        out
    }
}

impl Poly<Rationals> {
    /// Floating-point evaluation by direct summation in graded-lex order.
    pub fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.nvars {
            return Err(Error::VariableCountMismatch(self.nvars, point.len()));
        }
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (x, &k) in point.iter().zip(e.as_slice()) {
                t *= x.powi(k);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Coefficientwise reduction modulo `p`.
    pub fn mod_reduce(&self, field: PrimeField) -> Result<ModPolynomial> {
        if self.has_laurent_terms() {
            return Err(Error::Invalid("Laurent terms cannot be reduced modulo p".into()));
        }
        self.try_map_field(field, |c| field.reduce(c))
    }

    pub fn from_rational_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i32>, Rational)>) -> Self {
        Self::from_terms(Rationals, nvars, None, terms.into_iter().map(|(e, c)| (ExponentVec::new(e), c)))
    }

    /// Lowest common denominator of all coefficients.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(num_bigint::BigInt::from(1), |acc, c| acc.lcm(c.denom()))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() || c.is_zero())
    }
}

/// Adds two series; the result is truncated at the smaller truncation.
pub fn series_add(a: &SparseSeries, b: &SparseSeries) -> Result<SparseSeries> {
    a.try_add(b)
}

/// Multiplies two series; the result is truncated at the smaller truncation.
pub fn series_mul(a: &SparseSeries, b: &SparseSeries) -> Result<SparseSeries> {
    a.try_mul(b)
}

pub fn series_eval_float(s: &SparseSeries, point: &[f64]) -> Result<f64> {
    s.eval_f64(point)
}

pub fn mod_reduce(f: &Polynomial, p: u64) -> Result<ModPolynomial> {
    f.mod_reduce(PrimeField::new(p)?)
}

// Operator forms panic on a variable-count mismatch; use the `try_*` methods
// where the inputs are not already known to agree.

impl<K: Field> Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: Self) -> Poly<K> {
        self.try_add(rhs).expect("variable count mismatch")
    }
}

impl<K: Field> Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: Self) -> Poly<K> {
        self.try_sub(rhs).expect("variable count mismatch")
    }
}

impl<K: Field> Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Self) -> Poly<K> {
        self.try_mul(rhs).expect("variable count mismatch")
    }
}

impl<K: Field> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        self.neg_ref()
    }
}

impl<K: Field> Add for Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: Self) -> Poly<K> {
        &self + &rhs
    }
}

impl<K: Field> Sub for Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: Self) -> Poly<K> {
        &self - &rhs
    }
}

impl<K: Field> Mul for Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Self) -> Poly<K> {
        &self * &rhs
    }
}

impl<K: Field> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::field::{frac, int};

    fn series(nvars: usize, d: i32, terms: &[(&[i32], Rational)]) -> SparseSeries {
        Poly::from_terms(Rationals, nvars, Some(d), terms.iter().map(|(e, c)| (ExponentVec::new(e.to_vec()), c.clone())))
    }

    #[test]
    fn add_cancels() {
        let a = series(1, 3, &[(&[0], int(1)), (&[1], int(1))]);
        let b = series(1, 3, &[(&[1], int(-1))]);
        assert_eq!(series_add(&a, &b).unwrap(), series(1, 3, &[(&[0], int(1))]));
    }

    #[test]
    fn add_zero_is_identity() {
        let a = series(2, 3, &[(&[1, 2], frac(2, 3))]);
        let z = Poly::from_terms(Rationals, 2, Some(3), []);
        assert_eq!(series_add(&a, &z).unwrap(), a);
    }

    #[test]
    fn add_takes_min_truncation() {
        let a = series(2, 3, &[(&[1, 1], frac(1, 2))]);
        let b = series(2, 2, &[(&[1, 1], frac(1, 2))]);
        let s = series_add(&a, &b).unwrap();
        assert_eq!(s.truncation(), Some(2));
        assert_eq!(s, series(2, 2, &[(&[1, 1], int(1))]));
    }

    #[test]
    fn mul_examples() {
        let a = series(1, 2, &[(&[0], int(1)), (&[1], int(1))]);
        let b = series(1, 2, &[(&[0], int(1)), (&[1], int(-1))]);
        assert_eq!(series_mul(&a, &b).unwrap(), series(1, 2, &[(&[0], int(1)), (&[2], int(-1))]));

        let c = series(1, 1, &[(&[0], int(1)), (&[1], int(1))]);
        assert_eq!(series_mul(&c, &c).unwrap(), series(1, 1, &[(&[0], int(1)), (&[1], int(2))]));
    }

    #[test]
    fn geometric_series_times_one_minus_t() {
        let geo = Poly::from_terms(Rationals, 1, Some(5), (0..=5).map(|n| (ExponentVec::new(vec![n]), int(1))));
        let b = series(1, 5, &[(&[0], int(1)), (&[1], int(-1))]);
        assert_eq!(series_mul(&geo, &b).unwrap(), series(1, 5, &[(&[0], int(1))]));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = series(1, 2, &[]);
        let b = series(2, 2, &[]);
        assert_eq!(series_add(&a, &b), Err(Error::VariableCountMismatch(1, 2)));
        assert!(series_mul(&a, &b).is_err());
    }

    #[test]
    fn float_evaluation() {
        let p = series(1, 2, &[(&[0], int(1)), (&[1], int(1)), (&[2], int(1))]);
        assert_eq!(series_eval_float(&p, &[0.0]).unwrap(), 1.0);
        let q = series(2, 2, &[(&[1, 1], int(1))]);
        assert_eq!(series_eval_float(&q, &[2.0, 3.0]).unwrap(), 6.0);
    }

    #[test]
    fn exponential_series_at_one() {
        let mut fact = num_bigint::BigInt::from(1);
        let mut terms = Vec::new();
        for n in 0..=50 {
            if n > 0 {
                fact *= n;
            }
            terms.push((ExponentVec::new(vec![n]), Rational::new(1.into(), fact.clone())));
        }
        let e = Poly::from_terms(Rationals, 1, Some(50), terms);
        let v = series_eval_float(&e, &[1.0]).unwrap();
        assert!((v - std::f64::consts::E).abs() < 1e-12);
    }

    #[test]
    fn mod_reduce_examples() {
        let f = Polynomial::from_rational_terms(1, [(vec![1], int(3)), (vec![0], int(5))]);
        let r = mod_reduce(&f, 5).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.coeff(&ExponentVec::from([1])), 3);

        let g = Polynomial::from_rational_terms(1, [(vec![1], frac(1, 2))]);
        assert_eq!(mod_reduce(&g, 7).unwrap().coeff(&ExponentVec::from([1])), 4);

        let h = Polynomial::from_rational_terms(1, [(vec![1], frac(1, 5))]);
        assert!(matches!(mod_reduce(&h, 5), Err(Error::DenominatorDivisibleByP { p: 5, .. })));
    }

    #[test]
    fn derivative_lowers_truncation() {
        let s = series(2, 3, &[(&[2, 1], int(3)), (&[0, 1], int(1))]);
        let ds = s.derivative(0);
        assert_eq!(ds.truncation(), Some(2));
        assert_eq!(ds.coeff(&ExponentVec::from([1, 1])), int(6));
        assert_eq!(ds.len(), 1);
    }

    #[test]
    fn laurent_derivative_and_eval() {
        let inv = Polynomial::from_rational_terms(1, [(vec![-1], int(1))]);
        let d = inv.derivative(0);
        assert_eq!(d.coeff(&ExponentVec::from([-2])), int(-1));
        assert_eq!(inv.eval(&[int(4)]).unwrap(), frac(1, 4));
        assert!(inv.eval(&[int(0)]).is_err());
    }
}
