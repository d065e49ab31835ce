//! The Gauss hypergeometric function `F(z) = 2F1(1/2, 1/2; 1 | z)`, the ratio
//! `tau(t) = i F(1 - t) / F(t)` on `0 < t < 1`, and the curve
//! `F(1 - t1) F(t2) - N F(1 - t2) F(t1) = 0`, whose real points satisfy
//! `tau(t1) = N tau(t2)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::Rational;

/// Margin kept from the singular points `t = 0` and `t = 1`.
pub const DELTA: f64 = 0.01;
/// Hard cap on the number of series terms in one evaluation.
pub const MAX_TERMS: usize = 200_000;

/// Parameters `(a, b; c)` of `2F1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HypParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl HypParams {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Result<Self> {
        if c.is_integer() && !c.is_positive() {
            return Err(Error::Invalid(format!("c = {c} is a non-positive integer")));
        }
        Ok(Self { a, b, c })
    }

    /// `(1/2, 1/2; 1)`.
    pub fn legendre() -> Self {
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        Self { a: half.clone(), b: half, c: Rational::one() }
    }

    /// `c_{n+1} / c_n`.
    fn ratio(&self, n: u64) -> Rational {
        let n = Rational::from_integer(BigInt::from(n));
        (&self.a + &n) * (&self.b + &n) / ((&self.c + &n) * (n + Rational::one()))
    }

    /// First index from which `0 < c_{n+1} / c_n <= 1` for every later `n`, when
    /// `a, b, c > 0`. `None` when the coefficients eventually grow.
    fn monotone_from(&self) -> Option<u64> {
        if !(self.a.is_positive() && self.b.is_positive() && self.c.is_positive()) {
            return None;
        }
        // ratio <= 1  <=>  n (a + b - c - 1) <= c - ab
        let slope = &self.a + &self.b - &self.c - Rational::one();
        let rest = &self.c - &self.a * &self.b;
        if slope.is_positive() {
            None
        } else if slope.is_zero() {
            (!rest.is_negative()).then_some(0)
        } else if !rest.is_negative() {
            Some(0)
        } else {
            let n = (rest / slope).ceil().to_integer();
            Some(n.to_u64().unwrap_or(0))
        }
    }
}

/// Coefficients `c_0, ..., c_D` of a power series in one variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries1D {
    pub coeffs: Vec<Rational>,
}

impl TruncSeries1D {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Exact evaluation of the truncated sum by Horner's rule.
    pub fn eval(&self, z: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * z + c)
    }

    pub fn eval_f64(&self, z: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }
}

/// `c_n = (a)_n (b)_n / ((c)_n n!)` for `n <= order`, by the term recurrence.
pub fn hyp2f1(params: &HypParams, order: usize) -> TruncSeries1D {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Rational::one();
    for n in 0..=order {
        if n > 0 {
            c *= params.ratio(n as u64 - 1);
        }
        coeffs.push(c.clone());
    }
    TruncSeries1D { coeffs }
}

struct CoefficientTable {
    last: Rational,
    floats: Vec<f64>,
}

fn table() -> &'static Mutex<HashMap<HypParams, CoefficientTable>> {
    static CACHE: OnceLock<Mutex<HashMap<HypParams, CoefficientTable>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Float images of the exact coefficients `c_0..c_len`, generated once and cached.
fn float_coefficients(params: &HypParams, len: usize) -> Vec<f64> {
    let mut guard = table().lock().expect("coefficient cache poisoned");
    let entry = guard
        .entry(params.clone())
        .or_insert_with(|| CoefficientTable { last: Rational::one(), floats: vec![1.0] });
    while entry.floats.len() < len {
        let n = entry.floats.len() as u64 - 1;
        entry.last = &entry.last * params.ratio(n);
        entry.floats.push(entry.last.to_f64().unwrap_or(0.0));
    }
    entry.floats[..len].to_vec()
}

/// A partial sum with the number of terms used and a bound on the neglected tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub terms: usize,
    pub tail_bound: f64,
}

/// Sums the series at `0 <= t < 1` until the geometric tail bound
/// `c_N t^(N+1) / (1 - t)` drops below `tol`.
///
/// The bound needs `a, b, c > 0` and eventually non-increasing coefficients.
pub fn hyp2f1_eval(params: &HypParams, t: f64, tol: f64) -> Result<Evaluation> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::OutOfDomain(format!("t = {t}")));
    }
    let start = params
        .monotone_from()
        .ok_or_else(|| Error::OutOfDomain("tail bound needs a, b, c > 0 and a + b <= c + 1 eventually".into()))?
        as usize;
    let mut chunk = 256usize.max(start + 1);
    loop {
        let coeffs = float_coefficients(params, chunk.min(MAX_TERMS));
        let mut sum = 0.0;
        let mut power = 1.0;
        for (n, &c) in coeffs.iter().enumerate() {
            sum += c * power;
            power *= t;
            if n >= start {
                let bound = c * power / (1.0 - t);
                if bound < tol {
                    return Ok(Evaluation { value: sum, terms: n + 1, tail_bound: bound });
                }
            }
        }
        if chunk >= MAX_TERMS {
            return Err(Error::ResourceLimit(format!("more than {MAX_TERMS} terms needed at t = {t}")));
        }
        chunk *= 2;
    }
}

/// `F(t) = 2F1(1/2, 1/2; 1 | t)`.
pub fn legendre_f(t: f64, tol: f64) -> Result<f64> {
    Ok(hyp2f1_eval(&HypParams::legendre(), t, tol)?.value)
}

fn check_domain(t: f64) -> Result<()> {
    if (DELTA..=1.0 - DELTA).contains(&t) {
        Ok(())
    } else {
        Err(Error::OutOfDomain(format!("t = {t} outside [{DELTA}, {}]", 1.0 - DELTA)))
    }
}

/// Series accuracy used to reach accuracy `tol` in ratios of values of `F`.
fn series_tol(tol: f64) -> f64 {
    (tol * 1e-3).clamp(1e-16, 1e-9)
}

/// `Im tau(t) = F(1 - t) / F(t)`.
pub fn tau_of_t(t: f64, tol: f64) -> Result<f64> {
    check_domain(t)?;
    let st = series_tol(tol);
    Ok(legendre_f(1.0 - t, st)? / legendre_f(t, st)?)
}

/// The `t` in `[DELTA, 1 - DELTA]` with `Im tau(t) = target`, by bisection.
pub fn invert_tau(target: f64, tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (DELTA, 1.0 - DELTA);
    let (top, bottom) = (tau_of_t(lo, tol)?, tau_of_t(hi, tol)?);
    if !(target.is_finite() && bottom <= target && target <= top) {
        return Err(Error::TargetOutOfRange(format!("{target} not in [{bottom}, {top}]")));
    }
    // Im tau is decreasing in t
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let v = tau_of_t(mid, tol)?;
        if (v - target).abs() < tol || hi - lo < 1e-16 {
            return Ok(mid);
        }
        if v > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `G_N(t1, t2) = F(1 - t1) F(t2) - N F(1 - t2) F(t1)`.
pub fn g_n(t1: f64, t2: f64, n: u32, tol: f64) -> Result<f64> {
    check_domain(t1)?;
    check_domain(t2)?;
    let st = series_tol(tol);
    let (f1, g1) = (legendre_f(t1, st)?, legendre_f(1.0 - t1, st)?);
    let (f2, g2) = (legendre_f(t2, st)?, legendre_f(1.0 - t2, st)?);
    Ok(g1 * f2 - n as f64 * g2 * f1)
}

/// `G_N` on the truncated series, in exact arithmetic at rational points.
pub fn g_n_exact(series: &TruncSeries1D, t1: &Rational, t2: &Rational, n: u32) -> Rational {
    let one = Rational::one();
    let f = |z: &Rational| series.eval(z);
    f(&(&one - t1)) * f(t2) - Rational::from_integer(BigInt::from(n)) * f(&(&one - t2)) * f(t1)
}

/// One point `(t1, t2)` with `tau(t1) = N tau(t2)` and the residual `|G_N(t1, t2)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocusPoint {
    pub t1: f64,
    pub t2: f64,
    pub residual: f64,
    /// Set when the residual is not below the requested tolerance.
    pub flagged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocusSample {
    pub n: u32,
    pub points: Vec<LocusPoint>,
    /// Grid values whose target `tau(t1) / N` is not attained on the domain.
    pub skipped: Vec<f64>,
}

/// Solves `tau(t2) = tau(t1) / N` for `t2`.
pub fn witness(n: u32, t1: f64, tol: f64) -> Result<LocusPoint> {
    if n == 0 {
        return Err(Error::Invalid("N must be positive".into()));
    }
    let target = tau_of_t(t1, tol)? / n as f64;
    let t2 = invert_tau(target, tol * 1e-3)?;
    let residual = g_n(t1, t2, n, tol)?.abs();
    Ok(LocusPoint { t1, t2, residual, flagged: residual >= tol })
}

/// [`witness`] over a grid of `t1`; output follows grid order.
pub fn sample_locus(n: u32, grid: &[f64], tol: f64) -> Result<LocusSample> {
    let results: Vec<(f64, Result<LocusPoint>)> = grid.par_iter().map(|&t1| (t1, witness(n, t1, tol))).collect();
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    for (t1, r) in results {
        match r {
            Ok(p) => points.push(p),
            Err(Error::TargetOutOfRange(_)) => skipped.push(t1),
            Err(e) => return Err(e),
        }
    }
    Ok(LocusSample { n, points, skipped })
}

/// `k` evenly spaced points from `from` to `to` inclusive.
pub fn linspace(from: f64, to: f64, k: usize) -> Vec<f64> {
    match k {
        0 => Vec::new(),
        1 => vec![from],
        _ => (0..k).map(|i| from + (to - from) * i as f64 / (k - 1) as f64).collect(),
    }
}
