//! Taylor coefficients of periods of `-x0^d + x1^d - x2^d + ... + x_{n+1}^d
//! - sum_alpha t_alpha x^alpha` over the monodromy of the linear cycle
//! `x0 - x1 = x2 - x3 = ... = 0`.
//!
//! For a residue form `x^beta Omega / f^k` the normalized period expands as
//! `sum_a (-1)^E(beta + a*) D(beta + a*) / a! * t^a`, where `a* = sum a_alpha alpha`
//! and only tuples whose shifted exponent satisfies the pairing condition
//! `{(b_2e + 1)/d} + {(b_2e+1 + 1)/d} = 1` contribute.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::symbols::{int_frac, pochhammer};
use crate::error::{Error, Result};
use crate::exact::{ExponentVec, Rational, Rationals, SparseSeries};

/// A deformation of the alternating-sign Fermat hypersurface of degree `d` in
/// `P^{n+1}` by the monomials in `monomials`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    n: u32,
    d: u32,
    monomials: Vec<ExponentVec>,
    truncation: u32,
}

impl FamilySpec {
    pub fn new(n: u32, d: u32, monomials: Vec<ExponentVec>, truncation: u32) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::Invalid(format!("fiber dimension n = {n} must be even and positive")));
        }
        if d < 2 {
            return Err(Error::Invalid(format!("degree d = {d} must be at least 2")));
        }
        let mut seen = BTreeSet::new();
        for m in &monomials {
            if m.len() != n as usize + 2 {
                return Err(Error::Invalid(format!("monomial {m:?} must have {} exponents", n + 2)));
            }
            if m.has_negative() || m.total_degree() != d as i64 {
                return Err(Error::Invalid(format!("monomial {m:?} must be non-negative of degree {d}")));
            }
            if !seen.insert(m.clone()) {
                return Err(Error::Invalid(format!("duplicate monomial {m:?}")));
            }
        }
        Ok(Self { n, d, monomials, truncation })
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn monomials(&self) -> &[ExponentVec] {
        &self.monomials
    }
    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn with_truncation(&self, truncation: u32) -> Self {
        Self { truncation, ..self.clone() }
    }

    /// The dimension `n + 2` of the ambient coordinate vector.
    pub fn ambient(&self) -> usize {
        self.n as usize + 2
    }
}

/// Every exponent vector in `nvars` variables of total degree exactly `d`,
/// in descending lexicographic order (`x0^d` first).
pub fn degree_monomials(nvars: usize, d: u32) -> Vec<ExponentVec> {
    let mut out: Vec<ExponentVec> = ExponentVec::all_up_to(nvars, d)
        .into_iter()
        .filter(|e| e.total_degree() == d as i64)
        .collect();
    out.sort_by(|a, b| b.as_slice().cmp(a.as_slice()));
    out
}

/// A residue form `x^beta Omega / f^k`; `k` is determined by `beta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BetaIndex {
    beta: ExponentVec,
    k: u32,
}

impl BetaIndex {
    pub fn new(beta: ExponentVec, d: u32) -> Result<Self> {
        let k = pole_order(&beta, d)?;
        Ok(Self { beta, k })
    }
    pub fn beta(&self) -> &ExponentVec {
        &self.beta
    }
    /// `x^beta` written as `x0^a0*x1^a1*...`, or `1`.
    pub fn monomial(&self) -> String {
        render_monomial(&self.beta, |i| format!("x{i}"))
    }

    pub fn pole_order(&self) -> u32 {
        self.k
    }
}

/// `k = sum (beta_i + 1) / d`, required to be a positive integer.
pub fn pole_order(beta: &ExponentVec, d: u32) -> Result<u32> {
    if beta.has_negative() {
        return Err(Error::Invalid(format!("beta {beta:?} has a negative entry")));
    }
    let s: i64 = beta.as_slice().iter().map(|&b| b as i64 + 1).sum();
    if s % d as i64 != 0 || s == 0 {
        return Err(Error::NotIntegral(format!("{s}/{d}")));
    }
    Ok((s / d as i64) as u32)
}

fn shifted(b: i32, d: u32) -> Rational {
    Rational::new(BigInt::from(b as i64 + 1), BigInt::from(d))
}

/// The pairing condition on `beta_check`: for every `e = 0..=n/2` the
/// fractional parts of `(b_2e + 1)/d` and `(b_2e+1 + 1)/d` sum to one.
pub fn condition20(beta_check: &ExponentVec, d: u32, n: u32) -> bool {
    assert_eq!(beta_check.len(), n as usize + 2);
    (0..=n as usize / 2).all(|e| {
        let (_, f0) = int_frac(&shifted(beta_check.get(2 * e), d));
        let (_, f1) = int_frac(&shifted(beta_check.get(2 * e + 1), d));
        f0 + f1 == Rational::one()
    })
}

/// `D = prod_i ({(b_i + 1)/d})_{[(b_i + 1)/d]}`.
pub fn d_coefficient(beta_check: &ExponentVec, d: u32) -> Rational {
    beta_check.as_slice().iter().fold(Rational::one(), |acc, &b| {
        let (fl, fr) = int_frac(&shifted(b, d));
        acc * pochhammer(&fr, fl.to_u32().expect("non-negative floor"))
    })
}

/// `E = sum_e [(b_2e + 1)/d]`.
pub fn e_sign(beta_check: &ExponentVec, d: u32, n: u32) -> i64 {
    (0..=n as usize / 2)
        .map(|e| int_frac(&shifted(beta_check.get(2 * e), d)).0.to_i64().expect("small floor"))
        .sum()
}

/// `a* = sum_alpha a_alpha alpha`.
pub fn a_star(a: &ExponentVec, spec: &FamilySpec) -> ExponentVec {
    let mut out = vec![0i32; spec.ambient()];
    for (k, alpha) in a.as_slice().iter().zip(spec.monomials()) {
        for (o, &x) in out.iter_mut().zip(alpha.as_slice()) {
            *o += k * x;
        }
    }
    ExponentVec::new(out)
}

/// Coefficient of `t^a` in the normalized period of `x^beta Omega / f^k`.
///
/// Evaluated straight from the closed form with rational Pochhammer symbols;
/// [`period_series`] uses an integer kernel and is checked against this.
pub fn period_coefficient(a: &ExponentVec, beta: &BetaIndex, spec: &FamilySpec) -> Rational {
    assert_eq!(a.len(), spec.monomials().len());
    let check = beta.beta().add(&a_star(a, spec));
    if !condition20(&check, spec.d(), spec.n()) {
        return Rational::zero();
    }
    let mut a_fact = BigInt::one();
    for &k in a.as_slice() {
        for j in 2..=k as i64 {
            a_fact *= j;
        }
    }
    let sign = if e_sign(&check, spec.d(), spec.n()) % 2 == 0 { 1 } else { -1 };
    d_coefficient(&check, spec.d()) * Rational::from_integer(BigInt::from(sign)) / Rational::from_integer(a_fact)
}

/// A truncated normalized period series and the form it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodSeries {
    pub spec: FamilySpec,
    pub beta: BetaIndex,
    pub series: SparseSeries,
    /// Text of the constant multiplying the period on the other side.
    pub normalization: String,
}

pub(crate) fn render_monomial(e: &ExponentVec, names: impl Fn(usize) -> String) -> String {
    let parts: Vec<String> = e
        .as_slice()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| if k == 1 { names(i) } else { format!("{}^{}", names(i), k) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn normalization_text(beta: &BetaIndex, spec: &FamilySpec) -> String {
    let half = spec.n() / 2;
    format!(
        "(-1)^{half} * {d}^{e} * {km1}! / (2*pi*sqrt(-1))^{half} * integral over delta_t of Resi({mono} * Omega / f_t^{k})",
        d = spec.d(),
        e = half + 1,
        km1 = beta.pole_order() - 1,
        mono = render_monomial(beta.beta(), |i| format!("x{i}")),
        k = beta.pole_order(),
    )
}

struct Kernel<'a> {
    spec: &'a FamilySpec,
    beta: Vec<i64>,
    alphas: Vec<Vec<i64>>,
    factorials: Vec<BigInt>,
}

impl Kernel<'_> {
    /// `(-1)^E D / a!` with all arithmetic on integers, or `None` when the
    /// pairing condition fails.
    fn coefficient(&self, check: &[i64], a: &[i32]) -> Option<Rational> {
        let d = self.spec.d() as i64;
        for e in 0..=self.spec.n() as usize / 2 {
            let r0 = (check[2 * e] + 1).rem_euclid(d);
            let r1 = (check[2 * e + 1] + 1).rem_euclid(d);
            if r0 == 0 || r1 == 0 || r0 + r1 != d {
                return None;
            }
        }
        let mut num = BigInt::one();
        let mut acc: u64 = 1;
        let mut powers = 0u32;
        let mut sign = 0i64;
        for (i, &b) in check.iter().enumerate() {
            let m = (b + 1).div_euclid(d);
            let r = (b + 1).rem_euclid(d);
            if i % 2 == 0 {
                sign += m;
            }
            powers += m as u32;
            for j in 0..m {
                let f = (r + j * d) as u64;
                match acc.checked_mul(f) {
                    Some(v) => acc = v,
                    None => {
                        num *= acc;
                        acc = f;
                    }
                }
            }
        }
        num *= acc;
        let mut den = BigInt::from(d).pow(powers);
        for &k in a {
            den *= &self.factorials[k as usize];
        }
        if sign % 2 != 0 {
            num = -num;
        }
        Some(Rational::new(num, den))
    }

    fn walk(&self, idx: usize, left: u32, a: &mut Vec<i32>, check: &mut Vec<i64>, out: &mut Vec<(ExponentVec, Rational)>) {
        if idx == self.alphas.len() {
            if let Some(c) = self.coefficient(check, a) {
                out.push((ExponentVec::new(a.clone()), c));
            }
            return;
        }
        for k in 0..=left {
            a[idx] = k as i32;
            self.walk(idx + 1, left - k, a, check, out);
            for (c, &x) in check.iter_mut().zip(&self.alphas[idx]) {
                *c += x;
            }
        }
        for (c, &x) in check.iter_mut().zip(&self.alphas[idx]) {
            *c -= x * (left as i64 + 1);
        }
        a[idx] = 0;
    }
}

/// All coefficients of `t^a` with `|a| <= truncation`.
pub fn period_series(beta: &BetaIndex, spec: &FamilySpec) -> Result<PeriodSeries> {
    if beta.beta().len() != spec.ambient() {
        return Err(Error::Invalid(format!("beta must have {} entries", spec.ambient())));
    }
    // re-derive k so a BetaIndex built for another degree is rejected
    let k = pole_order(beta.beta(), spec.d())?;
    let beta = BetaIndex { beta: beta.beta().clone(), k };

    let nvars = spec.monomials().len();
    let trunc = spec.truncation();
    let mut factorials = vec![BigInt::one()];
    for j in 1..=trunc as i64 {
        let next = factorials.last().unwrap() * j;
        factorials.push(next);
    }
    let kernel = Kernel {
        spec,
        beta: beta.beta().as_slice().iter().map(|&b| b as i64).collect(),
        alphas: spec
            .monomials()
            .iter()
            .map(|m| m.as_slice().iter().map(|&x| x as i64).collect())
            .collect(),
        factorials,
    };

    let terms: Vec<(ExponentVec, Rational)> = if nvars == 0 {
        kernel.coefficient(&kernel.beta, &[]).map(|c| (ExponentVec::zero(0), c)).into_iter().collect()
    } else {
        // split on the exponent of the first deformation monomial
        (0..=trunc)
            .into_par_iter()
            .map(|first| {
                let mut a = vec![0i32; nvars];
                a[0] = first as i32;
                let mut check: Vec<i64> = kernel
                    .beta
                    .iter()
                    .zip(&kernel.alphas[0])
                    .map(|(b, x)| b + x * first as i64)
                    .collect();
                let mut out = Vec::new();
                kernel.walk(1, trunc - first, &mut a, &mut check, &mut out);
                out
            })
            .flatten()
            .collect()
    };

    let series = SparseSeries::from_terms(Rationals, nvars, Some(trunc as i32), terms);
    let normalization = normalization_text(&beta, spec);
    Ok(PeriodSeries { spec: spec.clone(), beta, series, normalization })
}

/// Bound from the shape of the closed form: the reduced denominator of the
/// coefficient of `t^a` divides `a! * d^(sum_i [(b_i + 1)/d])`.
pub fn denominator_bound(a: &ExponentVec, beta: &BetaIndex, spec: &FamilySpec) -> BigInt {
    let check = beta.beta().add(&a_star(a, spec));
    let d = spec.d() as i64;
    let m: i64 = check.as_slice().iter().map(|&b| (b as i64 + 1).div_euclid(d)).sum();
    let mut bound = BigInt::from(d).pow(m as u32);
    for &k in a.as_slice() {
        for j in 2..=k as i64 {
            bound *= j;
        }
    }
    bound
}
