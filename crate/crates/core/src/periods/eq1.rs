//! Second, independent route to the quartic-surface period: the holomorphic
//! 2-form `Resi(Omega / f_t)` on the full family of quartic surfaces, written
//! directly in terms of `b = (a* + (1,1,1,1)) / 4`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::fermat::degree_monomials;
use crate::exact::{ExponentVec, Rational, Rationals, SparseSeries};

/// `<r> = (r - 1)(r - 2) ... ({r})`, the empty product being 1.
pub fn descending_bracket(r: &Rational) -> Rational {
    let fl = r.numer().div_floor(r.denom());
    let frac_part = r - Rational::from_integer(fl.clone());
    let mut acc = Rational::one();
    let mut t = r - Rational::one();
    while t >= frac_part {
        acc *= &t;
        t -= Rational::one();
    }
    acc
}

fn is_integer(r: &Rational) -> bool {
    r.is_integer()
}

/// Truncated series in the 35 variables `t_alpha`, `alpha` in the order of
/// [`degree_monomials`]`(4, 4)`.
pub fn eq1_series(truncation: u32) -> SparseSeries {
    let monomials = degree_monomials(4, 4);
    let nvars = monomials.len();
    let four = Rational::from_integer(BigInt::from(4));
    let mut terms = Vec::new();
    for a in ExponentVec::all_up_to(nvars, truncation) {
        let mut b: Vec<Rational> = vec![Rational::one(); 4];
        let mut a_fact = BigInt::one();
        for (k, alpha) in a.as_slice().iter().zip(&monomials) {
            if *k == 0 {
                continue;
            }
            for (bi, &x) in b.iter_mut().zip(alpha.as_slice()) {
                *bi += Rational::from_integer(BigInt::from(k * x));
            }
            for j in 2..=*k as i64 {
                a_fact *= j;
            }
        }
        let b: Vec<Rational> = b.into_iter().map(|x| x / &four).collect();
        if b.iter().any(is_integer) || !is_integer(&(&b[0] + &b[1])) || !is_integer(&(&b[2] + &b[3])) {
            continue;
        }
        let parity = b[0].numer().div_floor(b[0].denom()) + b[2].numer().div_floor(b[2].denom());
        let sign = if parity.is_even() { 1 } else { -1 };
        let prod = b.iter().map(descending_bracket).fold(Rational::one(), |x, y| x * y);
        terms.push((a, prod * Rational::from_integer(BigInt::from(sign)) / Rational::from_integer(a_fact)));
    }
    SparseSeries::from_terms(Rationals, nvars, Some(truncation as i32), terms)
}
