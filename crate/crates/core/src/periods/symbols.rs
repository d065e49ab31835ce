use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::exact::Rational;

/// Rising factorial `x (x + 1) ... (x + y - 1)`, with `(x)_0 = 1`.
pub fn pochhammer(x: &Rational, y: u32) -> Rational {
    let mut acc = Rational::one();
    let mut t = x.clone();
    for _ in 0..y {
        acc *= &t;
        t += Rational::one();
    }
    acc
}

/// Floor and fractional part: `r = [r] + {r}` with `0 <= {r} < 1`.
pub fn int_frac(r: &Rational) -> (BigInt, Rational) {
    let fl = r.numer().div_floor(r.denom());
    let rest = r - Rational::from_integer(fl.clone());
    (fl, rest)
}
