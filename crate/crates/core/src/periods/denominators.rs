use std::collections::BTreeMap;
use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::fermat::{period_series, BetaIndex, FamilySpec, PeriodSeries};
use crate::error::Result;
use crate::exact::SparseSeries;

pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// Least common denominator of a series and its factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorProfile {
    pub lcm: BigInt,
    pub factorization: BTreeMap<u64, u32>,
    /// Part of `lcm` left after trial division; 1 when the factorization is complete.
    pub unfactored_cofactor: BigInt,
}

impl DenominatorProfile {
    /// `2^85 * 11`, with a trailing `* [cofactor]` when incomplete.
    pub fn render(&self) -> String {
        let mut parts: Vec<String> = self
            .factorization
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        if !self.unfactored_cofactor.is_one() {
            parts.push(format!("[{}]", self.unfactored_cofactor));
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" * ")
        }
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factorization.keys().copied()
    }
}

/// Factors `n > 0` by trial division with divisors up to `bound`.
pub fn trial_factor(n: &BigInt, bound: u64) -> (BTreeMap<u64, u32>, BigInt) {
    assert!(n > &BigInt::zero());
    let mut rest = n.clone();
    let mut factors = BTreeMap::new();
    let mut q: u64 = 2;
    while q <= bound {
        let qq = BigInt::from(q);
        if &qq * &qq > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &qq).is_zero() {
            rest /= &qq;
            e += 1;
        }
        if e > 0 {
            factors.insert(q, e);
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        let q = BigInt::from(q);
        // every divisor below q is gone, so a remainder below q^2 is prime
        if &q * &q > rest {
            let p = rest.to_u64().expect("prime below bound^2 fits in u64");
            *factors.entry(p).or_insert(0) += 1;
            rest = BigInt::one();
        }
    }
    (factors, rest)
}

pub fn series_denominator_profile(s: &SparseSeries, bound: u64) -> DenominatorProfile {
    let lcm = s.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let (factorization, unfactored_cofactor) = trial_factor(&lcm, bound);
    DenominatorProfile { lcm, factorization, unfactored_cofactor }
}

pub fn denominator_profile(ps: &PeriodSeries) -> DenominatorProfile {
    series_denominator_profile(&ps.series, DEFAULT_TRIAL_BOUND)
}

/// One row of the denominator table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub beta: BetaIndex,
    pub profile: DenominatorProfile,
}

impl TableRow {
    pub fn monomial(&self) -> String {
        self.beta.monomial()
    }
}

pub fn denominator_table(spec: &FamilySpec, betas: &[BetaIndex], bound: u64) -> Result<Vec<TableRow>> {
    betas
        .par_iter()
        .map(|beta| {
            let ps = period_series(beta, spec)?;
            Ok(TableRow { beta: beta.clone(), profile: series_denominator_profile(&ps.series, bound) })
        })
        .collect()
}

pub const TABLE_HEADER: &str = "monomial,pole_order,lcm,factorization";

pub fn render_table(rows: &[TableRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{TABLE_HEADER}").unwrap();
    for r in rows {
        writeln!(out, "{},{},{},{}", r.monomial(), r.beta.pole_order(), r.profile.lcm, r.profile.render()).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int, ExponentVec, Rationals};

    #[test]
    fn small_profiles() {
        let s = SparseSeries::from_terms(Rationals, 1, Some(1), [(ExponentVec::from([0]), int(1)), (ExponentVec::from([1]), frac(-1, 2))]);
        let p = series_denominator_profile(&s, DEFAULT_TRIAL_BOUND);
        assert_eq!(p.lcm, BigInt::from(2));
        assert_eq!(p.factorization, BTreeMap::from([(2, 1)]));
        assert_eq!(p.render(), "2");

        let empty = SparseSeries::from_terms(Rationals, 1, Some(3), []);
        let p = series_denominator_profile(&empty, DEFAULT_TRIAL_BOUND);
        assert_eq!(p.lcm, BigInt::one());
        assert!(p.factorization.is_empty());
        assert_eq!(p.render(), "1");
    }

    #[test]
    fn trial_division_reports_leftovers() {
        let n = BigInt::from(2u64.pow(10) * 1_000_003);
        // no divisor up to 1000 and below 1001^2, hence prime
        let (f, rest) = trial_factor(&n, 1000);
        assert_eq!(f, BTreeMap::from([(2, 10), (1_000_003, 1)]));
        assert!(rest.is_one());

        // 1000003 * 1000033 > bound^2 for bound 1000, both primes above bound
        let (f, rest) = trial_factor(&BigInt::from(1_000_003u64 * 1_000_033), 1000);
        assert!(f.is_empty());
        assert_eq!(rest, BigInt::from(1_000_003u64 * 1_000_033));

        let (f, rest) = trial_factor(&BigInt::from(2 * 3 * 3 * 97), DEFAULT_TRIAL_BOUND);
        assert_eq!(f, BTreeMap::from([(2, 1), (3, 2), (97, 1)]));
        assert!(rest.is_one());
    }
}
