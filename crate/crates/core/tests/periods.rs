use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use leafscheme::exact::{frac, int, ExponentVec, Rational, Rationals, SparseSeries};
use leafscheme::periods::*;

const QUARTIC_TABLE: [(&str, &str); 21] = [
    ("1", "2^84 * 5 * 7 * 11 * 13"),
    ("x2^2*x3^2", "2^86 * 7 * 11 * 13"),
    ("x1*x2*x3^2", "2^84 * 11"),
    ("x0*x2*x3^2", "2^85 * 7 * 11 * 13"),
    ("x1^2*x3^2", "2^86 * 11 * 13"),
    ("x0*x1*x3^2", "2^86 * 7 * 11 * 13"),
    ("x0^2*x3^2", "2^86 * 7 * 11 * 13"),
    ("x1*x2^2*x3", "2^85 * 7 * 11 * 13"),
    ("x0*x2^2*x3", "2^85 * 7 * 11 * 13"),
    ("x1^2*x2*x3", "2^86 * 7 * 11 * 13"),
    ("x0*x1*x2*x3", "2^85 * 11"),
    ("x0^2*x2*x3", "2^86 * 11"),
    ("x0*x1^2*x3", "2^84 * 11"),
    ("x0^2*x1*x3", "2^85 * 7 * 11 * 13"),
    ("x1^2*x2^2", "2^86 * 7 * 11 * 13"),
    ("x0*x1*x2^2", "2^86 * 11"),
    ("x0^2*x2^2", "2^86 * 11 * 13"),
    ("x0*x1^2*x2", "2^85 * 7 * 11 * 13"),
    ("x0^2*x1*x2", "2^85 * 7 * 11 * 13"),
    ("x0^2*x1^2", "2^86 * 7 * 11 * 13"),
    ("x0^2*x1^2*x2^2*x3^2", "2^88 * 7 * 11 * 13"),
];

#[test]
fn quartic_table_at_order_30() {
    let spec = FamilySpec::new(2, 4, quartic_cyclic_monomials(), 30).unwrap();
    let rows = denominator_table(&spec, &griffiths_basis(4, 2), DEFAULT_TRIAL_BOUND).unwrap();
    let got: Vec<(String, String)> = rows.iter().map(|r| (r.monomial(), r.profile.render())).collect();
    let want: Vec<(String, String)> = QUARTIC_TABLE.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    assert_eq!(got, want);
    for r in &rows {
        assert!(r.profile.unfactored_cofactor.is_one());
        assert!(r.profile.primes().all(|p| [2, 5, 7, 11, 13].contains(&p)));
    }
}

#[test]
fn rendered_table_is_stable() {
    let spec = FamilySpec::new(2, 4, quartic_cyclic_monomials(), 8).unwrap();
    let betas = griffiths_basis(4, 2);
    let a = render_table(&denominator_table(&spec, &betas, DEFAULT_TRIAL_BOUND).unwrap());
    let b = render_table(&denominator_table(&spec, &betas, DEFAULT_TRIAL_BOUND).unwrap());
    assert_eq!(a, b);
    assert!(a.starts_with(TABLE_HEADER));
    assert_eq!(a.lines().count(), 22);
}

#[test]
fn zero_truncation_gives_unit_denominators() {
    let spec = FamilySpec::new(2, 4, quartic_cyclic_monomials(), 0).unwrap();
    for r in denominator_table(&spec, &griffiths_basis(4, 2), DEFAULT_TRIAL_BOUND).unwrap() {
        assert_eq!(r.profile.render(), "1");
    }
}

#[test]
fn eq1_matches_general_engine() {
    for trunc in 0..=3 {
        let spec = FamilySpec::new(2, 4, degree_monomials(4, 4), trunc).unwrap();
        let beta = BetaIndex::new(ExponentVec::zero(4), 4).unwrap();
        let general = period_series(&beta, &spec).unwrap().series;
        let direct = eq1_series(trunc);
        assert_eq!(general, direct, "truncation {trunc}");
    }
    let s = eq1_series(3);
    let mons = degree_monomials(4, 4);
    let pos = |m: [i32; 4]| mons.iter().position(|x| x.as_slice() == m).unwrap();
    let mut e = vec![0; 35];
    e[pos([1, 1, 1, 1])] = 1;
    assert_eq!(s.coeff(&ExponentVec::new(e.clone())), int(1));
    e[pos([4, 0, 0, 0])] = 1;
    assert_eq!(s.coeff(&ExponentVec::new(e)), frac(-1, 2));
}

#[test]
fn griffiths_counts_match_generating_function() {
    // coefficients of prod_i (1 + z + ... + z^(d-2)) at z^(kd - n - 2)
    for d in 2..=6u32 {
        for n in [0u32, 2, 4] {
            let len = n as usize + 2;
            let mut poly = vec![BigInt::one()];
            for _ in 0..len {
                let mut next = vec![BigInt::zero(); poly.len() + d as usize - 2];
                for (i, c) in poly.iter().enumerate() {
                    for j in 0..=(d as usize - 2) {
                        next[i + j] += c;
                    }
                }
                poly = next;
            }
            let basis = griffiths_basis(d, n);
            let mut by_k: BTreeMap<u32, usize> = BTreeMap::new();
            for b in &basis {
                *by_k.entry(b.pole_order()).or_default() += 1;
            }
            for k in 1..=(n + 2) {
                let idx = (k * d) as i64 - len as i64;
                let want = if idx >= 0 && (idx as usize) < poly.len() { poly[idx as usize].clone() } else { BigInt::zero() };
                let got = BigInt::from(*by_k.get(&k).unwrap_or(&0));
                assert_eq!(got, want, "d={d} n={n} k={k}");
            }
        }
    }
}

fn flip_signs(s: &SparseSeries, flips: &[bool]) -> SparseSeries {
    let terms = s.terms().map(|(e, c)| {
        let odd = e.as_slice().iter().zip(flips).filter(|(&k, &f)| f && k % 2 != 0).count() % 2 == 1;
        (e.clone(), if odd { -c.clone() } else { c.clone() })
    });
    SparseSeries::from_terms(Rationals, s.nvars(), s.truncation(), terms)
}

fn small_family() -> impl Strategy<Value = (FamilySpec, BetaIndex)> {
    (3u32..=5, 1usize..=3, 0u32..=5).prop_flat_map(|(d, count, trunc)| {
        let mons = degree_monomials(4, d);
        let betas = griffiths_basis(d, 2);
        (
            proptest::collection::btree_set(0..mons.len(), count),
            0..betas.len(),
            Just((d, trunc, mons, betas)),
        )
            .prop_map(|(picks, bi, (d, trunc, mons, betas))| {
                let chosen: Vec<ExponentVec> = picks.into_iter().map(|i| mons[i].clone()).collect();
                (FamilySpec::new(2, d, chosen, trunc).unwrap(), betas[bi].clone())
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nonzero_terms_satisfy_pairing((spec, beta) in small_family()) {
        let ps = period_series(&beta, &spec).unwrap();
        for (a, c) in ps.series.terms() {
            let check = beta.beta().add(&a_star(a, &spec));
            prop_assert!(condition20(&check, spec.d(), spec.n()));
            prop_assert!(check.as_slice().iter().all(|&b| (b + 1) % spec.d() as i32 != 0));
            prop_assert_eq!(c.clone(), period_coefficient(a, &beta, &spec));
            let bound = denominator_bound(a, &beta, &spec);
            prop_assert!((bound % c.denom()).is_zero());
        }
        // every tuple the closed form makes nonzero is present
        for a in ExponentVec::all_up_to(spec.monomials().len(), spec.truncation()) {
            let c = period_coefficient(&a, &beta, &spec);
            prop_assert_eq!(ps.series.coeff(&a), c);
        }
    }

    #[test]
    fn sign_flips_keep_denominators((spec, beta) in small_family(), mask in proptest::collection::vec(any::<bool>(), 3)) {
        let ps = period_series(&beta, &spec).unwrap();
        let flipped = flip_signs(&ps.series, &mask);
        for ((e1, c1), (e2, c2)) in ps.series.terms().zip(flipped.terms()) {
            prop_assert_eq!(e1, e2);
            prop_assert!(c1 == c2 || *c1 == -c2.clone());
        }
        prop_assert_eq!(
            series_denominator_profile(&ps.series, DEFAULT_TRIAL_BOUND),
            series_denominator_profile(&flipped, DEFAULT_TRIAL_BOUND)
        );
    }

    #[test]
    fn beta_zero_has_no_constant_term((spec, _) in small_family()) {
        let beta = BetaIndex::new(ExponentVec::zero(4), spec.d());
        if let Ok(beta) = beta {
            let ps = period_series(&beta, &spec).unwrap();
            prop_assert_eq!(ps.series.constant_term(), Rational::zero());
        }
    }
}
