mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::Rng;

use common::*;
use leafscheme::exact::{int, Field, Poly, PrimeField, Rationals};
use leafscheme::exact::linalg::rank;
use leafscheme::foliation::*;

fn ctx(n: usize) -> Arc<PolyContext> {
    PolyContext::new((0..n).map(|i| format!("z{i}"))).unwrap()
}

fn same_terms(a: &Poly, b: &Poly) -> bool {
    a.terms().eq(b.terms())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn leibniz(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = ctx(3);
        let v = random_field(&mut r, &c, 2);
        let f = random_poly(&mut r, 3, 3, 4);
        let g = random_poly(&mut r, 3, 3, 4);
        let lhs = v.apply(&(&f * &g)).unwrap();
        let rhs = &(&f * &v.apply(&g).unwrap()) + &(&g * &v.apply(&f).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squared_and_self_wedge_vanish(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = ctx(3);
        let f = random_poly(&mut r, 3, 4, 5);
        prop_assert!(OneForm::d(c.clone(), &f).unwrap().exterior().is_zero());
        let w = random_form(&mut r, &c, 2);
        prop_assert!(w.wedge(&w).unwrap().is_zero());
        let u = random_form(&mut r, &c, 2);
        prop_assert!(w.wedge(&u).unwrap().try_add(&u.wedge(&w).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn frobenius_power_is_a_derivation(seed in any::<u64>(), pi in 0usize..5) {
        let p = [2u64, 3, 5, 7, 11][pi];
        let mut r = rng(seed);
        let c = ctx(2);
        let v = random_field(&mut r, &c, 2);
        let field = PrimeField::new(p).unwrap();
        let vp = vf_pow_p(&v, p).unwrap();
        let f = random_poly(&mut r, 2, 2, 3).mod_reduce(field).unwrap();
        let g = random_poly(&mut r, 2, 2, 3).mod_reduce(field).unwrap();
        let lhs = vp.apply(&(&f * &g)).unwrap();
        let rhs = &(&f * &vp.apply(&g).unwrap()) + &(&g * &vp.apply(&f).unwrap());
        prop_assert_eq!(lhs, rhs);
        // p-fold application agrees with the assembled field
        let vm = v.mod_reduce(field).unwrap();
        prop_assert_eq!(iterate(&vm, &f, p).unwrap(), vp.apply(&f).unwrap());
    }

    #[test]
    fn dual_fields_annihilate(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = ctx(3);
        let omega = vec![random_form(&mut r, &c, 1)];
        for v in dual_theta_bounded(&c, &Rationals, &omega, 1).unwrap() {
            prop_assert!(!v.is_zero());
            for w in &omega {
                prop_assert!(w.contract(&v).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn sch_matches_rank(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = ctx(3);
        let a = r.gen_range(1..=2);
        let v = random_field(&mut r, &c, 1);
        let ws: Vec<VectorField> = (0..a).map(|_| random_field(&mut r, &c, 1)).collect();
        let ideal = sch_ideal(&v, &ws).unwrap();
        for _ in 0..8 {
            let t: Vec<_> = (0..3).map(|_| int(r.gen_range(-1..=1))).collect();
            let rows: Vec<Vec<_>> = std::iter::once(&v).chain(&ws).map(|f| f.eval(&t).unwrap()).collect();
            let low_rank = rank(&Rationals, &rows, 3) <= a;
            prop_assert_eq!(ideal.vanishes_at(&t).unwrap(), low_rank);
        }
    }

    #[test]
    fn membership_of_constructed_combinations(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = ctx(2);
        let gens: Vec<Poly> = (0..2).map(|_| random_poly(&mut r, 2, 2, 2)).collect();
        let ideal = IdealGens::new(c, gens.clone()).unwrap();
        let f = gens.iter().fold(Poly::zero(Rationals, 2), |acc, g| &acc + &(g * &random_poly(&mut r, 2, 1, 2)));
        prop_assert_eq!(ideal_membership_bounded(&f, &ideal, 1).unwrap(), Verdict::Yes);
    }
}

#[test]
fn frobenius_power_identities() {
    let c = ctx(1);
    let x = c.var(Rationals, 0);
    for p in [2u64, 3, 5, 7, 11] {
        let f = PrimeField::new(p).unwrap();
        assert!(vf_pow_p(&VectorField::basis(c.clone(), Rationals, 0), p).unwrap().is_zero());
        let e = VectorField::new(c.clone(), vec![x.clone()]).unwrap();
        assert_eq!(vf_pow_p(&e, p).unwrap(), e.mod_reduce(f).unwrap());
        assert_eq!(f.modulus(), p);
        assert!(!f.is_zero(&f.one()));
    }
}

#[test]
fn solver_reproduces_unipotent_fundamental_matrix() {
    let c = ctx(2);
    for seed in 0..10 {
        let mut r = rng(seed);
        let (y, b) = random_flat_connection(&mut r, &c, 3, 2);
        assert!(integrability_check(&b).unwrap());
        let sol = linear_solve_series(&b, 8).unwrap();
        let again = linear_solve_series(&b, 8).unwrap();
        assert_eq!(sol, again);
        let want = normalized_truncation(&y, 2, 8);
        for (sr, wr) in sol.iter().zip(&want) {
            for (s, w) in sr.iter().zip(wr) {
                assert!(same_terms(s, w), "seed {seed}");
            }
        }
        assert!(series_residual(&b, &sol).unwrap().is_zero());
    }
}

#[test]
fn gauss_manin_identities_on_random_transversal_connections() {
    let c = ctx(2);
    let blocks = HodgeBlocks::new(vec![1, 2, 1]).unwrap();
    for seed in 0..6 {
        let mut r = rng(100 + seed);
        let b = random_transversal_connection(&mut r, &c, &blocks);
        assert!(integrability_check(&b).unwrap());
        check_transversality(&b, &blocks).unwrap();
        let eqs = prop25_forms(&b, &blocks).unwrap();
        let asm = &eqs.assembly;
        assert!(asm.inverse_holds());
        assert!(asm.flatness_holds().unwrap());
        assert!(asm.foliation_integrable().unwrap());
        assert!(eqs.spans_agree().unwrap());
        assert_eq!(eqs.ivhs.len(), 1);
        assert_eq!(eqs.ivhs_block().len(), 1);
        assert_eq!(eqs.ivhs_block()[0].len(), 2);
    }
}

#[test]
fn non_integrable_connection_breaks_flatness() {
    let c = ctx(2);
    let blocks = HodgeBlocks::new(vec![1, 1, 1]).unwrap();
    let z0 = c.var(Rationals, 0);
    let mut comps = vec![vec![vec![Poly::zero(Rationals, 2); 3]; 3]; 2];
    comps[1][0][1] = z0;
    let b = FormMatrix::from_components(c, Rationals, &comps).unwrap();
    assert!(!integrability_check(&b).unwrap());
    let asm = gm_assemble(&b, &blocks).unwrap();
    assert!(!asm.flatness_holds().unwrap());
}

#[test]
fn weight_four_blocks() {
    let c = ctx(2);
    let blocks = HodgeBlocks::new(vec![1, 1, 2, 1, 1]).unwrap();
    let mut r = rng(7);
    let b = random_transversal_connection(&mut r, &c, &blocks);
    assert!(integrability_check(&b).unwrap());
    let eqs = prop25_forms(&b, &blocks).unwrap();
    assert!(eqs.assembly.flatness_holds().unwrap());
    assert!(eqs.assembly.foliation_integrable().unwrap());
    assert!(eqs.spans_agree().unwrap());
    assert_eq!(eqs.assembly.x.len(), 6);
    assert_eq!(blocks.x_count(), 4);
    assert_eq!(eqs.ivhs.len(), 1);
}

#[test]
fn remark_two_suite() {
    let c = PolyContext::new(["x", "y"]).unwrap();
    let x = c.var(Rationals, 0);
    let y = c.var(Rationals, 1);
    let w = OneForm::new(c.clone(), vec![y.clone(), x.clone()]).unwrap();
    let theta = dual_theta_bounded(&c, &Rationals, std::slice::from_ref(&w), 1).unwrap();
    let target = VectorField::new(c.clone(), vec![x.clone(), -&y]).unwrap();
    assert_eq!(theta, vec![target]);

    let xy_ideal = IdealGens::new(c.clone(), vec![&x * &y]).unwrap();
    let x_dx = VectorField::new(c.clone(), vec![x.clone(), Poly::zero(Rationals, 2)]).unwrap();
    assert_eq!(tangency_check(&x_dx, std::slice::from_ref(&w), &xy_ideal, 1).unwrap(), Verdict::Yes);

    for deg in 1..=3 {
        let theta = dual_theta_bounded(&c, &Rationals, std::slice::from_ref(&w), deg).unwrap();
        let theta_tl = theta_tl_bounded(&c, &Rationals, std::slice::from_ref(&w), &xy_ideal, deg, deg).unwrap();
        assert!(theta_tl.len() > theta.len());
        for v in &theta_tl {
            assert_eq!(v.eval(&[int(0), int(0)]).unwrap(), vec![int(0), int(0)]);
            assert_eq!(tangency_check(v, std::slice::from_ref(&w), &xy_ideal, deg).unwrap(), Verdict::Yes);
        }
        // f * Theta_T lands in Theta_{T,L} for f = xy
        let xy = &x * &y;
        let e = VectorField::basis(c.clone(), Rationals, 0).mul_poly(&xy);
        assert_eq!(tangency_check(&e, std::slice::from_ref(&w), &xy_ideal, deg + 1).unwrap(), Verdict::Yes);
    }
}
