#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use leafscheme::exact::{int, ExponentVec, Poly, Polynomial, Rationals};
use leafscheme::foliation::{identity, poly_mat_mul, FormMatrix, HodgeBlocks, OneForm, PolyContext, PolyMatrix, VectorField};

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Polynomial with up to `nterms` terms of degree `<= deg` and coefficients in `[-3, 3]`.
pub fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, deg: u32, nterms: usize) -> Polynomial {
    let monos = ExponentVec::all_up_to(nvars, deg);
    let terms: Vec<(ExponentVec, _)> =
        (0..nterms).map(|_| (monos[rng.gen_range(0..monos.len())].clone(), int(rng.gen_range(-3..=3)))).collect();
    Poly::from_terms(Rationals, nvars, None, terms)
}

pub fn random_field(rng: &mut ChaCha8Rng, ctx: &Arc<PolyContext>, deg: u32) -> VectorField {
    let comps = (0..ctx.nvars()).map(|_| random_poly(rng, ctx.nvars(), deg, 3)).collect();
    VectorField::new(ctx.clone(), comps).unwrap()
}

pub fn random_form(rng: &mut ChaCha8Rng, ctx: &Arc<PolyContext>, deg: u32) -> OneForm {
    let comps = (0..ctx.nvars()).map(|_| random_poly(rng, ctx.nvars(), deg, 3)).collect();
    OneForm::new(ctx.clone(), comps).unwrap()
}

/// Inverse of `I + N` for nilpotent `N`: `sum_k (-N)^k`.
pub fn unipotent_inverse(y: &PolyMatrix, nvars: usize) -> PolyMatrix {
    let n = y.len();
    let id = identity(&Rationals, nvars, n);
    let minus_n: PolyMatrix = y
        .iter()
        .zip(&id)
        .map(|(r, i)| r.iter().zip(i).map(|(a, b)| b - a).collect())
        .collect();
    let mut acc = id.clone();
    let mut power = id;
    for _ in 1..n {
        power = poly_mat_mul(&power, &minus_n);
        acc = acc.iter().zip(&power).map(|(r, s)| r.iter().zip(s).map(|(a, b)| a + b).collect()).collect();
    }
    acc
}

/// Unit triangular matrix with random polynomial entries on one side of the diagonal.
pub fn random_unipotent(rng: &mut ChaCha8Rng, n: usize, nvars: usize, deg: u32, upper: bool) -> PolyMatrix {
    let mut y = identity(&Rationals, nvars, n);
    for i in 0..n {
        for j in 0..n {
            if (upper && j > i) || (!upper && j < i) {
                y[i][j] = random_poly(rng, nvars, deg, 2);
            }
        }
    }
    y
}

/// `B = dY Y^-1` for a random unipotent `Y`; returns `(Y, B)`.
pub fn random_flat_connection(rng: &mut ChaCha8Rng, ctx: &Arc<PolyContext>, n: usize, deg: u32) -> (PolyMatrix, FormMatrix) {
    let y = random_unipotent(rng, n, ctx.nvars(), deg, true);
    let yinv = unipotent_inverse(&y, ctx.nvars());
    let b = FormMatrix::differential(ctx.clone(), Rationals, &y).unwrap().right_mul(&yinv).unwrap();
    (y, b)
}

/// Integrable, transversal `B` for the given blocks:
/// `B = dY Y^-1 + Y (M(z_0) dz_0) Y^-1` with `Y` unit lower triangular and `M`
/// zero in every block `(i, j)` with `j - i >= 2`, its block `(m/2 - 1, m/2)` nonzero.
pub fn random_transversal_connection(rng: &mut ChaCha8Rng, ctx: &Arc<PolyContext>, blocks: &HodgeBlocks) -> FormMatrix {
    let nv = ctx.nvars();
    let h = blocks.total();
    let y = random_unipotent(rng, h, nv, 1, false);
    let yinv = unipotent_inverse(&y, nv);
    let block_of = |r: usize| (0..blocks.sizes().len()).find(|&q| blocks.range(q).contains(&r)).unwrap();
    let mut m = vec![vec![Poly::zero(Rationals, nv); h]; h];
    let z0 = Polynomial::var(Rationals, nv, 0);
    for i in 0..h {
        for j in 0..h {
            if block_of(j) <= block_of(i) + 1 {
                // function of z_0 alone keeps M dz_0 closed
                let a = int(rng.gen_range(-2..=2));
                let b = int(rng.gen_range(-2..=2));
                m[i][j] = &Poly::constant(Rationals, nv, a) + &z0.scale(&b);
            }
        }
    }
    let mid = blocks.weight() as usize / 2;
    if mid >= 1 {
        let (r, c) = (blocks.range(mid - 1).start, blocks.range(mid).start);
        if m[r][c].is_zero() {
            m[r][c] = Poly::one(Rationals, nv);
        }
    }
    let mut comps = vec![vec![vec![Poly::zero(Rationals, nv); h]; h]; nv];
    comps[0] = poly_mat_mul(&poly_mat_mul(&y, &m), &yinv);
    let gauge = FormMatrix::from_components(ctx.clone(), Rationals, &comps).unwrap();
    FormMatrix::differential(ctx.clone(), Rationals, &y)
        .unwrap()
        .right_mul(&yinv)
        .unwrap()
        .try_add(&gauge)
        .unwrap()
}

/// `Y(z) Y(0)^-1` truncated at total degree `order`.
pub fn normalized_truncation(y: &PolyMatrix, nvars: usize, order: i32) -> PolyMatrix {
    let y0: PolyMatrix = y
        .iter()
        .map(|r| r.iter().map(|f| Poly::constant(Rationals, nvars, f.constant_term())).collect())
        .collect();
    let y0inv = unipotent_inverse(&y0, nvars);
    poly_mat_mul(y, &y0inv).into_iter().map(|r| r.into_iter().map(|f| f.truncate(order)).collect()).collect()
}
