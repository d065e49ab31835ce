use num_bigint::BigInt;

use super::forms::OneForm;
use super::matrix::{integrability_defect, FormMatrix, PolyMatrix};
use crate::error::{Error, Result};
use crate::exact::{Poly, Rational, Rationals, SparseSeries};

fn hom_mul(a: &PolyMatrix, b: &PolyMatrix, nvars: usize) -> PolyMatrix {
    a.iter()
        .map(|row| {
            (0..b[0].len())
                .map(|j| {
                    let mut acc = Poly::zero(Rationals, nvars);
                    for (k, f) in row.iter().enumerate() {
                        if !f.is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(f * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Fundamental solution `Y` of `dY = B Y` with `Y(0) = I`, up to total degree `order`.
///
/// Degree by degree, Euler's identity `sum_j z_j dY/dz_j = k Y_k` on the
/// homogeneous part of degree `k` gives `Y_k = (1/k) [sum_j z_j B_j Y]_k`,
/// where `B = sum_j B_j dz_j`. The recursion is consistent exactly when
/// `dB = B ^ B` holds through degree `order - 2`.
pub fn linear_solve_series(b: &FormMatrix, order: u32) -> Result<PolyMatrix> {
    let n = b.nrows();
    if b.ncols() != n {
        return Err(Error::Invalid(format!("connection matrix must be square, got {}x{}", n, b.ncols())));
    }
    let nvars = b.ctx().nvars();
    for w in b.rows().iter().flatten() {
        if w.comps().iter().any(Poly::has_laurent_terms) {
            return Err(Error::Invalid("expansion point must be regular: Laurent terms in B".into()));
        }
    }
    let d = order as i32;
    if d >= 2 {
        let defect = integrability_defect(b)?;
        for (i, row) in defect.iter().enumerate() {
            for (j, t) in row.iter().enumerate() {
                if !t.truncate(d - 2).is_zero() {
                    return Err(Error::NotIntegrable(format!("dB - B^B has a nonzero entry at ({i}, {j}) below degree {}", d - 1)));
                }
            }
        }
    }

    // homogeneous parts of each B_j, degrees 0..order-1
    let comps: Vec<Vec<PolyMatrix>> = (0..nvars)
        .map(|j| {
            let m = b.component(j);
            (0..order as i64)
                .map(|l| m.iter().map(|r| r.iter().map(|f| f.homogeneous_part(l).into_polynomial()).collect()).collect())
                .collect()
        })
        .collect();

    let zero_mat = || -> PolyMatrix { vec![vec![Poly::zero(Rationals, nvars); n]; n] };
    let mut parts: Vec<PolyMatrix> = vec![super::matrix::identity(&Rationals, nvars, n)];
    for k in 1..=order as usize {
        let mut acc = zero_mat();
        for (j, bj) in comps.iter().enumerate() {
            let zj = Poly::var(Rationals, nvars, j);
            for l in 0..k {
                let prod = hom_mul(&bj[l], &parts[k - 1 - l], nvars);
                for (ar, pr) in acc.iter_mut().zip(&prod) {
                    for (a, p) in ar.iter_mut().zip(pr) {
                        if !p.is_zero() {
                            *a = &*a + &(&zj * p);
                        }
                    }
                }
            }
        }
        let inv = Rational::new(BigInt::from(1), BigInt::from(k));
        parts.push(acc.into_iter().map(|r| r.into_iter().map(|f| f.scale(&inv)).collect()).collect());
    }

    let mut y = zero_mat();
    for part in &parts {
        for (yr, pr) in y.iter_mut().zip(part) {
            for (a, p) in yr.iter_mut().zip(pr) {
                *a = &*a + p;
            }
        }
    }
    let y: PolyMatrix = y
        .into_iter()
        .map(|r| r.into_iter().map(|f| SparseSeries::from_terms(Rationals, nvars, Some(d), f.terms().map(|(e, c)| (e.clone(), c.clone())))).collect())
        .collect();

    let residual = series_residual(b, &y)?;
    if !residual.is_zero() {
        return Err(Error::NotIntegrable("recursion left a nonzero residual".into()));
    }
    Ok(y)
}

/// `dY - B Y`, each entry known through degree `order - 1` of `Y`.
pub fn series_residual(b: &FormMatrix, y: &PolyMatrix) -> Result<FormMatrix> {
    let ctx = b.ctx().clone();
    let dy = FormMatrix::differential(ctx.clone(), Rationals, y)?;
    let by = b.right_mul(y)?;
    let trunc = y.iter().flatten().filter_map(Poly::truncation).min();
    let diff = dy.try_sub(&by)?;
    let rows = diff
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|w| {
                    let comps = w.comps().iter().map(|c| match trunc {
                        Some(t) => c.truncate(t - 1),
                        None => c.clone(),
                    });
                    OneForm::new(ctx.clone(), comps.collect())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FormMatrix::new(ctx, Rationals, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int, ExponentVec};
    use crate::foliation::PolyContext;

    fn factorial(n: i64) -> Rational {
        (1..=n).fold(int(1), |a, k| a * int(k))
    }

    #[test]
    fn scalar_exponential() {
        let ctx = PolyContext::new(["z"]).unwrap();
        let c = frac(3, 2);
        let b = FormMatrix::from_components(ctx, Rationals, &[vec![vec![Poly::constant(Rationals, 1, c.clone())]]]).unwrap();
        let y = linear_solve_series(&b, 7).unwrap();
        for k in 0..=7 {
            let want = num_traits::pow::pow(c.clone(), k as usize) / factorial(k);
            assert_eq!(y[0][0].coeff(&ExponentVec::from([k as i32])), want);
        }
        assert_eq!(y[0][0].len(), 8);
    }

    #[test]
    fn geometric_series() {
        let ctx = PolyContext::new(["z"]).unwrap();
        let order = 9;
        let geo = Poly::from_terms(Rationals, 1, None, (0..order).map(|k| (ExponentVec::from([k]), int(1))));
        let b = FormMatrix::from_components(ctx, Rationals, &[vec![vec![geo]]]).unwrap();
        let y = linear_solve_series(&b, order as u32).unwrap();
        // (1/(1 - z))' = 1/(1 - z)^2
        for k in 0..=order {
            assert_eq!(y[0][0].coeff(&ExponentVec::from([k])), int(1));
        }
        assert!(series_residual(&b, &y).unwrap().is_zero());
    }

    #[test]
    fn commuting_flows() {
        let ctx = PolyContext::new(["z1", "z2"]).unwrap();
        let one = vec![vec![Poly::one(Rationals, 2)]];
        let b = FormMatrix::from_components(ctx, Rationals, &[one.clone(), one]).unwrap();
        let y = linear_solve_series(&b, 6).unwrap();
        for e in ExponentVec::all_up_to(2, 6) {
            let (a, c) = (e.get(0) as i64, e.get(1) as i64);
            assert_eq!(y[0][0].coeff(&e), int(1) / (factorial(a) * factorial(c)));
        }
    }

    #[test]
    fn non_integrable_rejected() {
        let ctx = PolyContext::new(["x", "y"]).unwrap();
        let x = ctx.var(Rationals, 0);
        let b = FormMatrix::from_components(ctx, Rationals, &[vec![vec![Poly::zero(Rationals, 2)]], vec![vec![x]]]).unwrap();
        assert!(matches!(linear_solve_series(&b, 4), Err(Error::NotIntegrable(_))));
    }
}
