use std::sync::Arc;

use super::context::{same, PolyContext};
use super::forms::{OneForm, TwoForm};
use crate::error::{Error, Result};
use crate::exact::{Field, Poly, Rationals};

/// Rectangular matrix of functions.
pub type PolyMatrix<K = Rationals> = Vec<Vec<Poly<K>>>;
/// Rectangular matrix of 2-forms.
pub type TwoFormMatrix<K = Rationals> = Vec<Vec<TwoForm<K>>>;

/// Rectangular matrix of 1-forms, such as a connection matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FormMatrix<K: Field = Rationals> {
    ctx: Arc<PolyContext>,
    field: K,
    rows: Vec<Vec<OneForm<K>>>,
    ncols: usize,
}

pub fn identity<K: Field>(field: &K, nvars: usize, n: usize) -> PolyMatrix<K> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Poly::one(field.clone(), nvars) } else { Poly::zero(field.clone(), nvars) })
                .collect()
        })
        .collect()
}

pub fn poly_mat_mul<K: Field>(a: &PolyMatrix<K>, b: &PolyMatrix<K>) -> PolyMatrix<K> {
    let inner = b.len();
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "inner dimensions differ");
            (0..b.first().map_or(0, Vec::len))
                .map(|j| {
                    let mut acc = Poly::zero(row[0].field().clone(), row[0].nvars());
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(&row[k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

impl<K: Field> FormMatrix<K> {
    pub fn new(ctx: Arc<PolyContext>, field: K, rows: Vec<Vec<OneForm<K>>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        for row in &rows {
            if row.len() != ncols {
                return Err(Error::Invalid("ragged form matrix".into()));
            }
            for w in row {
                same(&ctx, w.ctx())?;
            }
        }
        Ok(Self { ctx, field, rows, ncols })
    }

    pub fn zero(ctx: Arc<PolyContext>, field: K, nrows: usize, ncols: usize) -> Self {
        let rows = (0..nrows).map(|_| (0..ncols).map(|_| OneForm::zero(ctx.clone(), field.clone())).collect()).collect();
        Self { ctx, field, rows, ncols }
    }

    /// `sum_j M_j dz_j` from one function matrix per variable.
    pub fn from_components(ctx: Arc<PolyContext>, field: K, comps: &[PolyMatrix<K>]) -> Result<Self> {
        if comps.len() != ctx.nvars() {
            return Err(Error::VariableCountMismatch(ctx.nvars(), comps.len()));
        }
        let nrows = comps[0].len();
        let ncols = comps[0].first().map_or(0, Vec::len);
        let mut rows = Vec::with_capacity(nrows);
        for i in 0..nrows {
            let mut row = Vec::with_capacity(ncols);
            for j in 0..ncols {
                let c = comps
                    .iter()
                    .map(|m| m.get(i).and_then(|r| r.get(j)).cloned().ok_or_else(|| Error::Invalid("component shapes differ".into())))
                    .collect::<Result<Vec<_>>>()?;
                row.push(OneForm::new(ctx.clone(), c)?);
            }
            rows.push(row);
        }
        Self::new(ctx, field, rows)
    }

    /// `dP`, entrywise.
    pub fn differential(ctx: Arc<PolyContext>, field: K, p: &PolyMatrix<K>) -> Result<Self> {
        let rows = p
            .iter()
            .map(|r| r.iter().map(|f| OneForm::d(ctx.clone(), f)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, field, rows)
    }

    pub fn ctx(&self) -> &Arc<PolyContext> {
        &self.ctx
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &OneForm<K> {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<OneForm<K>>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(OneForm::is_zero)
    }

    /// Coefficient matrix of `dz_k`.
    pub fn component(&self, k: usize) -> PolyMatrix<K> {
        self.rows.iter().map(|r| r.iter().map(|w| w.comp(k).clone()).collect()).collect()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.try_add(b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.try_sub(b))
    }

    fn zip(&self, other: &Self, f: impl Fn(&OneForm<K>, &OneForm<K>) -> Result<OneForm<K>>) -> Result<Self> {
        same(&self.ctx, &other.ctx)?;
        if self.nrows() != other.nrows() || self.ncols != other.ncols {
            return Err(Error::Invalid("matrix shapes differ".into()));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { rows, ..self.clone() })
    }

    pub fn neg(&self) -> Self {
        Self { rows: self.rows.iter().map(|r| r.iter().map(OneForm::neg).collect()).collect(), ..self.clone() }
    }

    /// `P * self`.
    pub fn left_mul(&self, p: &PolyMatrix<K>) -> Result<Self> {
        let mut rows = Vec::with_capacity(p.len());
        for prow in p {
            if prow.len() != self.nrows() {
                return Err(Error::Invalid("inner dimensions differ".into()));
            }
            let mut row = Vec::with_capacity(self.ncols);
            for j in 0..self.ncols {
                let mut acc = OneForm::zero(self.ctx.clone(), self.field.clone());
                for (k, f) in prow.iter().enumerate() {
                    if !f.is_zero() {
                        acc = acc.try_add(&self.rows[k][j].mul_poly(f))?;
                    }
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Ok(Self { ctx: self.ctx.clone(), field: self.field.clone(), rows, ncols: self.ncols })
    }

    /// `self * P`.
    pub fn right_mul(&self, p: &PolyMatrix<K>) -> Result<Self> {
        if p.len() != self.ncols {
            return Err(Error::Invalid("inner dimensions differ".into()));
        }
        let ncols = p.first().map_or(0, Vec::len);
        let mut rows = Vec::with_capacity(self.nrows());
        for srow in &self.rows {
            let mut row = Vec::with_capacity(ncols);
            for j in 0..ncols {
                let mut acc = OneForm::zero(self.ctx.clone(), self.field.clone());
                for (k, w) in srow.iter().enumerate() {
                    if !p[k][j].is_zero() {
                        acc = acc.try_add(&w.mul_poly(&p[k][j]))?;
                    }
                }
                row.push(acc);
            }
            rows.push(row);
        }
        Ok(Self { ctx: self.ctx.clone(), field: self.field.clone(), rows, ncols })
    }

    /// Entrywise exterior derivative.
    pub fn exterior(&self) -> TwoFormMatrix<K> {
        self.rows.iter().map(|r| r.iter().map(OneForm::exterior).collect()).collect()
    }

    /// `(self ^ other)_ik = sum_j self_ij ^ other_jk`.
    pub fn wedge(&self, other: &Self) -> Result<TwoFormMatrix<K>> {
        same(&self.ctx, &other.ctx)?;
        if self.ncols != other.nrows() {
            return Err(Error::Invalid("inner dimensions differ".into()));
        }
        let mut out = Vec::with_capacity(self.nrows());
        for srow in &self.rows {
            let mut row = Vec::with_capacity(other.ncols);
            for k in 0..other.ncols {
                let mut acc = TwoForm::zero(self.ctx.clone(), self.field.clone());
                for (j, a) in srow.iter().enumerate() {
                    let b = &other.rows[j][k];
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.try_add(&a.wedge(b)?)?;
                    }
                }
                row.push(acc);
            }
            out.push(row);
        }
        Ok(out)
    }

    pub fn try_map_field<L: Field>(&self, target: L, mut map: impl FnMut(&K::Elem) -> Result<L::Elem>) -> Result<FormMatrix<L>> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|w| w.try_map_field(target.clone(), &mut map)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(FormMatrix { ctx: self.ctx.clone(), field: target, rows, ncols: self.ncols })
    }
}

/// `dB - B ^ B`, entrywise.
pub fn integrability_defect<K: Field>(b: &FormMatrix<K>) -> Result<TwoFormMatrix<K>> {
    if b.nrows() != b.ncols() {
        return Err(Error::Invalid(format!("connection matrix must be square, got {}x{}", b.nrows(), b.ncols())));
    }
    let db = b.exterior();
    let bb = b.wedge(b)?;
    db.iter()
        .zip(&bb)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.try_sub(y)).collect::<Result<Vec<_>>>())
        .collect()
}

/// Whether `dB = B ^ B` holds exactly.
pub fn integrability_check<K: Field>(b: &FormMatrix<K>) -> Result<bool> {
    Ok(integrability_defect(b)?.iter().flatten().all(TwoForm::is_zero))
}

pub fn two_form_matrices_equal<K: Field>(a: &TwoFormMatrix<K>, b: &TwoFormMatrix<K>) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    for (r, s) in a.iter().zip(b) {
        if r.len() != s.len() {
            return Ok(false);
        }
        for (x, y) in r.iter().zip(s) {
            if !x.try_sub(y)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, Polynomial};

    #[test]
    fn small_integrability_cases() {
        let ctx = PolyContext::new(["x", "y"]).unwrap();
        assert!(integrability_check(&FormMatrix::zero(ctx.clone(), Rationals, 3, 3)).unwrap());

        let x = ctx.var(Rationals, 0);
        let x_dy = OneForm::new(ctx.clone(), vec![Polynomial::zero(Rationals, 2), x]).unwrap();
        let b = FormMatrix::new(ctx.clone(), Rationals, vec![vec![x_dy]]).unwrap();
        assert!(!integrability_check(&b).unwrap());

        // Y = [[1, x y], [0, 1]], B = dY Y^-1 = [[0, y dx + x dy], [0, 0]]
        let xy = Polynomial::from_rational_terms(2, [(vec![1, 1], int(1))]);
        let y = vec![
            vec![Polynomial::one(Rationals, 2), xy.clone()],
            vec![Polynomial::zero(Rationals, 2), Polynomial::one(Rationals, 2)],
        ];
        let yinv = vec![
            vec![Polynomial::one(Rationals, 2), -&xy],
            vec![Polynomial::zero(Rationals, 2), Polynomial::one(Rationals, 2)],
        ];
        assert_eq!(poly_mat_mul(&y, &yinv), identity(&Rationals, 2, 2));
        let b = FormMatrix::differential(ctx, Rationals, &y).unwrap().right_mul(&yinv).unwrap();
        assert!(integrability_check(&b).unwrap());
        assert!(!b.is_zero());
    }
}
