use std::collections::BTreeMap;
use std::sync::Arc;

use super::context::{same, PolyContext};
use super::forms::{OneForm, VectorField};
use super::pcurv::vf_pow_p;
use crate::error::{Error, Result};
use crate::exact::linalg::{rref, solve};
use crate::exact::{ExponentVec, Field, Poly, PrimeField, Rationals};

/// Outcome of a degree-bounded search: a found certificate, or no conclusion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    Unknown,
}

/// Generators of a polynomial ideal; no generators means the zero ideal.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealGens<K: Field = Rationals> {
    ctx: Arc<PolyContext>,
    gens: Vec<Poly<K>>,
}

impl<K: Field> IdealGens<K> {
    pub fn new(ctx: Arc<PolyContext>, gens: Vec<Poly<K>>) -> Result<Self> {
        for g in &gens {
            ctx.admits(g)?;
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Self { ctx, gens })
    }

    pub fn zero(ctx: Arc<PolyContext>) -> Self {
        Self { ctx, gens: Vec::new() }
    }

    pub fn ctx(&self) -> &Arc<PolyContext> {
        &self.ctx
    }

    pub fn gens(&self) -> &[Poly<K>] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Whether every generator vanishes at `t`.
    pub fn vanishes_at(&self, t: &[K::Elem]) -> Result<bool> {
        for g in &self.gens {
            if !g.field().is_zero(&g.eval(t)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn try_map_field<L: Field>(&self, target: L, mut map: impl FnMut(&K::Elem) -> Result<L::Elem>) -> Result<IdealGens<L>> {
        let gens = self.gens.iter().map(|g| g.try_map_field(target.clone(), &mut map)).collect::<Result<Vec<_>>>()?;
        IdealGens::new(self.ctx.clone(), gens)
    }

    fn max_degree(&self) -> i64 {
        self.gens.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }
}

impl IdealGens<Rationals> {
    pub fn mod_reduce(&self, field: PrimeField) -> Result<IdealGens<PrimeField>> {
        self.try_map_field(field, |c| field.reduce(c))
    }
}

/// Linear system whose unknowns are the coefficients of `columns` and whose
/// equations compare monomial coefficients, one block per entry of each column.
fn coefficient_system<K: Field>(field: &K, columns: &[Vec<Poly<K>>], rhs: Option<&[Poly<K>]>) -> (Vec<Vec<K::Elem>>, Vec<K::Elem>) {
    let mut rows: BTreeMap<(usize, ExponentVec), usize> = BTreeMap::new();
    let key = |b: usize, e: &ExponentVec, rows: &mut BTreeMap<(usize, ExponentVec), usize>| {
        let n = rows.len();
        *rows.entry((b, e.clone())).or_insert(n)
    };
    for col in columns {
        for (b, f) in col.iter().enumerate() {
            for (e, _) in f.terms() {
                key(b, e, &mut rows);
            }
        }
    }
    if let Some(r) = rhs {
        for (b, f) in r.iter().enumerate() {
            for (e, _) in f.terms() {
                key(b, e, &mut rows);
            }
        }
    }
    let mut m = vec![vec![field.zero(); columns.len()]; rows.len()];
    for (j, col) in columns.iter().enumerate() {
        for (b, f) in col.iter().enumerate() {
            for (e, c) in f.terms() {
                m[rows[&(b, e.clone())]][j] = c.clone();
            }
        }
    }
    let mut v = vec![field.zero(); rows.len()];
    if let Some(r) = rhs {
        for (b, f) in r.iter().enumerate() {
            for (e, c) in f.terms() {
                v[rows[&(b, e.clone())]] = c.clone();
            }
        }
    }
    (m, v)
}

fn monomials_up_to<K: Field>(field: &K, nvars: usize, deg: u32) -> Vec<Poly<K>> {
    ExponentVec::all_up_to(nvars, deg).into_iter().map(|e| Poly::monomial(field.clone(), e, field.one())).collect()
}

/// Decides `f = sum_i c_i g_i` with every cofactor of degree `<= deg`.
pub fn ideal_membership_bounded<K: Field>(f: &Poly<K>, ideal: &IdealGens<K>, deg: u32) -> Result<Verdict> {
    ideal.ctx.admits(f)?;
    if f.is_zero() {
        return Ok(Verdict::Yes);
    }
    if ideal.gens.is_empty() {
        return Ok(Verdict::Unknown);
    }
    let field = f.field().clone();
    let monos = monomials_up_to(&field, f.nvars(), deg);
    let columns: Vec<Vec<Poly<K>>> =
        ideal.gens.iter().flat_map(|g| monos.iter().map(move |m| vec![g * m])).collect();
    let (m, v) = coefficient_system(&field, &columns, Some(std::slice::from_ref(f)));
    Ok(match solve(&field, &m, &v, columns.len()) {
        Some(_) => Verdict::Yes,
        None => Verdict::Unknown,
    })
}

fn check_forms<K: Field>(ctx: &Arc<PolyContext>, omega: &[OneForm<K>]) -> Result<()> {
    omega.iter().try_for_each(|w| same(ctx, w.ctx()))
}

/// Basis of the vector fields with component degrees `<= deg` annihilating
/// every form in `omega`.
pub fn dual_theta_bounded<K: Field>(ctx: &Arc<PolyContext>, field: &K, omega: &[OneForm<K>], deg: u32) -> Result<Vec<VectorField<K>>> {
    theta_tl_bounded(ctx, field, omega, &IdealGens::zero(ctx.clone()), deg, 0)
}

/// Basis of the vector fields `v` with component degrees `<= deg` such that
/// `w(v)` lies in `ideal` for every `w` in `omega`, certified with cofactors
/// of degree `<= cofactor_deg`. With the zero ideal this is the annihilator.
pub fn theta_tl_bounded<K: Field>(
    ctx: &Arc<PolyContext>,
    field: &K,
    omega: &[OneForm<K>],
    ideal: &IdealGens<K>,
    deg: u32,
    cofactor_deg: u32,
) -> Result<Vec<VectorField<K>>> {
    check_forms(ctx, omega)?;
    same(ctx, &ideal.ctx)?;
    let n = ctx.nvars();
    let monos = monomials_up_to(field, n, deg);
    let mut columns: Vec<Vec<Poly<K>>> = Vec::new();
    for i in 0..n {
        for m in &monos {
            columns.push(omega.iter().map(|w| w.comp(i) * m).collect());
        }
    }
    let nv = columns.len();
    let cofactor_monos = monomials_up_to(field, n, cofactor_deg);
    for k in 0..omega.len() {
        for g in &ideal.gens {
            for m in &cofactor_monos {
                let mut col: Vec<Poly<K>> = (0..omega.len()).map(|_| Poly::zero(field.clone(), n)).collect();
                col[k] = -(g * m);
                columns.push(col);
            }
        }
    }
    let (m, _) = coefficient_system(field, &columns, None);
    let kernel = field.nullspace(&m, columns.len());
    let mut projected: Vec<Vec<K::Elem>> = kernel.into_iter().map(|v| v[..nv].to_vec()).collect();
    let pivots = rref(field, &mut projected, nv);
    Ok(projected
        .into_iter()
        .take(pivots.len())
        .map(|coeffs| {
            let comps = (0..n)
                .map(|i| {
                    let terms = monos
                        .iter()
                        .zip(&coeffs[i * monos.len()..(i + 1) * monos.len()])
                        .flat_map(|(mono, c)| mono.terms().map(move |(e, _)| (e.clone(), c.clone())).collect::<Vec<_>>());
                    Poly::from_terms(field.clone(), n, None, terms)
                })
                .collect();
            VectorField::new(ctx.clone(), comps).expect("components built in context")
        })
        .collect())
}

/// `YES` when `w(v)` is certified to lie in `ideal` for every `w` in `omega`
/// (the zero ideal asks for `w(v) = 0` exactly).
pub fn tangency_check<K: Field>(v: &VectorField<K>, omega: &[OneForm<K>], ideal: &IdealGens<K>, deg: u32) -> Result<Verdict> {
    check_forms(v.ctx(), omega)?;
    same(v.ctx(), &ideal.ctx)?;
    for w in omega {
        let f = w.contract(v)?;
        if ideal_membership_bounded(&f, ideal, deg)? == Verdict::Unknown {
            return Ok(Verdict::Unknown);
        }
    }
    Ok(Verdict::Yes)
}

/// [`tangency_check`] for `v^p` with all data reduced modulo `p`.
pub fn pcurvature_tangency(
    v: &VectorField<Rationals>,
    omega: &[OneForm<Rationals>],
    ideal: &IdealGens<Rationals>,
    p: u64,
    deg: u32,
) -> Result<Verdict> {
    let vp = vf_pow_p(v, p)?;
    let field = PrimeField::new(p)?;
    let omega_p = omega.iter().map(|w| w.mod_reduce(field)).collect::<Result<Vec<_>>>()?;
    tangency_check(&vp, &omega_p, &ideal.mod_reduce(field)?, deg)
}

/// Default degree bound for bounded duals: twice the largest generator degree.
pub fn default_degree_bound<K: Field>(omega: &[OneForm<K>], ideal: &IdealGens<K>) -> u32 {
    let m = omega.iter().map(OneForm::max_degree).max().unwrap_or(0).max(ideal.max_degree());
    (2 * m).max(1) as u32
}

fn determinant<K: Field>(m: &[Vec<Poly<K>>], field: &K, nvars: usize) -> Poly<K> {
    match m.len() {
        0 => Poly::one(field.clone(), nvars),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = Poly::zero(field.clone(), nvars);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly<K>>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let t = &m[0][j] * &determinant(&minor, field, nvars);
                acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            acc
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Ideal of the `(a+1) x (a+1)` coordinate minors of the matrix with rows
/// `v, w_1, ..., w_a`: the locus where `v` lies in the span of the `w_i`.
pub fn sch_ideal<K: Field>(v: &VectorField<K>, ws: &[VectorField<K>]) -> Result<IdealGens<K>> {
    if ws.is_empty() {
        return Err(Error::Invalid("at least one spanning field is required".into()));
    }
    ws.iter().try_for_each(|w| same(v.ctx(), w.ctx()))?;
    let ctx = v.ctx().clone();
    let n = ctx.nvars();
    let size = ws.len() + 1;
    if size > n {
        return Ok(IdealGens::zero(ctx));
    }
    let field = v.comp(0).field().clone();
    let rows: Vec<&VectorField<K>> = std::iter::once(v).chain(ws.iter()).collect();
    let mut gens: Vec<Poly<K>> = Vec::new();
    for cols in combinations(n, size) {
        let m: Vec<Vec<Poly<K>>> = rows.iter().map(|r| cols.iter().map(|&c| r.comp(c).clone()).collect()).collect();
        let det = determinant(&m, &field, n);
        if !det.is_zero() && !gens.contains(&det) {
            gens.push(det);
        }
    }
    IdealGens::new(ctx, gens)
}

pub fn sch_contains_point<K: Field>(v: &VectorField<K>, ws: &[VectorField<K>], t: &[K::Elem]) -> Result<bool> {
    sch_ideal(v, ws)?.vanishes_at(t)
}
