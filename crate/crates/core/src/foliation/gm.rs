use std::ops::Range;
use std::sync::Arc;

use super::context::PolyContext;
use super::forms::OneForm;
use super::matrix::{identity, poly_mat_mul, two_form_matrices_equal, FormMatrix, PolyMatrix};
use crate::error::{Error, Result};
use crate::exact::{ExponentVec, Poly, Rational, Rationals};

/// Hodge numbers `h^{m,0}, ..., h^{0,m}` of an even weight `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeBlocks {
    m: u32,
    sizes: Vec<usize>,
}

impl HodgeBlocks {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.len().is_multiple_of(2) {
            return Err(Error::BlockSizes(format!("{} blocks; an even weight needs an odd count", sizes.len())));
        }
        let m = (sizes.len() - 1) as u32;
        if sizes.iter().zip(sizes.iter().rev()).any(|(a, b)| a != b) {
            return Err(Error::BlockSizes(format!("{sizes:?} is not symmetric")));
        }
        if sizes[m as usize / 2] == 0 {
            return Err(Error::BlockSizes("the middle block must be nonempty".into()));
        }
        Ok(Self { m, sizes })
    }

    pub fn weight(&self) -> u32 {
        self.m
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// `h^{m,0} + ... + h^{i,m-i}`; zero for `i > m`.
    pub fn partial(&self, i: u32) -> usize {
        if i > self.m {
            return 0;
        }
        self.sizes[..=(self.m - i) as usize].iter().sum()
    }

    /// Rows of the block of `h^{m-q,q}`.
    pub fn range(&self, q: usize) -> Range<usize> {
        let start: usize = self.sizes[..q].iter().sum();
        start..start + self.sizes[q]
    }

    /// Number of coordinates of the vector `x`.
    pub fn x_count(&self) -> usize {
        self.total() - self.partial(self.m / 2 + 1)
    }

    /// Index of the column of the identity replaced by `x`.
    pub fn x_column(&self) -> usize {
        self.partial(self.m / 2 + 1)
    }
}

/// The data of the foliation attached to a connection matrix `B`.
#[derive(Debug, Clone)]
pub struct GmAssembly {
    pub ctx: Arc<PolyContext>,
    pub blocks: HodgeBlocks,
    /// `B` written in the extended coordinates.
    pub b: FormMatrix,
    pub x: Vec<Poly>,
    pub s: PolyMatrix,
    pub s_inv: PolyMatrix,
    pub c: PolyMatrix,
    pub a: FormMatrix,
    /// Entries of `A C`.
    pub foliation_forms: Vec<OneForm>,
}

fn extended_context(b: &FormMatrix, blocks: &HodgeBlocks) -> Result<(Arc<PolyContext>, FormMatrix)> {
    let h = blocks.total();
    if b.nrows() != h || b.ncols() != h {
        return Err(Error::BlockSizes(format!("B is {}x{} but the blocks sum to {h}", b.nrows(), b.ncols())));
    }
    let base = b.ctx();
    let k = blocks.x_count();
    let names: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    if let Some(n) = names.iter().find(|n| base.index_of(n).is_some()) {
        return Err(Error::Invalid(format!("variable {n} is reserved for the period coordinates")));
    }
    let laurent: Vec<bool> = (0..k).map(|i| i == 0).collect();
    let ctx = base.extend(&names, &laurent)?;
    let nv = base.nvars();
    let positions: Vec<usize> = (0..nv).collect();
    let rows = b
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|w| {
                    let mut comps: Vec<Poly> = w.comps().iter().map(|c| c.embed(ctx.nvars(), &positions)).collect();
                    comps.extend((0..k).map(|_| Poly::zero(Rationals, ctx.nvars())));
                    OneForm::new(ctx.clone(), comps)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let b = FormMatrix::new(ctx.clone(), Rationals, rows)?;
    Ok((ctx, b))
}

fn column(v: Vec<Poly>) -> PolyMatrix {
    v.into_iter().map(|f| vec![f]).collect()
}

/// The vector `x` with zero Hodge blocks above the middle.
fn x_vector(ctx: &Arc<PolyContext>, blocks: &HodgeBlocks) -> Vec<Poly> {
    let nv = ctx.nvars() - blocks.x_count();
    let zeros = blocks.x_column();
    (0..blocks.total())
        .map(|r| if r < zeros { Poly::zero(Rationals, ctx.nvars()) } else { ctx.var(Rationals, nv + r - zeros) })
        .collect()
}

/// `S`, `S^-1` (closed form, `det S = x1`) and `C = e_col`.
fn s_matrices(ctx: &Arc<PolyContext>, blocks: &HodgeBlocks, x: &[Poly]) -> (PolyMatrix, PolyMatrix, PolyMatrix) {
    let n = ctx.nvars();
    let h = blocks.total();
    let col = blocks.x_column();
    let x1 = ctx.nvars() - blocks.x_count();
    let mut inv_x1 = vec![0; n];
    inv_x1[x1] = -1;
    let inv_x1 = Poly::monomial(Rationals, ExponentVec::new(inv_x1), Rational::from_integer(1.into()));

    let mut s = identity(&Rationals, n, h);
    let mut s_inv = identity(&Rationals, n, h);
    for r in 0..h {
        s[r][col] = x[r].clone();
        s_inv[r][col] = match r.cmp(&col) {
            std::cmp::Ordering::Less => Poly::zero(Rationals, n),
            std::cmp::Ordering::Equal => inv_x1.clone(),
            std::cmp::Ordering::Greater => -(&x[r] * &inv_x1),
        };
    }
    let c = column((0..h).map(|r| if r == col { Poly::one(Rationals, n) } else { Poly::zero(Rationals, n) }).collect());
    (s, s_inv, c)
}

/// Builds `A = -S^-1 dS + S^-1 B S` and the foliation given by the entries of `A C`.
pub fn gm_assemble(b: &FormMatrix, blocks: &HodgeBlocks) -> Result<GmAssembly> {
    let (ctx, b) = extended_context(b, blocks)?;
    let x = x_vector(&ctx, blocks);
    let (s, s_inv, c) = s_matrices(&ctx, blocks, &x);
    let ds = FormMatrix::differential(ctx.clone(), Rationals, &s)?;
    let a = b.right_mul(&s)?.left_mul(&s_inv)?.try_sub(&ds.left_mul(&s_inv)?)?;
    let ac = a.right_mul(&c)?;
    let foliation_forms = ac.rows().iter().map(|r| r[0].clone()).collect();
    Ok(GmAssembly { ctx, blocks: blocks.clone(), b, x, s, s_inv, c, a, foliation_forms })
}

impl GmAssembly {
    pub fn ac(&self) -> FormMatrix {
        self.a.right_mul(&self.c).expect("shapes fixed at assembly")
    }

    /// `S S^-1 = I`.
    pub fn inverse_holds(&self) -> bool {
        poly_mat_mul(&self.s, &self.s_inv) == identity(&Rationals, self.ctx.nvars(), self.blocks.total())
    }

    /// `dA = A ^ A`.
    pub fn flatness_holds(&self) -> Result<bool> {
        two_form_matrices_equal(&self.a.exterior(), &self.a.wedge(&self.a)?)
    }

    /// `d(A C) = A ^ (A C)`.
    pub fn foliation_integrable(&self) -> Result<bool> {
        let ac = self.ac();
        two_form_matrices_equal(&ac.exterior(), &self.a.wedge(&ac)?)
    }

    /// Column `dx - B x`.
    pub fn dx_minus_bx(&self) -> Result<FormMatrix> {
        let xc = column(self.x.clone());
        FormMatrix::differential(self.ctx.clone(), Rationals, &xc)?.try_sub(&self.b.right_mul(&xc)?)
    }
}

/// The foliation written block by block in the coordinates `x`.
#[derive(Debug, Clone)]
pub struct LocusEquations {
    pub assembly: GmAssembly,
    /// `B^{m/2-1, m/2} x^{m/2}`, one form per row of block `m/2 - 1`; empty when `m = 0`.
    pub ivhs: Vec<OneForm>,
    /// `dx^{m/2} - B^{m/2,m/2} x^{m/2} - B^{m/2,m/2+1} x^{m/2+1}`.
    pub middle: Vec<OneForm>,
    /// `dx^i - sum_j B^{i,j} x^j` for the blocks `i > m/2`.
    pub lower: Vec<OneForm>,
}

impl LocusEquations {
    pub fn forms(&self) -> Vec<OneForm> {
        self.ivhs.iter().chain(&self.middle).chain(&self.lower).cloned().collect()
    }

    /// The block `B^{m/2-1, m/2}` whose product with `x^{m/2}` is the IVHS part.
    pub fn ivhs_block(&self) -> Vec<Vec<OneForm>> {
        let m = self.assembly.blocks.weight() as usize;
        if m == 0 {
            return Vec::new();
        }
        let rows = self.assembly.blocks.range(m / 2 - 1);
        let cols = self.assembly.blocks.range(m / 2);
        rows.map(|i| cols.clone().map(|j| self.assembly.b.get(i, j).clone()).collect()).collect()
    }

    /// The block equations and the entries of `A C` generate the same module:
    /// `S (A C) = -(dx - B x)` and `A C = -S^-1 (dx - B x)`, and the rows of
    /// `dx - B x` left out of the block equations vanish.
    pub fn spans_agree(&self) -> Result<bool> {
        let asm = &self.assembly;
        let lhs = asm.dx_minus_bx()?;
        let ac = asm.ac();
        let neg = lhs.neg();
        if !ac.left_mul(&asm.s)?.try_sub(&neg)?.is_zero() {
            return Ok(false);
        }
        if !neg.left_mul(&asm.s_inv)?.try_sub(&ac)?.is_zero() {
            return Ok(false);
        }
        let kept = self.forms();
        let all: Vec<&OneForm> = lhs.rows().iter().map(|r| &r[0]).collect();
        let skipped = all.len() - kept.len();
        if !all[..skipped].iter().all(|w| w.is_zero()) {
            return Ok(false);
        }
        // the IVHS rows carry no dx term, so they equal -(B x) on those rows
        Ok(all[skipped..].iter().zip(&kept).enumerate().all(|(k, (w, f))| {
            if k < self.ivhs.len() {
                w.neg() == *f || w.try_add(f).map(|s| s.is_zero()).unwrap_or(false)
            } else {
                w.try_sub(f).map(|s| s.is_zero()).unwrap_or(false)
            }
        }))
    }
}

/// Rejects `B` with a nonzero block `B^{i,j}`, `j - i >= 2` (blocks labelled by position).
pub fn check_transversality(b: &FormMatrix, blocks: &HodgeBlocks) -> Result<()> {
    let nb = blocks.sizes().len();
    for i in 0..nb {
        for j in i + 2..nb {
            for r in blocks.range(i) {
                for c in blocks.range(j) {
                    if !b.get(r, c).is_zero() {
                        return Err(Error::Transversality { row: i, col: j });
                    }
                }
            }
        }
    }
    Ok(())
}

/// The foliation as the block equations of `dx - B x = 0`.
pub fn prop25_forms(b: &FormMatrix, blocks: &HodgeBlocks) -> Result<LocusEquations> {
    if b.nrows() != blocks.total() || b.ncols() != blocks.total() {
        return Err(Error::BlockSizes(format!("B is {}x{} but the blocks sum to {}", b.nrows(), b.ncols(), blocks.total())));
    }
    check_transversality(b, blocks)?;
    let assembly = gm_assemble(b, blocks)?;
    let lhs = assembly.dx_minus_bx()?;
    let m = blocks.weight() as usize;
    let row = |r: usize| lhs.get(r, 0).clone();
    let ivhs = if m == 0 { Vec::new() } else { blocks.range(m / 2 - 1).map(|r| row(r).neg()).collect() };
    let middle = blocks.range(m / 2).map(row).collect();
    let lower = (m / 2 + 1..=m).flat_map(|q| blocks.range(q)).map(row).collect();
    Ok(LocusEquations { assembly, ivhs, middle, lower })
}
