use std::collections::BTreeMap;
use std::sync::Arc;

use super::context::{same, PolyContext};
use crate::error::{Error, Result};
use crate::exact::{Field, Poly, PrimeField, Rational, Rationals};

/// A derivation `sum_i v_i d/dx_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField<K: Field = Rationals> {
    ctx: Arc<PolyContext>,
    comps: Vec<Poly<K>>,
}

/// A differential 1-form `sum_i w_i dx_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct OneForm<K: Field = Rationals> {
    ctx: Arc<PolyContext>,
    comps: Vec<Poly<K>>,
}

/// A 2-form `sum_{i<j} w_ij dx_i ^ dx_j`; zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoForm<K: Field = Rationals> {
    ctx: Arc<PolyContext>,
    field: K,
    comps: BTreeMap<(usize, usize), Poly<K>>,
}

fn check_comps<K: Field>(ctx: &PolyContext, comps: &[Poly<K>]) -> Result<()> {
    if comps.len() != ctx.nvars() {
        return Err(Error::VariableCountMismatch(ctx.nvars(), comps.len()));
    }
    comps.iter().try_for_each(|c| ctx.admits(c))
}

macro_rules! linear_object {
    ($ty:ident) => {
        impl<K: Field> $ty<K> {
            pub fn new(ctx: Arc<PolyContext>, comps: Vec<Poly<K>>) -> Result<Self> {
                check_comps(&ctx, &comps)?;
                Ok(Self { ctx, comps })
            }

            pub fn zero(ctx: Arc<PolyContext>, field: K) -> Self {
                let comps = (0..ctx.nvars()).map(|_| Poly::zero(field.clone(), ctx.nvars())).collect();
                Self { ctx, comps }
            }

            /// The basis element for variable `i`.
            pub fn basis(ctx: Arc<PolyContext>, field: K, i: usize) -> Self {
                let mut out = Self::zero(ctx, field.clone());
                out.comps[i] = Poly::one(field, out.ctx.nvars());
                out
            }

            pub fn ctx(&self) -> &Arc<PolyContext> {
                &self.ctx
            }

            pub fn comps(&self) -> &[Poly<K>] {
                &self.comps
            }

            pub fn comp(&self, i: usize) -> &Poly<K> {
                &self.comps[i]
            }

            pub fn is_zero(&self) -> bool {
                self.comps.iter().all(Poly::is_zero)
            }

            pub fn try_add(&self, other: &Self) -> Result<Self> {
                same(&self.ctx, &other.ctx)?;
                let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect();
                Ok(Self { ctx: self.ctx.clone(), comps })
            }

            pub fn try_sub(&self, other: &Self) -> Result<Self> {
                same(&self.ctx, &other.ctx)?;
                let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect();
                Ok(Self { ctx: self.ctx.clone(), comps })
            }

            pub fn neg(&self) -> Self {
                Self { ctx: self.ctx.clone(), comps: self.comps.iter().map(|c| -c).collect() }
            }

            /// Multiplies every component by a function.
            pub fn mul_poly(&self, f: &Poly<K>) -> Self {
                Self { ctx: self.ctx.clone(), comps: self.comps.iter().map(|c| c * f).collect() }
            }

            pub fn scale(&self, s: &K::Elem) -> Self {
                Self { ctx: self.ctx.clone(), comps: self.comps.iter().map(|c| c.scale(s)).collect() }
            }

            /// Values of the components at a point.
            pub fn eval(&self, point: &[K::Elem]) -> Result<Vec<K::Elem>> {
                self.comps.iter().map(|c| c.eval(point)).collect()
            }

            pub fn try_map_field<L: Field>(
                &self,
                target: L,
                mut map: impl FnMut(&K::Elem) -> Result<L::Elem>,
            ) -> Result<$ty<L>> {
                let comps = self
                    .comps
                    .iter()
                    .map(|c| c.try_map_field(target.clone(), &mut map))
                    .collect::<Result<_>>()?;
                Ok($ty { ctx: self.ctx.clone(), comps })
            }

            pub fn max_degree(&self) -> i64 {
                self.comps.iter().filter_map(Poly::degree).max().unwrap_or(0)
            }
        }

        impl $ty<Rationals> {
            pub fn mod_reduce(&self, field: PrimeField) -> Result<$ty<PrimeField>> {
                self.try_map_field(field, |c: &Rational| field.reduce(c))
            }
        }
    };
}

linear_object!(VectorField);
linear_object!(OneForm);

impl<K: Field> VectorField<K> {
    /// `v(f) = sum_i v_i df/dx_i`.
    pub fn apply(&self, f: &Poly<K>) -> Result<Poly<K>> {
        self.ctx.admits(f)?;
        let mut acc = Poly::zero(f.field().clone(), self.ctx.nvars());
        for (i, vi) in self.comps.iter().enumerate() {
            if !vi.is_zero() {
                acc = &acc + &(vi * &f.derivative(i));
            }
        }
        Ok(acc)
    }

    /// Lie bracket `[v, w]`.
    pub fn bracket(&self, w: &Self) -> Result<Self> {
        same(&self.ctx, &w.ctx)?;
        let comps = (0..self.ctx.nvars())
            .map(|i| Ok(&self.apply(&w.comps[i])? - &w.apply(&self.comps[i])?))
            .collect::<Result<_>>()?;
        Ok(Self { ctx: self.ctx.clone(), comps })
    }
}

pub fn vf_apply<K: Field>(v: &VectorField<K>, f: &Poly<K>) -> Result<Poly<K>> {
    v.apply(f)
}

impl<K: Field> OneForm<K> {
    /// `df = sum_i df/dx_i dx_i`.
    pub fn d(ctx: Arc<PolyContext>, f: &Poly<K>) -> Result<Self> {
        ctx.admits(f)?;
        let comps = (0..ctx.nvars()).map(|i| f.derivative(i)).collect();
        Ok(Self { ctx, comps })
    }

    /// The contraction `w(v) = sum_i w_i v_i`.
    pub fn contract(&self, v: &VectorField<K>) -> Result<Poly<K>> {
        same(&self.ctx, &v.ctx)?;
        let mut acc = Poly::zero(self.field(), self.ctx.nvars());
        for (a, b) in self.comps.iter().zip(&v.comps) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        Ok(acc)
    }

    fn field(&self) -> K {
        self.comps.first().map(|c| c.field().clone()).expect("contexts have at least one variable")
    }

    /// Exterior derivative.
    pub fn exterior(&self) -> TwoForm<K> {
        let mut out = TwoForm::zero(self.ctx.clone(), self.field());
        for (j, wj) in self.comps.iter().enumerate() {
            if wj.is_zero() {
                continue;
            }
            for i in 0..self.ctx.nvars() {
                if i != j {
                    // d(w_j dx_j) = sum_i dw_j/dx_i dx_i ^ dx_j
                    out.add_entry(i, j, &wj.derivative(i));
                }
            }
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<TwoForm<K>> {
        same(&self.ctx, &other.ctx)?;
        let mut out = TwoForm::zero(self.ctx.clone(), self.field());
        for (i, a) in self.comps.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.comps.iter().enumerate() {
                if i != j && !b.is_zero() {
                    out.add_entry(i, j, &(a * b));
                }
            }
        }
        Ok(out)
    }

    /// `sum_i w_i(t) v_i` for a tangent vector `v` at the point `t`.
    pub fn pairing_eval(&self, v: &[K::Elem], t: &[K::Elem]) -> Result<K::Elem> {
        if v.len() != self.ctx.nvars() {
            return Err(Error::VariableCountMismatch(self.ctx.nvars(), v.len()));
        }
        let f = self.field();
        let mut acc = f.zero();
        for (c, vi) in self.comps.iter().zip(v) {
            acc = f.add(&acc, &f.mul(&c.eval(t)?, vi));
        }
        Ok(acc)
    }
}

pub fn d_poly<K: Field>(ctx: &Arc<PolyContext>, f: &Poly<K>) -> Result<OneForm<K>> {
    OneForm::d(ctx.clone(), f)
}

pub fn d_oneform<K: Field>(w: &OneForm<K>) -> TwoForm<K> {
    w.exterior()
}

pub fn wedge<K: Field>(a: &OneForm<K>, b: &OneForm<K>) -> Result<TwoForm<K>> {
    a.wedge(b)
}

pub fn pairing_eval<K: Field>(w: &OneForm<K>, v: &[K::Elem], t: &[K::Elem]) -> Result<K::Elem> {
    w.pairing_eval(v, t)
}

impl<K: Field> TwoForm<K> {
    pub fn zero(ctx: Arc<PolyContext>, field: K) -> Self {
        Self { ctx, field, comps: BTreeMap::new() }
    }

    /// Builds from `(i, j, coefficient)` triples of `dx_i ^ dx_j`, any order of `i, j`.
    pub fn from_entries(ctx: Arc<PolyContext>, field: K, entries: impl IntoIterator<Item = (usize, usize, Poly<K>)>) -> Result<Self> {
        let mut out = Self::zero(ctx, field);
        for (i, j, c) in entries {
            out.ctx.admits(&c)?;
            if i >= out.ctx.nvars() || j >= out.ctx.nvars() {
                return Err(Error::Invalid(format!("index pair ({i}, {j}) out of range")));
            }
            if i != j {
                out.add_entry(i, j, &c);
            }
        }
        Ok(out)
    }

    /// Adds `c dx_i ^ dx_j`.
    fn add_entry(&mut self, i: usize, j: usize, c: &Poly<K>) {
        if c.is_zero() {
            return;
        }
        let (key, c) = if i < j { ((i, j), c.clone()) } else { ((j, i), -c) };
        let sum = match self.comps.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.comps.insert(key, sum);
        }
    }

    pub fn ctx(&self) -> &Arc<PolyContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Coefficient of `dx_i ^ dx_j`, antisymmetric in `(i, j)`.
    pub fn coeff(&self, i: usize, j: usize) -> Poly<K> {
        let zero = || Poly::zero(self.field.clone(), self.ctx.nvars());
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.comps.get(&(i, j)).cloned().unwrap_or_else(zero),
            std::cmp::Ordering::Greater => self.comps.get(&(j, i)).map(|c| -c).unwrap_or_else(zero),
            std::cmp::Ordering::Equal => zero(),
        }
    }

    /// Stored `(i, j)` pairs with `i < j` and their coefficients.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Poly<K>)> {
        self.comps.iter()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        same(&self.ctx, &other.ctx)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.comps {
            out.add_entry(i, j, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { ctx: self.ctx.clone(), field: self.field.clone(), comps: self.comps.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn mul_poly(&self, f: &Poly<K>) -> Self {
        let mut out = Self::zero(self.ctx.clone(), self.field.clone());
        for (&(i, j), c) in &self.comps {
            out.add_entry(i, j, &(c * f));
        }
        out
    }

    /// Restricts every coefficient to total degree `<= d`.
    pub fn truncate(&self, d: i32) -> Self {
        let mut out = Self::zero(self.ctx.clone(), self.field.clone());
        for (&(i, j), c) in &self.comps {
            out.add_entry(i, j, &c.truncate(d));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, int, ExponentVec, Polynomial};

    fn xy() -> Arc<PolyContext> {
        PolyContext::new(["x", "y"]).unwrap()
    }

    fn p(terms: &[(&[i32], i64)]) -> Polynomial {
        Polynomial::from_rational_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), int(*c))))
    }

    #[test]
    fn derivations_on_monomials() {
        let ctx = xy();
        let dx = VectorField::basis(ctx.clone(), Rationals, 0);
        assert_eq!(dx.apply(&p(&[(&[2, 1], 1)])).unwrap(), p(&[(&[1, 1], 2)]));

        let x = ctx.var(Rationals, 0);
        let euler_x = VectorField::new(ctx.clone(), vec![x.clone(), Polynomial::zero(Rationals, 2)]).unwrap();
        for n in 0..6 {
            let f = x.pow(n);
            assert_eq!(euler_x.apply(&f).unwrap(), f.scale(&int(n as i64)));
        }

        let euler = VectorField::new(ctx.clone(), vec![x, ctx.var(Rationals, 1)]).unwrap();
        assert_eq!(euler.apply(&p(&[(&[1, 1], 1)])).unwrap(), p(&[(&[1, 1], 2)]));
    }

    #[test]
    fn exterior_calculus_examples() {
        let ctx = xy();
        let dxy = OneForm::d(ctx.clone(), &p(&[(&[1, 1], 1)])).unwrap();
        assert_eq!(dxy.comps(), &[p(&[(&[0, 1], 1)]), p(&[(&[1, 0], 1)])]);

        let x_dy = OneForm::new(ctx.clone(), vec![Polynomial::zero(Rationals, 2), p(&[(&[1, 0], 1)])]).unwrap();
        let y_dx = OneForm::new(ctx.clone(), vec![p(&[(&[0, 1], 1)]), Polynomial::zero(Rationals, 2)]).unwrap();
        let w = x_dy.wedge(&y_dx).unwrap();
        assert_eq!(w.coeff(0, 1), p(&[(&[1, 1], -1)]));
        assert_eq!(w.coeff(1, 0), p(&[(&[1, 1], 1)]));

        let d = x_dy.exterior();
        assert_eq!(d.coeff(0, 1), p(&[(&[0, 0], 1)]));
    }

    #[test]
    fn pairing_examples() {
        let ctx = xy();
        let w = OneForm::new(ctx.clone(), vec![p(&[(&[0, 1], 1)]), p(&[(&[1, 0], 1)])]).unwrap();
        assert_eq!(w.pairing_eval(&[int(3), frac(1, 2)], &[int(0), int(0)]).unwrap(), int(0));
        let dx = OneForm::basis(ctx.clone(), Rationals, 0);
        assert_eq!(dx.pairing_eval(&[int(1), int(0)], &[int(7), int(7)]).unwrap(), int(1));
        let x_dy = OneForm::new(ctx, vec![Polynomial::zero(Rationals, 2), p(&[(&[1, 0], 1)])]).unwrap();
        assert_eq!(x_dy.pairing_eval(&[int(0), int(1)], &[int(2), int(3)]).unwrap(), int(2));
    }

    #[test]
    fn context_rules() {
        let ctx = xy();
        let other = PolyContext::new(["x", "z"]).unwrap();
        let a = OneForm::basis(ctx, Rationals, 0);
        let b = OneForm::basis(other, Rationals, 0);
        assert_eq!(a.wedge(&b), Err(Error::ContextMismatch));

        let inv = Polynomial::monomial(Rationals, ExponentVec::from([-1, 0]), int(1));
        assert!(matches!(OneForm::d(xy(), &inv), Err(Error::LaurentNotAllowed(_))));
        let lctx = PolyContext::with_laurent(vec!["x".into(), "y".into()], vec![true, false]).unwrap();
        assert!(OneForm::d(lctx, &inv).is_ok());
        assert!(PolyContext::new(["x", "x"]).is_err());
    }
}
