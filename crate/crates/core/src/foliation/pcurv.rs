use super::forms::VectorField;
use crate::error::{Error, Result};
use crate::exact::{Field, PrimeField, Rationals};

/// Largest prime accepted by [`vf_pow_p`]: the power is built by `p`-fold application.
pub const MAX_PCURVATURE_PRIME: u64 = 101;

/// `v^p` modulo `p`: the derivation with `v^p(x_i) = v(v(...v(x_i)))`, `p` times.
pub fn vf_pow_p(v: &VectorField<Rationals>, p: u64) -> Result<VectorField<PrimeField>> {
    if p > MAX_PCURVATURE_PRIME {
        return Err(Error::ResourceLimit(format!("p = {p} exceeds {MAX_PCURVATURE_PRIME}")));
    }
    let field = PrimeField::new(p)?;
    vf_pow_p_mod(&v.mod_reduce(field)?)
}

/// [`vf_pow_p`] for a field already reduced modulo its characteristic.
pub fn vf_pow_p_mod(v: &VectorField<PrimeField>) -> Result<VectorField<PrimeField>> {
    let ctx = v.ctx().clone();
    let field = *v.comp(0).field();
    let p = field.modulus();
    if p > MAX_PCURVATURE_PRIME {
        return Err(Error::ResourceLimit(format!("p = {p} exceeds {MAX_PCURVATURE_PRIME}")));
    }
    let comps = (0..ctx.nvars())
        .map(|i| iterate(v, &ctx.var(field, i), p))
        .collect::<Result<Vec<_>>>()?;
    VectorField::new(ctx, comps)
}

/// `v` applied `times` times to `f`.
pub fn iterate<K: Field>(v: &VectorField<K>, f: &crate::exact::Poly<K>, times: u64) -> Result<crate::exact::Poly<K>> {
    let mut g = f.clone();
    for _ in 0..times {
        if g.is_zero() {
            break;
        }
        g = v.apply(&g)?;
    }
    Ok(g)
}
