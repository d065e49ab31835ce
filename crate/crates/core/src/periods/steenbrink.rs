use crate::error::{Error, Result};

/// Hodge-Tate test for a smooth degree-`d` hypersurface in the weighted
/// projective space `P(v_0, ..., v_{n+1})` with `v_0 = 1`: the middle
/// cohomology is of Hodge-Tate type when `n/2 <= (v_1 + ... + v_{n+1}) / d`.
pub fn steenbrink_hodge_tate(d: u32, weights: &[u32], n: u32) -> Result<bool> {
    if !n.is_multiple_of(2) {
        return Err(Error::Invalid(format!("n = {n} must be even")));
    }
    if weights.len() != n as usize + 2 {
        return Err(Error::Invalid(format!("expected {} weights, got {}", n + 2, weights.len())));
    }
    if weights[0] != 1 || weights.contains(&0) {
        return Err(Error::Invalid("weights must be positive with v_0 = 1".into()));
    }
    if d == 0 {
        return Err(Error::Invalid("degree must be positive".into()));
    }
    let tail: u64 = weights[1..].iter().map(|&v| v as u64).sum();
    // n/2 <= tail/d  <=>  n d <= 2 tail
    Ok(n as u64 * d as u64 <= 2 * tail)
}
