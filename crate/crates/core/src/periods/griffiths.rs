use super::fermat::BetaIndex;
use crate::exact::ExponentVec;

/// Exponents `beta` with `0 <= beta_i <= d - 2` and `d | sum (beta_i + 1)`,
/// grouped by pole order.
///
/// Within one pole order the rows follow the published table: larger exponent
/// on the last variable first, then the next-to-last, and so on.
pub fn griffiths_basis(d: u32, n: u32) -> Vec<BetaIndex> {
    let len = n as usize + 2;
    let top = d.saturating_sub(2) as i32;
    let mut out = Vec::new();
    let mut cur = vec![0i32; len];
    loop {
        let s: i64 = cur.iter().map(|&b| b as i64 + 1).sum();
        if s % d as i64 == 0 {
            out.push(BetaIndex::new(ExponentVec::new(cur.clone()), d).expect("integral pole order"));
        }
        // odometer over [0, d-2]^len
        let mut i = 0;
        while i < len && cur[i] == top {
            cur[i] = 0;
            i += 1;
        }
        if i == len {
            break;
        }
        cur[i] += 1;
    }
    out.sort_by(|a, b| {
        a.pole_order().cmp(&b.pole_order()).then_with(|| {
            let ra: Vec<i32> = a.beta().as_slice().iter().rev().copied().collect();
            let rb: Vec<i32> = b.beta().as_slice().iter().rev().copied().collect();
            rb.cmp(&ra)
        })
    });
    out
}
