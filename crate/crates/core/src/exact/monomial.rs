use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial.
///
/// Entries are `i32` so that variables flagged as Laurent can carry negative
/// powers; everywhere else the entries are non-negative. The ordering is
/// graded-lexicographic: total degree first, then lexicographic with the first
/// variable largest.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExponentVec(Vec<i32>);

impl ExponentVec {
    pub fn new(exps: Vec<i32>) -> Self {
        Self(exps)
    }

    pub fn zero(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    /// The monomial `x_i`.
    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i32 {
        self.0[i]
    }

    /// Sum of the non-negative entries.
    pub fn total_degree(&self) -> i64 {
        self.0.iter().filter(|&&e| e > 0).map(|&e| e as i64).sum()
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&e| e < 0)
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `true` if `other` divides `self` in the polynomial sense.
    pub fn divisible_by(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }

    pub(crate) fn with_entry(&self, i: usize, e: i32) -> Self {
        let mut v = self.0.clone();
        v[i] = e;
        Self(v)
    }

    /// Every exponent vector in `nvars` variables with total degree `<= deg`,
    /// in ascending graded-lex order.
    pub fn all_up_to(nvars: usize, deg: u32) -> Vec<ExponentVec> {
        let mut out = Vec::new();
        for d in 0..=deg {
            let mut cur = vec![0i32; nvars];
            of_degree(&mut cur, 0, d as i32, &mut out);
        }
        out.sort();
        out
    }
}

fn of_degree(cur: &mut Vec<i32>, i: usize, left: i32, out: &mut Vec<ExponentVec>) {
    if cur.is_empty() {
        if left == 0 {
            out.push(ExponentVec(Vec::new()));
        }
        return;
    }
    if i + 1 == cur.len() {
        cur[i] = left;
        out.push(ExponentVec(cur.clone()));
        cur[i] = 0;
        return;
    }
    for e in 0..=left {
        cur[i] = e;
        of_degree(cur, i + 1, left - e, out);
    }
    cur[i] = 0;
}

impl Ord for ExponentVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<i32>> for ExponentVec {
    fn from(v: Vec<i32>) -> Self {
        Self(v)
    }
}

impl<const N: usize> From<[i32; N]> for ExponentVec {
    fn from(v: [i32; N]) -> Self {
        Self(v.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = ExponentVec::from([0, 1]);
        let b = ExponentVec::from([1, 0]);
        let c = ExponentVec::from([0, 2]);
        assert!(a < b);
        assert!(b < c);
        assert!(ExponentVec::zero(2) < a);
    }

    #[test]
    fn laurent_degree_ignores_negative_entries() {
        assert_eq!(ExponentVec::from([-2, 3, 1]).total_degree(), 4);
    }

    #[test]
    fn enumeration_counts() {
        // C(n + d, d)
        assert_eq!(ExponentVec::all_up_to(2, 2).len(), 6);
        assert_eq!(ExponentVec::all_up_to(4, 3).len(), 35);
        assert_eq!(ExponentVec::all_up_to(0, 3).len(), 1);
        let v = ExponentVec::all_up_to(3, 4);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
}
