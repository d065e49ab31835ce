//! Exact linear algebra over a [`Field`].
//!
//! Over the rationals the kernel is computed by fraction-free Gauss-Jordan
//! elimination on an integer matrix: rows are cleared of denominators first and
//! every update `(p * a_ij - a_ik * a_rj) / prev` is an exact integer division.
//! After elimination all pivots share one value `d`, so each kernel vector has
//! integer entries `d` (free column) and `-a_if` (pivot columns).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{Field, Rational};

/// Kernel basis of a rational matrix by fraction-free elimination.
///
/// Returned vectors are primitive integer vectors (as rationals) with a
/// positive entry in their free column, one per free column in increasing order.
pub fn nullspace_rational(m: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            assert_eq!(row.len(), ncols, "ragged matrix");
            let den = row.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
            row.iter().map(|c| c.numer() * (&den / c.denom())).collect()
        })
        .filter(|row: &Vec<BigInt>| row.iter().any(|c| !c.is_zero()))
        .collect();

    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let piv = a[r][col].clone();
        for i in 0..nrows {
            if i == r {
                continue;
            }
            let factor = a[i][col].clone();
            for j in 0..ncols {
                let v = &piv * &a[i][j] - &factor * &a[r][j];
                debug_assert!((&v % &prev).is_zero(), "fraction-free step must divide exactly");
                a[i][j] = v / &prev;
            }
        }
        prev = piv;
        pivots.push(col);
        r += 1;
    }

    let d = prev;
    let mut basis = Vec::new();
    let mut pivot_iter = pivots.iter().peekable();
    for f in 0..ncols {
        if pivot_iter.peek() == Some(&&f) {
            pivot_iter.next();
            continue;
        }
        let mut v = vec![BigInt::zero(); ncols];
        v[f] = d.clone();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][f].clone();
        }
        let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g > BigInt::one() {
            for x in &mut v {
                *x = &*x / &g;
            }
        }
        if v[f].is_negative() {
            for x in &mut v {
                *x = -&*x;
            }
        }
        basis.push(v.into_iter().map(Rational::from_integer).collect());
    }
    basis
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<K: Field>(field: &K, a: &mut Vec<Vec<K::Elem>>, ncols: usize) -> Vec<usize> {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !field.is_zero(&a[i][col])) else {
            continue;
        };
        a.swap(r, p);
        let inv = field.inv(&a[r][col]).expect("nonzero pivot");
        for j in 0..ncols {
            a[r][j] = field.mul(&a[r][j], &inv);
        }
        for i in 0..nrows {
            if i == r || field.is_zero(&a[i][col]) {
                continue;
            }
            let factor = a[i][col].clone();
            for j in 0..ncols {
                let t = field.mul(&factor, &a[r][j]);
                a[i][j] = field.sub(&a[i][j], &t);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Kernel basis by ordinary Gauss-Jordan elimination over any field.
pub fn nullspace_gauss<K: Field>(field: &K, m: &[Vec<K::Elem>], ncols: usize) -> Vec<Vec<K::Elem>> {
    let mut a: Vec<Vec<K::Elem>> = m.to_vec();
    let pivots = rref(field, &mut a, ncols);
    let mut basis = Vec::new();
    for f in 0..ncols {
        if pivots.contains(&f) {
            continue;
        }
        let mut v = vec![field.zero(); ncols];
        v[f] = field.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(&a[row][f]);
        }
        basis.push(v);
    }
    basis
}

pub fn rank<K: Field>(field: &K, m: &[Vec<K::Elem>], ncols: usize) -> usize {
    let mut a = m.to_vec();
    rref(field, &mut a, ncols).len()
}

/// One solution of `m x = b`, or `None` when the system is inconsistent.
pub fn solve<K: Field>(field: &K, m: &[Vec<K::Elem>], b: &[K::Elem], ncols: usize) -> Option<Vec<K::Elem>> {
    assert_eq!(m.len(), b.len());
    let aug: Vec<Vec<K::Elem>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let kernel = field.nullspace(&aug, ncols + 1);
    // (x, s) with m x + s b = 0 and s != 0 gives m (-x / s) = b.
    let v = kernel.into_iter().find(|v| !field.is_zero(&v[ncols]))?;
    let s = field.inv(&v[ncols]).expect("nonzero");
    let s = field.neg(&s);
    Some(v[..ncols].iter().map(|x| field.mul(x, &s)).collect())
}

pub fn mat_vec<K: Field>(field: &K, m: &[Vec<K::Elem>], v: &[K::Elem]) -> Vec<K::Elem> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
        })
        .collect()
}
