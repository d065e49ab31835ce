//! Exact arithmetic: rationals, prime fields, sparse polynomials and series,
//! and linear algebra.

pub mod field;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod serial;

pub use field::{frac, int, is_prime, Field, PrimeField, Rational, Rationals};
pub use linalg::{nullspace_rational, rank, solve};
pub use monomial::ExponentVec;
pub use poly::{mod_reduce, series_add, series_eval_float, series_mul, ModPolynomial, Poly, Polynomial, SparseSeries};
pub use serial::{series_from_json, series_to_json, SeriesDoc};
