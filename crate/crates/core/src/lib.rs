//! Exact computations around Hodge loci viewed as leaf schemes of foliations.
//!
//! * [`exact`]: rationals, prime fields, sparse truncated series, linear algebra.
//! * [`periods`]: Taylor series of periods of Fermat-hypersurface deformations
//!   over the linear cycle, their denominators, and the Hodge-Tate predicate for
//!   weighted hypersurfaces.
//! * [`foliation`]: vector fields and differential forms, integrability,
//!   Frobenius powers modulo `p`, determinantal tangency loci and the
//!   Gauss-Manin foliation of a Hodge locus.
//! * [`hypergeo`]: the isogeny locus cut out by Gauss hypergeometric periods.
//! * [`expr`]: the text grammar shared by polynomials, forms and vector fields.

pub mod error;
pub mod exact;
pub mod expr;
pub mod foliation;
pub mod hypergeo;
pub mod periods;

pub use error::{Error, Result};
