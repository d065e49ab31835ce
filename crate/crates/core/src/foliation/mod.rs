//! Polynomial vector fields and differential forms, integrable connections,
//! Frobenius powers modulo `p`, degree-bounded tangency tests, and the
//! foliation attached to a Hodge locus through a Gauss-Manin connection.

mod context;
mod forms;
mod gm;
mod ideal;
mod matrix;
mod pcurv;
mod solve;

pub use context::PolyContext;
pub use forms::{d_oneform, d_poly, pairing_eval, vf_apply, wedge, OneForm, TwoForm, VectorField};
pub use matrix::{
    identity, integrability_check, integrability_defect, poly_mat_mul, two_form_matrices_equal, FormMatrix, PolyMatrix,
    TwoFormMatrix,
};
pub use ideal::{
    default_degree_bound, dual_theta_bounded, ideal_membership_bounded, pcurvature_tangency, sch_contains_point, sch_ideal,
    tangency_check, theta_tl_bounded, IdealGens, Verdict,
};
pub use pcurv::{iterate, vf_pow_p, vf_pow_p_mod, MAX_PCURVATURE_PRIME};
pub use solve::{linear_solve_series, series_residual};
pub use gm::{check_transversality, gm_assemble, prop25_forms, GmAssembly, HodgeBlocks, LocusEquations};
