//! Taylor series of periods of Fermat-hypersurface deformations over the
//! linear cycle, their denominators, and related predicates.

mod config;
mod denominators;
mod eq1;
mod fermat;
mod griffiths;
mod steenbrink;
mod symbols;

pub use config::{BetaChoice, FamilyConfig};
pub use denominators::{
    denominator_profile, denominator_table, render_table, series_denominator_profile, trial_factor, DenominatorProfile,
    TableRow, DEFAULT_TRIAL_BOUND, TABLE_HEADER,
};
pub use eq1::{descending_bracket, eq1_series};
pub use fermat::{
    a_star, condition20, d_coefficient, degree_monomials, denominator_bound, e_sign, period_coefficient, period_series,
    pole_order, BetaIndex, FamilySpec, PeriodSeries,
};
pub use griffiths::griffiths_basis;
pub use steenbrink::steenbrink_hodge_tate;
pub use symbols::{int_frac, pochhammer};

/// The four deformation monomials of the quartic family
/// `x0^4 + x1^4 + x2^4 + x3^4 - t0 x0 x1^3 - t1 x1 x2^3 - t2 x2 x3^3 - t3 x3 x0^3`.
pub fn quartic_cyclic_monomials() -> Vec<crate::exact::ExponentVec> {
    vec![[1, 3, 0, 0].into(), [0, 1, 3, 0].into(), [0, 0, 1, 3].into(), [3, 0, 0, 1].into()]
}
