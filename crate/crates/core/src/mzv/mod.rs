//! Polynomials in `x = t³` attached to an MZV identity, the product limit of
//! their partial sums, zero location, and truncated multiple zeta sums.

mod families;
mod product;
mod xpoly;
mod zeta;

pub use families::{
    a_polys, a_recursion_residual, b_poly_explicit, b_poly_recurrence, b_recurrence_residual,
    endrec_residual,
};
pub use product::{limit_check, partial_sum_float, product_truncation, LimitReport, LimitRow};
pub use xpoly::{sturm_count_negative, xpoly_real_zeros, XPoly, ZeroReport};
pub use zeta::{
    alternating_check, mzv_truncated, rate_check, AlternatingReport, MzvSpec, MzvValue, RateReport,
};
