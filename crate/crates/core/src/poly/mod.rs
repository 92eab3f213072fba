//! Dense univariate polynomials over an exact or floating scalar field, the
//! trivariate algebra used for the Schur inequality, and polynomial
//! generation from three-term recurrences.

mod dense;
mod multi;
mod ttr;

pub use dense::{expand_in_basis, Poly, Scalar};
pub use multi::{schur_lhs, sos_rhs, MultiPoly3};
pub use ttr::{generate_from_ttr, recurrence_residual};
