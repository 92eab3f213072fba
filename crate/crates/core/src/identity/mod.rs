//! Connection and linearization coefficient checks.
//!
//! Printed coefficient formulas are evaluators only; each is diffed,
//! index by index and exactly, against an oracle that multiplies the
//! polynomials and expands the product in the target basis.

mod formulas;
mod oracle;
mod report;
mod schur;

pub use formulas::{
    chebyshev_product_formula, connection_formula, linearization_formula, ConnParams, LinParams,
};
pub use oracle::{compose_connection, connection_oracle, linearization_oracle};
pub use report::{
    identity_check, CaseReport, CaseVerdict, CheckMode, CoefficientReport, CoefficientRow,
    Identity, Verdict,
};
pub use schur::{schur_check, schur_value, SchurReport};
