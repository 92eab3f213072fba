//! Exact and numerical verification of orthogonal-polynomial and
//! special-function identities.
//!
//! Each module turns a family of printed formulas into checks that either
//! hold exactly over the rationals or are scanned numerically with explicit
//! error estimates:
//!
//! - [`exact`]: rationals, Eisenstein rationals, Pochhammer symbols and
//!   terminating hypergeometric sums
//! - [`poly`]: dense and trivariate polynomial algebra
//! - [`families`]: classical families and their Jacobi matrices
//! - [`identity`]: connection/linearization coefficient checks against an
//!   exact expansion oracle, and the Schur SOS check
//! - [`multisum`]: double sums, their closed forms and recurrences
//! - [`spectra`]: tridiagonal eigenvalues, zero trends, Bernoulli matrices
//! - [`positivity`]: Gegenbauer integral positivity scans
//! - [`mzv`]: polynomials attached to multiple zeta value identities
//! - [`acceptance`]: the end-to-end acceptance criteria

pub mod acceptance;
pub mod error;
pub mod exact;
pub mod families;
pub mod identity;
pub mod multisum;
pub mod mzv;
pub mod poly;
pub mod positivity;
pub mod spectra;

pub use error::{Error, Result};
