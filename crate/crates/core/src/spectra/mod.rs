//! Tridiagonal eigenvalues, zero trends of three-term recurrences, and
//! spectra of symmetric ±1 matrices.

mod bernoulli;
mod eigen;
mod trend;

pub use bernoulli::{
    bernoulli_exhaustive, bernoulli_montecarlo, kolmogorov_to_semicircle, semicircle_cdf,
    BernoulliEnsembleReport, EnsembleMode, Histogram, SpectrumCount,
};
pub use eigen::{eigen_sym_tridiagonal, householder_tridiagonal, op_zeros, MAX_DENSE};
pub use trend::{
    blumenthal_experiment, classify_trend, BoundedLimits, RatioPoint, SizeRow, SpectrumReport,
    Trend,
};
