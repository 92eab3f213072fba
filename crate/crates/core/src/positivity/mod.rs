//! Quadrature for the Gegenbauer integral `F_n^{λ,δ}(t)` and grid scans of
//! its sign.

mod integral;
mod quadrature;
mod scan;

pub use integral::{f_integral, f_integrals, gegenbauer_values, IntegralValue};
pub use quadrature::gauss_legendre;
pub use scan::{
    monotonicity_check, positivity_scan, MonotonicityReport, MonotonicityViolation,
    PositivityScanConfig, ScanPoint, ScanReport, ScanVerdict, SignClass, TGrid,
};
