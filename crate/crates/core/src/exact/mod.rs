//! Exact scalars and terminating (q-)hypergeometric building blocks.
//!
//! Every identity in the lab is evaluated at fixed rational parameter points,
//! so all of the algebra here is over [`Q`] (arbitrary-precision rationals)
//! or over [`Eisenstein`] rationals `a + b·ω` with `ω² + ω + 1 = 0`.

mod eisenstein;
mod gamma;
mod hyper;
mod rational;

pub use eisenstein::Eisenstein;
pub use gamma::{beta_fn, ln_gamma};
pub use hyper::{
    factorial, hyp_pfq_terminating, hyp_qphiq_terminating, pochhammer, q_pochhammer,
    recip_factorial, HypSeriesSpec,
};
pub use rational::{
    format_q, parse_q, q, q_frac, q_int, q_is_integer, q_pow, q_to_f64, serde_q, Q,
};
