//! Multiple-precision scalar kernels.

mod complex;
mod exact;
mod gamma;
mod powers;
mod precision;

pub use complex::{fmt_float, ComplexValue};
pub(crate) use complex::pi;
pub use exact::{bernoulli, bernoulli_floats, binomial, ExactRational};
pub use gamma::{gamma, gamma_derivs_at, gamma_derivs_at_one, gamma_prec, ln_abs_gamma_c64, ln_abs_gamma_f64, rgamma};
pub use powers::{cpow, cpow_int, cpow_prec};
pub(crate) use powers::neg_s_times;
pub use precision::{PrecisionContext, DEFAULT_MAX_BITS, MIN_BITS};
