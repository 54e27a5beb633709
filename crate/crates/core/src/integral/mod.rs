//! The φ(t) kernel and integral representations.

pub mod kernel;
pub mod quadrature;
mod weighted;
mod zeta;

pub use kernel::{phi_exp, phi_exp_closed, phi_exp_series, phi_kernel};
pub use quadrature::{integrate, plan_log_max, LogIntegrand, QuadResult, QuadratureSpec, Range, Scheme};
pub use weighted::{quad_weighted, quad_weighted_detailed, Weight};
pub(crate) use weighted::{integrate_sized, KernelIntegrand, KernelWeight};
pub use zeta::{kernel_integral, s_minus_one_zeta, s_minus_one_zeta_with, zeta_integral, zeta_integral_with};
