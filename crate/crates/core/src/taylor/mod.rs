//! Taylor, reciprocal and Laguerre coefficient systems.

mod coeffs;
mod export;
mod laguerre;
mod tilde;

pub use coeffs::{
    a_coeff, a_subseries_integral, a_table, b_coeff, b_table, c_determinant, c_from_b, radius_estimate, CoeffKind,
    CoeffTable, RadiusReport, DETERMINANT_MAX_N,
};
pub use export::digits_for_error;
pub use laguerre::{laguerre_poly, laguerre_poly_f64};
pub use tilde::{f_consistency, laguerre_coeff, laguerre_coeff_direct, laguerre_table, F_CONSISTENCY_MAX_ABS_Z};
