//! Nontrivial zeros: grid scan on the critical line, Newton refinement of
//! (s-1)ζ(s), and the functional-equation residual as an independent check.

mod funceq;
mod refine;
mod scan;

pub use funceq::{chi, func_eq_residual, func_eq_residual_from};
pub use refine::{refine_zero, zeros_to_csv, zeros_to_json, ZeroRecord, MAX_GUESS_ZETA, MAX_NEWTON_ITERATIONS};
pub use scan::{scan_zeros, scan_zeros_with_threshold, DEFAULT_SCAN_THRESHOLD};
