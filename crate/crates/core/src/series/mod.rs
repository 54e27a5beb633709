//! The alternating binomial series Σ S_n(s)/(n+1) = (s-1)ζ(s).

mod asymptotic;
mod binomial;
mod global;

pub use asymptotic::s_n_asymptotic;
pub use binomial::{delta_n, s_n, s_n_at, s_n_table, SnTable};
pub(crate) use global::{kernel_block, BlockMode};
pub use global::{
    kernel_peak, s_n_moment_bound, series_partial_sum, s_n_kernel, zeta_series, zeta_series_with, zeta_tail, SeriesOptions, DEFAULT_BINOMIAL_CUTOFF,
};
