//! Limit objects: Φ, Φ', Ψ, the x-weighted series ζ(s,x), coefficient
//! asymptotics and limit trajectories as x → 1.

mod flajolet;
mod phi;
mod phitilde;
mod trajectory;
mod zeta_x;

pub use flajolet::{flajolet_coeff_estimate, FlajoletParams};
pub use phi::{log_ratio, phi_hat_ratio, phi_x, phi_x_prime, psi_x};
pub use phitilde::{nphi_abs_sum, nphi_abs_sum_truncated, phi_coeff_continuous, truncation_for, NPHI_HEAD};
pub use trajectory::{default_grid, limit_target, limit_trajectory, Trajectory, TrajectoryKind, TrajectoryPoint};
pub use zeta_x::{zeta_x_abel, zeta_x_partial};
