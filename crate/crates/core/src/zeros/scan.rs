use crate::error::{Result, ZetaError};
use crate::integral::zeta_integral;
use crate::numerics::{ComplexValue, PrecisionContext};

pub const DEFAULT_SCAN_THRESHOLD: f64 = 0.1;

/// Candidate ordinates in [t_min, t_max] where |ζ(1/2+it)| on a grid of
/// spacing `step` has a local minimum below 0.1.
pub fn scan_zeros(t_min: f64, t_max: f64, step: f64, ctx: &PrecisionContext) -> Result<Vec<f64>> {
    scan_zeros_with_threshold(t_min, t_max, step, DEFAULT_SCAN_THRESHOLD, ctx)
}

pub fn scan_zeros_with_threshold(
    t_min: f64,
    t_max: f64,
    step: f64,
    threshold: f64,
    ctx: &PrecisionContext,
) -> Result<Vec<f64>> {
    if !(t_min > 0.0 && t_min < t_max && t_max.is_finite()) {
        return Err(ZetaError::invalid(format!("need 0 < t_min < t_max, got [{t_min}, {t_max}]")));
    }
    if !(step > 0.0 && step <= 0.5) {
        return Err(ZetaError::invalid(format!("step must lie in (0, 0.5], got {step}")));
    }
    // A magnitude profile does not need the caller's full precision.
    let scan_ctx = PrecisionContext::new(ctx.bits().min(64), ctx.target_tol().max(1e-10))?;
    let count = ((t_max - t_min) / step + 1e-9).floor() as usize + 1;
    let grid: Vec<f64> = (0..count).map(|k| ((t_min + k as f64 * step) * 1e9).round() / 1e9).collect();
    let mut mags = Vec::with_capacity(count);
    for &t in &grid {
        let s = ComplexValue::from_f64(0.5, t, scan_ctx.bits());
        mags.push(zeta_integral(&s, &scan_ctx)?.value.abs_f64());
    }
    let mut out = Vec::new();
    for i in 1..count.saturating_sub(1) {
        if mags[i] < threshold && mags[i] < mags[i - 1] && mags[i] <= mags[i + 1] {
            out.push(grid[i]);
        }
    }
    Ok(out)
}
