use rug::Float;

use crate::error::{Result, ZetaError};
use crate::integral::zeta_integral;
use crate::numerics::{gamma_prec, pi, ComplexValue, PrecisionContext};

pub(crate) fn check_strip(s: &ComplexValue) -> Result<()> {
    if !(s.is_finite() && *s.re() > 0 && *s.re() < 1) {
        return Err(ZetaError::domain(format!("need 0 < Re(s) < 1, got {}", s.to_string_digits(8))));
    }
    Ok(())
}

/// χ(s) = π^{-s/2} Γ(s/2).
pub fn chi(s: &ComplexValue, bits: u32) -> Result<ComplexValue> {
    let s = s.with_prec(bits);
    let half = s.scale_f64(0.5);
    let ln_pi = Float::with_val(bits, pi(bits).ln_ref());
    let p = (-half.scale(&ln_pi)).exp();
    Ok(&p * &gamma_prec(&half, bits)?)
}

/// |χ(s)ζ(s) − χ(1−s)ζ(1−s)| with both ζ values supplied by the caller.
pub fn func_eq_residual_from(
    s: &ComplexValue,
    zeta_s: &ComplexValue,
    zeta_reflected: &ComplexValue,
    ctx: &PrecisionContext,
) -> Result<f64> {
    check_strip(s)?;
    let wp = ctx.work_bits();
    let r = (-s.with_prec(wp)).add_f64(1.0);
    let lhs = &chi(s, wp)? * &zeta_s.with_prec(wp);
    let rhs = &chi(&r, wp)? * &zeta_reflected.with_prec(wp);
    Ok(lhs.dist(&rhs))
}

/// |χ(s)ζ(s) − χ(1−s)ζ(1−s)|, both ζ values from the integral representation.
/// The identity holds exactly, so the residual measures numerical error only.
pub fn func_eq_residual(s: &ComplexValue, ctx: &PrecisionContext) -> Result<f64> {
    check_strip(s)?;
    let r = (-s.clone()).add_f64(1.0);
    let zs = zeta_integral(s, ctx)?;
    let zr = zeta_integral(&r, ctx)?;
    func_eq_residual_from(s, &zs.value, &zr.value, ctx)
}
