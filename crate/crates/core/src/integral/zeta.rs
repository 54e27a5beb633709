use super::quadrature::{QuadratureSpec, Range};
use super::weighted::{integrate_sized, KernelIntegrand, KernelWeight};
use crate::error::{Result, ZetaError};
use crate::eval::{EvalResult, Method};
use crate::numerics::{gamma_prec, ln_abs_gamma_f64, ComplexValue, PrecisionContext};

fn check_half_plane(s: &ComplexValue) -> Result<()> {
    if !(s.is_finite() && *s.re() > 0) {
        return Err(ZetaError::domain(format!(
            "integral representation needs Re(s) > 0, got {}",
            s.to_string_digits(8)
        )));
    }
    Ok(())
}

fn is_one(s: &ComplexValue) -> bool {
    s.im().is_zero() && *s.re() == 1
}

/// I(s) = ∫₀^∞ φ(t)e^{-t}t^{s-1} dt to absolute tolerance `tol`.
pub(crate) fn kernel_integral_tol(
    s: &ComplexValue,
    tol: f64,
    spec: &QuadratureSpec,
    ctx: &PrecisionContext,
) -> Result<EvalResult> {
    check_half_plane(s)?;
    let f = KernelIntegrand::new(
        s.with_prec(ctx.work_bits()),
        KernelWeight::Powers { n_max: 0, inv_factorial: false },
    );
    let (r, wp) = integrate_sized(&f, Range::Whole, tol, spec, ctx)?;
    Ok(EvalResult {
        value: r.values.into_iter().next().expect("one component"),
        error_estimate: r.error,
        method: Method::Integral,
        effort: r.nodes,
        precision_bits: wp,
        pole: false,
    })
}

/// I(s) = ∫₀^∞ φ(t)e^{-t}t^{s-1} dt = Γ(s)(s-1)ζ(s), entire in Re(s) > 0.
pub fn kernel_integral(s: &ComplexValue, ctx: &PrecisionContext) -> Result<EvalResult> {
    let mut r = kernel_integral_tol(s, ctx.target_tol(), &QuadratureSpec::default(), ctx)?;
    r.value = r.value.with_prec(ctx.bits());
    Ok(r)
}

/// Absolute tolerance on I(s) so that I(s)/scale meets `tol`.
fn scaled_tol(tol: f64, ln_scale: f64) -> f64 {
    (tol.ln() + ln_scale - 4f64.ln()).exp().max(f64::MIN_POSITIVE)
}

fn divide(
    s: &ComplexValue,
    ln_scale: f64,
    with_pole_factor: bool,
    spec: &QuadratureSpec,
    ctx: &PrecisionContext,
) -> Result<EvalResult> {
    let tol = scaled_tol(ctx.target_tol(), ln_scale);
    let r = kernel_integral_tol(s, tol, spec, ctx)?;
    let wp = r.precision_bits;
    let mut den = gamma_prec(&s.with_prec(wp), wp)?;
    if with_pole_factor {
        den = &den * &s.with_prec(wp).add_f64(-1.0);
    }
    let value = &r.value / &den;
    let den_abs = den.abs_f64();
    let rounding = value.abs_f64() * (-(ctx.bits() as f64) + 4.0).exp2();
    Ok(EvalResult {
        value: value.with_prec(ctx.bits()),
        error_estimate: r.error_estimate / den_abs + rounding,
        method: Method::Integral,
        effort: r.effort,
        precision_bits: wp,
        pole: false,
    })
}

/// (s-1)ζ(s) = I(s)/Γ(s); finite at s = 1 where it equals 1.
pub fn s_minus_one_zeta(s: &ComplexValue, ctx: &PrecisionContext) -> Result<EvalResult> {
    s_minus_one_zeta_with(s, &QuadratureSpec::default(), ctx)
}

pub fn s_minus_one_zeta_with(s: &ComplexValue, spec: &QuadratureSpec, ctx: &PrecisionContext) -> Result<EvalResult> {
    check_half_plane(s)?;
    divide(s, ln_abs_gamma_f64(s), false, spec, ctx)
}

/// ζ(s) = I(s)/(Γ(s)(s-1)) for Re(s) > 0, s ≠ 1.
pub fn zeta_integral(s: &ComplexValue, ctx: &PrecisionContext) -> Result<EvalResult> {
    zeta_integral_with(s, &QuadratureSpec::default(), ctx)
}

pub fn zeta_integral_with(s: &ComplexValue, spec: &QuadratureSpec, ctx: &PrecisionContext) -> Result<EvalResult> {
    check_half_plane(s)?;
    if is_one(s) {
        return Err(ZetaError::Pole("zeta at s = 1".into()));
    }
    let sm1 = s.add_f64(-1.0).abs_f64();
    divide(s, ln_abs_gamma_f64(s) + sm1.ln(), true, spec, ctx)
}
