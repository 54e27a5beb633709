use rug::{Float, Integer};

use super::coeffs::{a_table, CoeffKind, CoeffTable};
use crate::error::{Result, ZetaError};
use crate::integral::{kernel_integral, quad_weighted_detailed, QuadratureSpec, Range, Weight};
use crate::numerics::{ComplexValue, PrecisionContext};

/// Largest |z| accepted by [`f_consistency`].
pub const F_CONSISTENCY_MAX_ABS_Z: f64 = 0.6;

/// Context for a_0..a_n accurate enough that Σ C(n,k) a_k keeps ctx's tolerance.
fn moment_context(n: usize, ctx: &PrecisionContext) -> Result<PrecisionContext> {
    let tol = ctx.target_tol() * 2f64.powi(-(n as i32) - 2);
    PrecisionContext::new(ctx.bits() + n as u32 + 8, tol).map(|c| c.with_max_bits(ctx.max_bits()))
}

/// ã_0..ã_{n_max} with ã_n = ∫₀^∞ φ(t)e^{-t} L_n(-ln t) dt = Σ_k C(n,k) a_k.
pub fn laguerre_table(n_max: usize, ctx: &PrecisionContext) -> Result<CoeffTable> {
    let mctx = moment_context(n_max, ctx)?;
    let a = a_table(n_max, &mctx)?;
    let wp = mctx.work_bits();
    let mut out = Vec::with_capacity(n_max + 1);
    let mut err: f64 = 0.0;
    for n in 0..=n_max {
        let mut acc = Float::new(wp);
        let mut c = Integer::from(1);
        for k in 0..=n {
            acc += Float::with_val(wp, a.values[k].re() * &c);
            c *= (n - k) as u64;
            c /= (k + 1) as u64;
        }
        err = err.max(a.error_estimate * 2f64.powi(n as i32));
        out.push(ComplexValue::from_real(acc).with_prec(ctx.bits()));
    }
    CoeffTable::new(CoeffKind::ATilde, 0.0, out, err)
}

/// ã_n from the moment expansion.
pub fn laguerre_coeff(n: usize, ctx: &PrecisionContext) -> Result<Float> {
    let t = laguerre_table(n, ctx)?;
    Ok(t.values[n].re().clone())
}

/// ã_n by direct quadrature of φ(t)e^{-t}L_n(-ln t).
pub fn laguerre_coeff_direct(n: usize, ctx: &PrecisionContext) -> Result<Float> {
    let r = quad_weighted_detailed(&Weight::Laguerre(n as u32), Range::Whole, &QuadratureSpec::default(), ctx)?;
    Ok(Float::with_val(ctx.bits(), r.values[0].re()))
}

/// Two evaluations of f(z) = ∫₀^∞ φ(t)e^{-t} t^{z/(1-z)} dt.
///
/// The first is the kernel integral at s = 1/(1-z). The second is the
/// Laguerre expansion (1-z) Σ_{n≤N} ã_n zⁿ, which follows from the
/// generating function Σ L_n(x) zⁿ = e^{-xz/(1-z)}/(1-z).
pub fn f_consistency(z: &ComplexValue, n_terms: usize, ctx: &PrecisionContext) -> Result<(ComplexValue, ComplexValue)> {
    if !z.is_finite() || z.abs_f64() > F_CONSISTENCY_MAX_ABS_Z {
        return Err(ZetaError::domain(format!("f_consistency needs |z| ≤ {F_CONSISTENCY_MAX_ABS_Z}")));
    }
    let wp = ctx.work_bits();
    let one = ComplexValue::one(wp);
    let one_minus_z = &one - &z.with_prec(wp);
    let s = one_minus_z.recip();
    let direct = kernel_integral(&s, ctx)?.value;

    let table = laguerre_table(n_terms, ctx)?;
    let mut acc = ComplexValue::zero(wp);
    for c in table.values.iter().rev() {
        acc = &(&acc * z) + c;
    }
    let series = (&acc * &one_minus_z).with_prec(ctx.bits());
    Ok((direct, series))
}
