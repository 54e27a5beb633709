use rug::Float;

use crate::error::{Result, ZetaError};
use crate::numerics::{ComplexValue, PrecisionContext};

pub(crate) fn check_unit_interval(x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(ZetaError::domain(format!("x must lie in (0, 1), got {x}")));
    }
    Ok(())
}

/// L(x) = log(1-x)/(-x), positive on (0, 1).
pub fn log_ratio(x: f64, prec: u32) -> Float {
    let xf = Float::with_val(prec, x);
    let l1p = Float::with_val(prec, Float::with_val(prec, -&xf).ln_1p());
    Float::with_val(prec, -l1p / &xf)
}

/// M(x) = (L(x) - 1)/x = Σ_{k≥1} x^{k-1}/(k+1).
fn log_ratio_excess(x: f64, prec: u32) -> Float {
    if x < 1.0 / 16.0 {
        let xf = Float::with_val(prec, x);
        let mut sum = Float::new(prec);
        let mut p = Float::with_val(prec, 1);
        let mut k = 1u64;
        loop {
            let term = Float::with_val(prec, &p / (k + 1));
            sum += &term;
            if term.is_zero() || term.get_exp().unwrap_or(0) < sum.get_exp().unwrap_or(0) - prec as i32 - 4 {
                break;
            }
            p *= &xf;
            k += 1;
        }
        sum
    } else {
        let l = log_ratio(x, prec + 8);
        Float::with_val(prec, (l - 1u32) / x)
    }
}

fn l_pow(l: &Float, s: &ComplexValue) -> ComplexValue {
    let wp = l.prec();
    let ln_l = Float::with_val(wp, l.ln_ref());
    s.with_prec(wp).scale(&ln_l).exp()
}

/// Φ(x) = (1-x) L(x)^s.
pub fn phi_x(x: f64, s: &ComplexValue, ctx: &PrecisionContext) -> Result<ComplexValue> {
    check_unit_interval(x)?;
    let wp = ctx.work_bits();
    let l = log_ratio(x, wp);
    let one_minus = Float::with_val(wp, 1 - Float::with_val(wp, x));
    Ok(l_pow(&l, s).scale(&one_minus).with_prec(ctx.bits()))
}

/// Φ'(x) = L(x)^s (-1 + s - s/log(1-x) - s/x), with the last two terms
/// combined as -s M(x)/L(x) so that nothing cancels near x = 0.
pub fn phi_x_prime(x: f64, s: &ComplexValue, ctx: &PrecisionContext) -> Result<ComplexValue> {
    check_unit_interval(x)?;
    let wp = ctx.work_bits();
    let l = log_ratio(x, wp);
    let m = log_ratio_excess(x, wp);
    let sw = s.with_prec(wp);
    let ratio = Float::with_val(wp, &m / &l);
    let bracket = &sw.add_f64(-1.0) - &sw.scale(&ratio);
    Ok((&l_pow(&l, s) * &bracket).with_prec(ctx.bits()))
}

/// Ψ(x) = L(x)^σ.
pub fn psi_x(x: f64, sigma: f64, ctx: &PrecisionContext) -> Result<Float> {
    check_unit_interval(x)?;
    let wp = ctx.work_bits();
    let l = log_ratio(x, wp);
    let p = Float::with_val(wp, Float::with_val(wp, l.ln_ref()) * sigma).exp();
    Ok(Float::with_val(ctx.bits(), p))
}

/// |Φ̂(x)/Φ(x)| where Φ̂ has 1-s in place of s. Equals L(x)^{1-2σ}.
pub fn phi_hat_ratio(x: f64, s: &ComplexValue) -> Result<f64> {
    let ctx = PrecisionContext::new(s.prec().max(128), 1e-30)?;
    let hat = phi_x(x, &(&ComplexValue::one(s.prec()) - s), &ctx)?;
    let plain = phi_x(x, s, &ctx)?;
    Ok((&hat / &plain).abs_f64())
}
