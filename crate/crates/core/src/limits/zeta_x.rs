use rug::Float;

use crate::error::{Result, ZetaError};
use crate::eval::{EvalResult, Method};
use crate::integral::{integrate_sized, LogIntegrand, QuadratureSpec, Range};
use crate::numerics::{gamma_prec, ln_abs_gamma_f64, ComplexValue, PrecisionContext};
use crate::series::{kernel_block, s_n_table, BlockMode, DEFAULT_BINOMIAL_CUTOFF};

fn check_x(x: f64) -> Result<()> {
    if !(0.0..1.0).contains(&x) {
        return Err(ZetaError::domain(format!("x must lie in [0, 1), got {x}")));
    }
    Ok(())
}

/// (s-1)ζ(s,x) = Σ_{n=1}^{N} S_n(s)xⁿ/(n+1), or its x-derivative Σ n S_n(s)x^{n-1}/(n+1).
pub fn zeta_x_partial(
    s: &ComplexValue,
    x: f64,
    n_max: usize,
    ctx: &PrecisionContext,
    derivative: bool,
) -> Result<ComplexValue> {
    check_x(x)?;
    if n_max == 0 {
        return Err(ZetaError::invalid("series needs at least one term"));
    }
    let kernel_ok = *s.re() > 0;
    let head_n = if kernel_ok { n_max.min(DEFAULT_BINOMIAL_CUTOFF) } else { n_max };
    let table = s_n_table(s, head_n, ctx)?;
    let wp = ctx.work_bits();
    let xf = Float::with_val(wp, x);
    let mut sum = ComplexValue::zero(wp);
    // p = x^{n-1}
    let mut p = Float::with_val(wp, 1);
    for (i, v) in table.values.iter().enumerate() {
        let n = (i + 1) as u64;
        let w = if derivative {
            Float::with_val(wp, &p * n) / (n + 1)
        } else {
            Float::with_val(wp, &p * &xf) / (n + 1)
        };
        sum.add_mul_real(&v.with_prec(wp), &w);
        p *= &xf;
    }
    if n_max > head_n && x > 0.0 {
        let mode = BlockMode::Series { x, derivative };
        let (block, _, _, _) =
            kernel_block(s, head_n + 1, n_max, mode, ctx.target_tol() / 4.0, &QuadratureSpec::default(), ctx)?;
        sum += &block;
    }
    Ok(sum.with_prec(ctx.bits()))
}

/// Integrand e^{-t} t^s h(qx)/q (or t^s e^{-t} h'(qx)) with q = 1 - e^{-t} and
/// h(X) = Σ_{n≥1} Xⁿ/(n+1) = (-log(1-X) - X)/X.
struct AbelKernel {
    s: ComplexValue,
    x: f64,
    derivative: bool,
}

impl AbelKernel {
    /// 1 - qx = (1 - x) + x e^{-t}
    fn one_minus_qx(&self, t: &Float) -> Float {
        let wp = t.prec();
        let e = Float::with_val(wp, (-t.clone()).exp());
        Float::with_val(wp, 1 - Float::with_val(wp, self.x)) + e * self.x
    }
}

/// Σ_{n≥1} X^{n-1}/(n+1) (value) or Σ n X^{n-1}/(n+1) (derivative) for 0 ≤ X < 1/2.
fn h_series(big_x: &Float, derivative: bool) -> Float {
    let wp = big_x.prec();
    let mut sum = Float::new(wp);
    let mut p = Float::with_val(wp, 1);
    let mut n = 1u64;
    while n < 4 * wp as u64 {
        let term = if derivative { Float::with_val(wp, &p * n) / (n + 1) } else { Float::with_val(wp, &p / (n + 1)) };
        sum += &term;
        if term.is_zero() || term.get_exp().unwrap_or(0) < sum.get_exp().unwrap_or(0) - wp as i32 - 4 {
            break;
        }
        p *= big_x;
        n += 1;
    }
    sum
}

impl LogIntegrand for AbelKernel {
    fn dim(&self) -> usize {
        1
    }

    fn log_bound(&self, x: f64) -> f64 {
        let t = x.exp();
        let l1 = -(1.0 - self.x + self.x * (-t).exp()).ln();
        let w = if self.derivative { l1 } else { (self.x * (0.5 + l1)).ln() };
        self.s.re().to_f64() * x - t + w
    }

    fn eval(&self, x: &Float, out: &mut [ComplexValue]) -> Result<()> {
        let wp = x.prec();
        let t = Float::with_val(wp, x.exp_ref());
        let neg = Float::with_val(wp, -&t);
        let q = Float::with_val(wp, -Float::with_val(wp, neg.exp_m1_ref()));
        let big_x = Float::with_val(wp, &q * self.x);
        let w = if big_x < 0.5 {
            let h = h_series(&big_x, self.derivative);
            if self.derivative {
                h
            } else {
                h * self.x
            }
        } else {
            let omx = self.one_minus_qx(&t);
            let ln1 = Float::with_val(wp, omx.ln_ref());
            if self.derivative {
                // (X/(1-X) + log(1-X))/X²
                let a = Float::with_val(wp, &big_x / &omx) + &ln1;
                a / Float::with_val(wp, big_x.square_ref())
            } else {
                // x (-log(1-X)/X - 1)/X
                let a = Float::with_val(wp, -ln1 / &big_x) - 1u32;
                a / &big_x * self.x
            }
        };
        let mag = Float::with_val(wp, Float::with_val(wp, self.s.re() * x) - &t).exp() * w;
        let ang = Float::with_val(wp, self.s.im() * x);
        out[0] = ComplexValue::cis(&ang).scale(&mag);
        Ok(())
    }
}

/// The full Abel sum (s-1)ζ(s,x) = Σ_{n≥1} S_n(s)xⁿ/(n+1) (or its x-derivative)
/// from the closed-form kernel integral; needs Re(s) > 0.
pub fn zeta_x_abel(s: &ComplexValue, x: f64, ctx: &PrecisionContext, derivative: bool) -> Result<EvalResult> {
    check_x(x)?;
    if !(s.is_finite() && *s.re() > 0) {
        return Err(ZetaError::domain("closed-form ζ(s,x) needs Re(s) > 0"));
    }
    if x == 0.0 {
        let value = if derivative { ComplexValue::from_f64(0.5, 0.0, ctx.bits()) } else { ComplexValue::zero(ctx.bits()) };
        return Ok(EvalResult {
            value,
            error_estimate: 0.0,
            method: Method::Integral,
            effort: 0,
            precision_bits: ctx.bits(),
            pole: false,
        });
    }
    let ln_g = ln_abs_gamma_f64(s);
    let itol = (ctx.target_tol().ln() + ln_g - 4f64.ln()).exp().max(f64::MIN_POSITIVE);
    let f = AbelKernel { s: s.with_prec(ctx.work_bits()), x, derivative };
    let (r, wp) = integrate_sized(&f, Range::Whole, itol, &QuadratureSpec::default(), ctx)?;
    let g = gamma_prec(&s.with_prec(wp), wp)?;
    Ok(EvalResult {
        value: (&r.values[0] / &g).with_prec(ctx.bits()),
        error_estimate: r.error / ln_g.exp(),
        method: Method::Integral,
        effort: r.nodes,
        precision_bits: wp,
        pole: false,
    })
}
