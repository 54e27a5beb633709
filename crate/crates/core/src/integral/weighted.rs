use rug::Float;

use super::kernel::{ln_phi_exp_bound, phi_exp};
use super::quadrature::{integrate, plan_log_max, LogIntegrand, QuadResult, QuadratureSpec, Range};
use crate::error::{Result, ZetaError};
use crate::numerics::{ComplexValue, PrecisionContext};
use crate::taylor::laguerre_poly;

/// Extra factor multiplying φ(t)e^{-t} under the integral sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weight {
    None,
    /// (log t)^n
    LogPow(u32),
    /// (log t)^n t^{iy}
    LogPowTiy { n: u32, y: f64 },
    /// L_n(-log t)
    Laguerre(u32),
}

#[derive(Debug, Clone)]
pub(crate) enum KernelWeight {
    /// Components x^k (divided by k! when `inv_factorial`), k = 0..=n_max.
    Powers { n_max: usize, inv_factorial: bool },
    Laguerre(usize),
}

/// g(x) = (φ(eˣ)e^{-eˣ} - [1/2]) e^{a x} w(x) with a complex exponent a.
/// With a = s this is the Mellin integrand of φ(t)e^{-t} at s.
#[derive(Debug, Clone)]
pub(crate) struct KernelIntegrand {
    pub exponent: ComplexValue,
    pub weight: KernelWeight,
    pub subtract_half: bool,
}

impl KernelIntegrand {
    pub fn new(exponent: ComplexValue, weight: KernelWeight) -> Self {
        KernelIntegrand { exponent, weight, subtract_half: false }
    }

    fn ln_weight_bound(&self, x: f64) -> f64 {
        let ax = x.abs();
        match self.weight {
            KernelWeight::Powers { n_max, inv_factorial } => {
                let mut best: f64 = 0.0;
                let mut lp = 0.0;
                let lx = ax.ln();
                for k in 1..=n_max {
                    lp += lx;
                    if inv_factorial {
                        lp -= (k as f64).ln();
                    }
                    best = best.max(lp);
                }
                best
            }
            KernelWeight::Laguerre(n) => {
                // |L_n(z)| ≤ Σ C(n,k)|z|^k/k!
                let mut term = 1.0f64;
                let mut sum = 1.0f64;
                for k in 0..n {
                    term *= (n - k) as f64 * ax / (((k + 1) * (k + 1)) as f64);
                    sum += term;
                }
                sum.ln()
            }
        }
    }
}

impl LogIntegrand for KernelIntegrand {
    fn dim(&self) -> usize {
        match self.weight {
            KernelWeight::Powers { n_max, .. } => n_max + 1,
            KernelWeight::Laguerre(_) => 1,
        }
    }

    fn log_bound(&self, x: f64) -> f64 {
        let t = x.exp();
        let k = if self.subtract_half { (t / 5.0).min(0.5).ln() } else { ln_phi_exp_bound(t) };
        k + self.exponent.re().to_f64() * x + self.ln_weight_bound(x)
    }

    fn eval(&self, x: &Float, out: &mut [ComplexValue]) -> Result<()> {
        let wp = x.prec();
        let t = Float::with_val(wp, x.exp_ref());
        let mut k = phi_exp(&t, wp)?;
        if self.subtract_half {
            k -= 0.5f64;
        }
        // e^{a x} = e^{Re(a) x} cis(Im(a) x)
        let a = &self.exponent;
        let mag = Float::with_val(wp, Float::with_val(wp, a.re() * x).exp()) * &k;
        let base = if a.im().is_zero() {
            ComplexValue::from_real(mag)
        } else {
            let ang = Float::with_val(wp, a.im() * x);
            ComplexValue::cis(&ang).scale(&mag)
        };
        match self.weight {
            KernelWeight::Powers { inv_factorial, .. } => {
                let mut cur = base;
                for (k, slot) in out.iter_mut().enumerate() {
                    if k > 0 {
                        cur = cur.scale(x);
                        if inv_factorial {
                            cur = cur.div_u64(k as u64);
                        }
                    }
                    *slot = cur.clone();
                }
            }
            KernelWeight::Laguerre(n) => {
                let arg = Float::with_val(wp, -x);
                out[0] = base.scale(&laguerre_poly(n, &arg));
            }
        }
        Ok(())
    }
}

/// Working precision so that a quadrature whose integrand peaks at e^{log_max}
/// can resolve an absolute tolerance `tol`.
pub(crate) fn sized_precision(log_max: Option<f64>, tol: f64, ctx: &PrecisionContext) -> Result<u32> {
    let base = ctx.work_bits();
    let Some(lm) = log_max else { return Ok(base) };
    let need = ((lm - tol.ln()) / std::f64::consts::LN_2).ceil() + 32.0;
    let wp = (need.max(0.0) as u32).max(base);
    if wp > ctx.max_bits() {
        return Err(ZetaError::PrecisionBudget { needed: wp as u64, max: ctx.max_bits() });
    }
    Ok(wp)
}

/// Integrate with the precision raised to what the integrand's dynamic range needs.
pub(crate) fn integrate_sized<F: LogIntegrand>(
    f: &F,
    range: Range,
    tol: f64,
    spec: &QuadratureSpec,
    ctx: &PrecisionContext,
) -> Result<(QuadResult, u32)> {
    let wp = sized_precision(plan_log_max(f, range, spec, tol)?, tol, ctx)?;
    Ok((integrate(f, range, tol, spec, wp)?, wp))
}

fn integrand_for(weight: &Weight, prec: u32) -> Result<KernelIntegrand> {
    Ok(match *weight {
        Weight::None => KernelIntegrand::new(ComplexValue::one(prec), KernelWeight::Powers { n_max: 0, inv_factorial: false }),
        Weight::LogPow(n) => KernelIntegrand::new(
            ComplexValue::one(prec),
            KernelWeight::Powers { n_max: n as usize, inv_factorial: false },
        ),
        Weight::LogPowTiy { n, y } => {
            if !y.is_finite() {
                return Err(ZetaError::invalid("weight parameter y must be finite"));
            }
            KernelIntegrand::new(
                ComplexValue::from_f64(1.0, y, prec),
                KernelWeight::Powers { n_max: n as usize, inv_factorial: false },
            )
        }
        Weight::Laguerre(n) => KernelIntegrand::new(ComplexValue::one(prec), KernelWeight::Laguerre(n as usize)),
    })
}

/// ∫ φ(t)e^{-t} w(t) dt over `range`, to ctx.target_tol, with the quadrature diagnostics.
pub fn quad_weighted_detailed(
    weight: &Weight,
    range: Range,
    spec: &QuadratureSpec,
    ctx: &PrecisionContext,
) -> Result<QuadResult> {
    let f = integrand_for(weight, ctx.work_bits())?;
    let (mut r, _) = integrate_sized(&f, range, ctx.target_tol(), spec, ctx)?;
    // Power weights return every lower power too; keep the requested one.
    let last = r.values.pop().expect("integrand has at least one component");
    r.values = vec![last];
    Ok(r)
}

/// ∫₀^∞ φ(t)e^{-t} w(t) dt to ctx.target_tol.
pub fn quad_weighted(weight: &Weight, spec: &QuadratureSpec, ctx: &PrecisionContext) -> Result<ComplexValue> {
    let r = quad_weighted_detailed(weight, Range::Whole, spec, ctx)?;
    Ok(r.values.into_iter().next().expect("one component").with_prec(ctx.bits()))
}
