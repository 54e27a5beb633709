use rug::ops::Pow;
use rug::Float;

use super::binomial::{cancellation_bits, s_n_table};
use crate::error::{Result, ZetaError};
use crate::eval::{EvalResult, Method};
use crate::integral::{integrate_sized, LogIntegrand, QuadratureSpec, Range};
use crate::numerics::{gamma_prec, ln_abs_gamma_c64, ln_abs_gamma_f64, ComplexValue, PrecisionContext};

/// Terms n ≤ this are summed from the binomial tableau by default.
pub const DEFAULT_BINOMIAL_CUTOFF: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesOptions {
    /// Largest n taken from the exact binomial tableau. Terms above it come
    /// from the kernel identity S_n(s) = (1/Γ(s)) ∫ (1-e^{-t})^{n-1} e^{-t} t^{s-1} dt.
    pub binomial_cutoff: usize,
    /// Return the raw sum Σ S_n/(n+1) at s = 1 instead of a pole error.
    pub allow_pole: bool,
    pub quadrature: QuadratureSpec,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        SeriesOptions {
            binomial_cutoff: DEFAULT_BINOMIAL_CUTOFF,
            allow_pole: false,
            quadrature: QuadratureSpec::default(),
        }
    }
}

/// Heuristic bound on |Σ_{n>N} S_n(s)/(n+1)|: 10 (log N)^{σ-1} / (N |Γ(s)|).
pub fn zeta_tail(s: &ComplexValue, n: usize) -> Result<f64> {
    if n < 10 {
        return Err(ZetaError::invalid(format!("tail heuristic needs N ≥ 10, got {n}")));
    }
    Ok(tail_heuristic(s, n))
}

fn tail_heuristic(s: &ComplexValue, n: usize) -> f64 {
    let sigma = s.re().to_f64();
    let nf = (n.max(3)) as f64;
    let ln_val = 10f64.ln() + (sigma - 1.0) * nf.ln().ln() - nf.ln() - ln_abs_gamma_f64(s);
    ln_val.exp()
}

/// K = (1 - 1/(2n-1))^{n-1}/√(2n-1), the maximum over u ∈ (0, 1) of
/// (1-u)^{n-1}√u, attained at u = e^{-t} = 1/(2n-1).
pub fn kernel_peak(n: usize) -> Result<f64> {
    if n < 1 {
        return Err(ZetaError::invalid("kernel peak needs n ≥ 1"));
    }
    let m = (2 * n - 1) as f64;
    Ok(((n - 1) as f64 * (-1.0 / m).ln_1p()).exp() / m.sqrt())
}

/// Upper bound 2^σ Γ(σ)/((n+1)√(2n-1)) for
/// (1/(n+1)) ∫₀^∞ (1-e^{-t})^{n-1} e^{-t} t^{σ-1} dt = Γ(σ)S_n(σ)/(n+1), σ > 0.
pub fn s_n_moment_bound(sigma: f64, n: usize) -> Result<f64> {
    if !(sigma > 0.0) || n < 1 {
        return Err(ZetaError::domain(format!("bound needs σ > 0 and n ≥ 1, got σ = {sigma}, n = {n}")));
    }
    let ln = sigma * 2f64.ln() + ln_abs_gamma_c64(sigma, 0.0) - ((n + 1) as f64).ln() - 0.5 * ((2 * n - 1) as f64).ln();
    Ok(ln.exp())
}

/// Coefficients c_n multiplying q^{n-1} in a block of the kernel sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum BlockMode {
    /// c_n = 1 (a single S_n, first = last).
    Single,
    /// c_n = xⁿ/(n+1), or n x^{n-1}/(n+1) for the x-derivative.
    Series { x: f64, derivative: bool },
}

/// Integrand for Σ_{n=first}^{last} q^{n-1} c_n with q = 1 - e^{-t}.
struct BinomialKernel {
    s: ComplexValue,
    first: usize,
    last: usize,
    mode: BlockMode,
}

impl BinomialKernel {
    fn ln_q(t: f64) -> f64 {
        (-(-t).exp_m1()).ln()
    }

    /// -ln(1 - qx), the log of the geometric sum bound.
    fn ln_geometric(t: f64, x: f64) -> f64 {
        if x == 1.0 {
            t
        } else {
            -(-(-(-t).exp_m1()) * x).ln_1p()
        }
    }
}

impl LogIntegrand for BinomialKernel {
    fn dim(&self) -> usize {
        1
    }

    fn log_bound(&self, x: f64) -> f64 {
        let t = x.exp();
        let lq = Self::ln_q(t);
        let head = (self.first as f64 - 1.0) * lq;
        let rest = match self.mode {
            BlockMode::Single => 0.0,
            BlockMode::Series { x: r, derivative } => {
                let terms = (self.last - self.first + 1) as f64;
                let count = terms.ln().min(Self::ln_geometric(t, r));
                let lr = r.ln();
                if derivative {
                    (self.first as f64 - 1.0) * lr + count
                } else {
                    self.first as f64 * lr + count - ((self.first + 1) as f64).ln()
                }
            }
        };
        self.s.re().to_f64() * x - t + head + rest
    }

    fn eval(&self, x: &Float, out: &mut [ComplexValue]) -> Result<()> {
        let wp = x.prec();
        let t = Float::with_val(wp, x.exp_ref());
        let neg = Float::with_val(wp, -&t);
        let q = Float::with_val(wp, -Float::with_val(wp, neg.exp_m1_ref()));
        let p = Float::with_val(wp, (&q).pow((self.first - 1) as u32));
        let w = match self.mode {
            BlockMode::Single => p,
            BlockMode::Series { x: r, derivative } => {
                let rf = Float::with_val(wp, r);
                let mut p = p;
                if derivative {
                    p *= Float::with_val(wp, (&rf).pow((self.first - 1) as u32));
                } else {
                    p *= Float::with_val(wp, (&rf).pow(self.first as u32));
                }
                let ratio = Float::with_val(wp, &q * &rf);
                // Terms shrink like (qx)^m; stop once the rest is below 2^-wp of the first.
                let tf = t.to_f64();
                let decay = Self::ln_q(tf) + r.ln();
                let budget = ((wp as f64) * std::f64::consts::LN_2 + tf + 8.0) / (-decay).max(1e-300);
                let count = (self.last - self.first + 1).min((budget.ceil() as usize).saturating_add(1));
                let mut sum = Float::new(wp);
                for k in 0..count {
                    let n = self.first + k;
                    if derivative {
                        sum += Float::with_val(wp, &p * n as u64) / (n + 1) as u64;
                    } else {
                        sum += Float::with_val(wp, &p / (n + 1) as u64);
                    }
                    p *= &ratio;
                }
                sum
            }
        };
        // e^{s x} e^{-t} w
        let mag = Float::with_val(wp, Float::with_val(wp, self.s.re() * x) - &t).exp() * w;
        let ang = Float::with_val(wp, self.s.im() * x);
        out[0] = ComplexValue::cis(&ang).scale(&mag);
        Ok(())
    }
}

/// Σ_{n=first}^{last} S_n(s) c_n through the kernel integral, to absolute `tol`.
pub(crate) fn kernel_block(
    s: &ComplexValue,
    first: usize,
    last: usize,
    mode: BlockMode,
    tol: f64,
    spec: &QuadratureSpec,
    ctx: &PrecisionContext,
) -> Result<(ComplexValue, f64, usize, u32)> {
    let ln_g = ln_abs_gamma_f64(s);
    let itol = (tol.ln() + ln_g).exp().max(f64::MIN_POSITIVE);
    let f = BinomialKernel { s: s.with_prec(ctx.work_bits()), first, last, mode };
    let (r, wp) = integrate_sized(&f, Range::Whole, itol, spec, ctx)?;
    let g = gamma_prec(&s.with_prec(wp), wp)?;
    let v = &r.values[0] / &g;
    Ok((v, r.error / ln_g.exp(), r.nodes, wp))
}

/// S_n(s) from (1/Γ(s)) ∫₀^∞ (1-e^{-t})^{n-1} e^{-t} t^{s-1} dt; needs Re(s) > 0.
pub fn s_n_kernel(s: &ComplexValue, n: usize, ctx: &PrecisionContext) -> Result<EvalResult> {
    if n == 0 {
        return Err(ZetaError::invalid("S_n needs n ≥ 1"));
    }
    if *s.re() <= 0 {
        return Err(ZetaError::domain("kernel form of S_n needs Re(s) > 0"));
    }
    let ln_g = ln_abs_gamma_f64(s);
    let itol = (ctx.target_tol().ln() + ln_g).exp().max(f64::MIN_POSITIVE);
    let f = BinomialKernel { s: s.with_prec(ctx.work_bits()), first: n, last: n, mode: BlockMode::Single };
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

/// Partial sum P_N(s) = Σ_{n≤N} S_n(s)/(n+1) with its numerical error and effort.
pub fn series_partial_sum(
    s: &ComplexValue,
    n_max: usize,
    opts: &SeriesOptions,
    ctx: &PrecisionContext,
) -> Result<(ComplexValue, f64, u32)> {
    if n_max == 0 {
        return Err(ZetaError::invalid("series needs at least one term"));
    }
    let head_n = n_max.min(opts.binomial_cutoff.max(1));
    let table = s_n_table(s, head_n, ctx)?;
    let mut bits = table.precision_used;
    let wp = ctx.work_bits();
    let mut sum = ComplexValue::zero(wp);
    for (i, v) in table.values.iter().enumerate() {
        sum += &v.with_prec(wp).div_u64((i + 2) as u64);
    }
    let mut err = (table.len() as f64) * ctx.target_tol() * 2f64.powi(-20);
    if n_max > head_n {
        let tol = ctx.target_tol() / 4.0;
        let mode = BlockMode::Series { x: 1.0, derivative: false };
        let (block, e, _, b) = kernel_block(s, head_n + 1, n_max, mode, tol, &opts.quadrature, ctx)?;
        sum += &block;
        err += e;
        bits = bits.max(b);
    }
    Ok((sum.with_prec(ctx.bits()), err, bits))
}

/// ζ(s) ≈ (Σ_{n≤N} S_n(s)/(n+1)) / (s-1) for Re(s) > 0.
pub fn zeta_series(s: &ComplexValue, max_terms: usize, ctx: &PrecisionContext) -> Result<EvalResult> {
    zeta_series_with(s, max_terms, &SeriesOptions::default(), ctx)
}

pub fn zeta_series_with(
    s: &ComplexValue,
    max_terms: usize,
    opts: &SeriesOptions,
    ctx: &PrecisionContext,
) -> Result<EvalResult> {
    if !(s.is_finite() && *s.re() > 0) {
        return Err(ZetaError::domain(format!("series needs Re(s) > 0, got {}", s.to_string_digits(8))));
    }
    if max_terms == 0 {
        return Err(ZetaError::invalid("series needs at least one term"));
    }
    // Fail early when even the head table is out of budget.
    cancellation_bits(max_terms.min(opts.binomial_cutoff.max(1)), s.re().to_f64(), ctx)?;
    let at_pole = s.im().is_zero() && *s.re() == 1;
    if at_pole && !opts.allow_pole {
        return Err(ZetaError::Pole("zeta at s = 1 (request the raw sum instead)".into()));
    }
    let (sum, num_err, bits) = series_partial_sum(s, max_terms, opts, ctx)?;
    let tail = tail_heuristic(s, max_terms);
    if at_pole {
        return Ok(EvalResult {
            value: sum,
            error_estimate: tail + num_err,
            method: Method::Series,
            effort: max_terms,
            precision_bits: bits,
            pole: true,
        });
    }
    let sm1 = s.add_f64(-1.0);
    let d = sm1.abs_f64();
    Ok(EvalResult {
        value: (&sum / &sm1).with_prec(ctx.bits()),
        error_estimate: (tail + num_err) / d,
        method: Method::Series,
        effort: max_terms,
        precision_bits: bits,
        pole: false,
    })
}
