use rug::Float;

use super::phi::check_unit_interval;
use crate::error::{Result, ZetaError};
use crate::integral::{integrate_sized, LogIntegrand, QuadratureSpec, Range};
use crate::numerics::{pi, ComplexValue, PrecisionContext};
use crate::powerseries::phi_psi_coeffs;

/// Coefficients n ≤ this come from power-series extraction in [`nphi_abs_sum`].
pub const NPHI_HEAD: usize = 256;

/// φ(ν) = (1/π) ∫₁^∞ (1-u) e^{sA(u)} sin(sB(u)) u^{-ν-1} du, where
/// A + iB = log L(u+i0) on the upper edge of the cut of Φ. At integer ν
/// this is the Taylor coefficient φ_ν of Φ(x) = (1-x)L(x)^s. Integrated in
/// y = log u.
struct CutKernel {
    s: ComplexValue,
    nu: f64,
}

impl LogIntegrand for CutKernel {
    fn dim(&self) -> usize {
        1
    }

    fn log_bound(&self, x: f64) -> f64 {
        let y = x.exp();
        // log(e^y - 1), without overflow for large y
        let lem = if y > 30.0 { y } else { y.exp_m1().ln() };
        let a = 0.5 * (lem * lem + std::f64::consts::PI.powi(2)).ln() - y;
        let sigma = self.s.re().to_f64();
        let tau = self.s.im().to_f64();
        x + lem + sigma * a + std::f64::consts::PI * tau.abs() - self.nu * y
    }

    fn eval(&self, x: &Float, out: &mut [ComplexValue]) -> Result<()> {
        let wp = x.prec();
        let y = Float::with_val(wp, x.exp_ref());
        let em = Float::with_val(wp, y.exp_m1_ref());
        let lem = Float::with_val(wp, em.ln_ref());
        let pi_w = pi(wp);
        // ln|L| = ½ ln(lem² + π²) - y
        let r2 = Float::with_val(wp, lem.square_ref()) + Float::with_val(wp, pi_w.square_ref());
        let a = Float::with_val(wp, r2.ln() / 2u32) - &y;
        let b = Float::with_val(wp, pi_w.atan2_ref(&Float::with_val(wp, -&lem)));
        let s = &self.s;
        let e = s.scale(&a).exp();
        let sn = s.scale(&b).sin();
        // du u^{-ν-1} = e^{-νy} dy and dy = y dx, with 1 - u = -em
        let mut damp = Float::with_val(wp, &y * self.nu);
        damp = -damp;
        damp.exp_mut();
        let w = Float::with_val(wp, &y * &em) * damp / &pi_w;
        out[0] = -(&e * &sn).scale(&w);
        Ok(())
    }
}

/// Rough size |s|(log ν)^{σ-1}/ν² of φ(ν), used to scale tolerances.
fn phi_scale(s: &ComplexValue, nu: f64) -> f64 {
    let l = nu.ln().max(1.0);
    s.abs_f64().max(1e-3) * l.powf(s.re().to_f64() - 1.0) / (nu * nu)
}

/// φ(ν) for real ν ≥ 1 through the branch-cut integral; relative tolerance ctx.target_tol.
pub fn phi_coeff_continuous(s: &ComplexValue, nu: f64, ctx: &PrecisionContext) -> Result<ComplexValue> {
    if !(nu >= 1.0 && nu.is_finite()) {
        return Err(ZetaError::invalid(format!("coefficient index must be ≥ 1, got {nu}")));
    }
    if !(*s.re() > 0) {
        return Err(ZetaError::domain("branch-cut coefficients need Re(s) > 0"));
    }
    let f = CutKernel { s: s.with_prec(ctx.work_bits()), nu };
    let tol = ctx.target_tol() * phi_scale(s, nu);
    let spec = QuadratureSpec { split_point: 1.0 / nu, ..QuadratureSpec::default() };
    let (r, _) = integrate_sized(&f, Range::Whole, tol, &spec, ctx)?;
    Ok(r.values[0].with_prec(ctx.bits()))
}

/// ∫₀^∞ f(y) dy by the trapezoid rule after y = c·exp((π/2) sinh u), halving
/// the step until two levels agree to `tol` (absolute). Double precision.
fn de_half_line<F: Fn(f64) -> [f64; 2]>(f: F, c: f64, tol: f64) -> [f64; 2] {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let node = |u: f64| -> [f64; 2] {
        let y = c * (half_pi * u.sinh()).exp();
        if !(y > 0.0 && y.is_finite()) {
            return [0.0, 0.0];
        }
        let w = y * half_pi * u.cosh();
        let v = f(y);
        [v[0] * w, v[1] * w]
    };
    let mut h = 0.5;
    let mut sum = node(0.0);
    // Both tails fall off double-exponentially; |u| ≤ 4.5 reaches y ~ c·e^{±70}.
    let u_max = 4.5;
    let mut k = 1;
    while k as f64 * h <= u_max {
        let a = node(k as f64 * h);
        let b = node(-(k as f64) * h);
        sum[0] += a[0] + b[0];
        sum[1] += a[1] + b[1];
        k += 1;
    }
    let mut prev = [sum[0] * h, sum[1] * h];
    for _ in 0..10 {
        // add the midpoints of the current grid
        let mut k = 1;
        while (k as f64) * h / 2.0 <= u_max {
            let u = k as f64 * h / 2.0;
            let a = node(u);
            let b = node(-u);
            sum[0] += a[0] + b[0];
            sum[1] += a[1] + b[1];
            k += 2;
        }
        h /= 2.0;
        let cur = [sum[0] * h, sum[1] * h];
        let diff = (cur[0] - prev[0]).hypot(cur[1] - prev[1]);
        prev = cur;
        if diff <= tol {
            break;
        }
    }
    prev
}

/// φ(ν) from the branch-cut integral in double precision, integrated in y = log u.
fn phi_cut_f64(sigma: f64, tau: f64, nu: f64) -> [f64; 2] {
    let pi = std::f64::consts::PI;
    let integrand = |y: f64| -> [f64; 2] {
        let em = y.exp_m1();
        let lem = if y > 30.0 { y } else { em.ln() };
        let a = 0.5 * (lem * lem + pi * pi).ln() - y;
        let b = pi.atan2(-lem);
        // e^{sa}
        let m = (sigma * a - nu * y + if y > 30.0 { y } else { em.ln() }).exp();
        let (ea_re, ea_im) = (m * (tau * a).cos(), m * (tau * a).sin());
        // sin(sb) = sin(σb)cosh(τb) + i cos(σb)sinh(τb)
        let (sn_re, sn_im) = ((sigma * b).sin() * (tau * b).cosh(), (sigma * b).cos() * (tau * b).sinh());
        let re = ea_re * sn_re - ea_im * sn_im;
        let im = ea_re * sn_im + ea_im * sn_re;
        [-re / pi, -im / pi]
    };
    let scale = {
        let s_abs = sigma.hypot(tau).max(1e-3);
        s_abs * nu.ln().max(1.0).powf(sigma - 1.0) / (nu * nu)
    };
    de_half_line(integrand, 1.0 / nu, 1e-14 * scale)
}

/// F(ν) = ν|φ(ν)|xᵛ in double precision.
fn f_term(sigma: f64, tau: f64, nu: f64, x: f64) -> f64 {
    let p = phi_cut_f64(sigma, tau, nu);
    nu * p[0].hypot(p[1]) * (nu * x.ln()).exp()
}

/// Geometric-tail truncation N_x = ⌈40/(1-x)⌉, so that x^N < e^{-40}.
pub fn truncation_for(x: f64) -> usize {
    (40.0 / (1.0 - x)).ceil() as usize
}

/// Σ_{n=1}^{N} n|φ_n|xⁿ with φ_n the Taylor coefficients of Φ(x) = (1-x)L(x)^s.
pub fn nphi_abs_sum_truncated(s: &ComplexValue, x: f64, n_max: usize, ctx: &PrecisionContext) -> Result<f64> {
    check_unit_interval(x)?;
    let order = n_max.max(2);
    let (phi, _) = phi_psi_coeffs(s, s.re().to_f64(), order, ctx)?;
    let mut sum = 0.0;
    let mut p = 1.0;
    for n in 1..=n_max {
        p *= x;
        sum += n as f64 * phi.coeff(n).abs_f64() * p;
    }
    Ok(sum)
}

/// Σ_{n≥1} n|φ_n|xⁿ = x Φ̃(x). Terms n ≤ 256 come from the Taylor coefficients;
/// the rest is ∫ F(ν)dν with Euler–Maclaurin end corrections, F(ν) = ν|φ(ν)|xᵛ,
/// evaluated in double precision (relative accuracy about 1e-12).
pub fn nphi_abs_sum(s: &ComplexValue, x: f64, ctx: &PrecisionContext) -> Result<f64> {
    check_unit_interval(x)?;
    let need = truncation_for(x);
    if need <= NPHI_HEAD {
        return nphi_abs_sum_truncated(s, x, need, ctx);
    }
    if !(*s.re() > 0) {
        return Err(ZetaError::domain("tail of Σ n|φ_n|xⁿ needs Re(s) > 0"));
    }
    let (sigma, tau) = s.to_f64();
    // sin(sB) grows like cosh(τB) with B ≲ π/log ν on the dominant part of the cut;
    // keep that growth well inside double precision.
    if tau.abs() * std::f64::consts::PI / (NPHI_HEAD as f64).ln() > 20.0 {
        return Err(ZetaError::Unsupported(format!("|Im s| = {} too large for the double-precision tail", tau.abs())));
    }
    let head = nphi_abs_sum_truncated(s, x, NPHI_HEAD, ctx)?;
    let a = NPHI_HEAD as f64;
    let fa = f_term(sigma, tau, a, x);
    let d1 = (f_term(sigma, tau, a + 1.0, x) - f_term(sigma, tau, a - 1.0, x)) / 2.0;
    let lam = -x.ln();
    let tail = de_half_line(|w| [f_term(sigma, tau, a + w, x), 0.0], 1.0 / lam, 1e-13 * head)[0];
    Ok(head + tail - fa / 2.0 - d1 / 12.0)
}
