//! Self-check suites behind `zetarep verify`. Each check compares an
//! evaluator against a closed form or a second route to the same quantity.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rug::{Integer, Rational};

use crate::error::{Result, ZetaError};
use crate::integral::{kernel_integral, quad_weighted_detailed, zeta_integral, QuadratureSpec, Range, Weight};
use crate::limits::{default_grid, flajolet_coeff_estimate, limit_trajectory, log_ratio, phi_hat_ratio, zeta_x_abel};
use crate::limits::{FlajoletParams, TrajectoryKind};
use crate::numerics::{bernoulli, binomial, gamma, ComplexValue, PrecisionContext};
use crate::powerseries::{ps_exp, ps_log, ps_mul, ps_reciprocal, TruncatedSeries};
use crate::series::{s_n, s_n_asymptotic, s_n_moment_bound, s_n_table, zeta_series, zeta_tail};
use crate::taylor::{a_coeff, b_table, c_determinant, c_from_b, f_consistency, laguerre_coeff, laguerre_coeff_direct};
use crate::zeros::{func_eq_residual, refine_zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Core,
    Series,
    Integral,
    Coeffs,
    Limits,
    Zeros,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Core, Suite::Series, Suite::Integral, Suite::Coeffs, Suite::Limits, Suite::Zeros];

    pub fn parse(tag: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|s| s.tag() == tag)
            .ok_or_else(|| ZetaError::invalid(format!("unknown suite {tag:?}")))
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Series => "series",
            Suite::Integral => "integral",
            Suite::Coeffs => "coeffs",
            Suite::Limits => "limits",
            Suite::Zeros => "zeros",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(&PrecisionContext) -> Result<(bool, String)>;

/// Runs every check of `suite`. An evaluator error counts as a failed check.
pub fn run_suite(suite: Suite, ctx: &PrecisionContext) -> Vec<CheckOutcome> {
    checks(suite)
        .iter()
        .map(|(name, f)| {
            let (passed, detail) = f(ctx).unwrap_or_else(|e| (false, format!("error: {e}")));
            CheckOutcome { suite, name, passed, detail }
        })
        .collect()
}

/// Fixed-width pass/fail table.
pub fn format_table(outcomes: &[CheckOutcome]) -> String {
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for o in outcomes {
        let mark = if o.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{mark}  {:<8} {:<width$}  {}", o.suite.tag(), o.name, o.detail);
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let _ = writeln!(out, "{} checks, {} failed", outcomes.len(), failed);
    out
}

fn checks(suite: Suite) -> &'static [(&'static str, Check)] {
    match suite {
        Suite::Core => &[
            ("gamma_half_squared", gamma_half_squared),
            ("gamma_recurrence", gamma_recurrence),
            ("bernoulli_12", bernoulli_12),
            ("binomial_50_25", binomial_50_25),
            ("exp_log_roundtrip", exp_log_roundtrip),
            ("series_reciprocal", series_reciprocal),
        ],
        Suite::Series => &[
            ("s_n_at_one", s_n_at_one),
            ("s_n_at_zero", s_n_at_zero),
            ("zeta_series_basel", zeta_series_basel),
            ("tail_monotone", tail_monotone),
            ("s_n_asymptotic_ratio", s_n_asymptotic_ratio),
            ("moment_bound", moment_bound),
        ],
        Suite::Integral => &[
            ("residue_integral", residue_integral),
            ("upper_constant", upper_constant),
            ("zeta_even_values", zeta_even_values),
            ("series_integral_agree", series_integral_agree),
        ],
        Suite::Coeffs => &[
            ("a0_is_one", a0_is_one),
            ("determinant_recurrence", determinant_recurrence),
            ("convolution_identity", convolution_identity),
            ("laguerre_routes", laguerre_routes),
            ("f_consistency", f_consistency_check),
        ],
        Suite::Limits => &[
            ("phi_hat_identity", phi_hat_identity),
            ("zeta_x_at_one", zeta_x_at_one),
            ("flajolet_one_term", flajolet_one_term),
            ("l62_trajectory_s2", l62_trajectory),
        ],
        Suite::Zeros => &[("func_eq_residual", func_eq_check), ("first_zero", first_zero)],
    }
}

fn c(re: f64, im: f64, ctx: &PrecisionContext) -> ComplexValue {
    ComplexValue::from_f64(re, im, ctx.bits())
}

/// Tolerance for checks computed at the context precision.
fn tol(ctx: &PrecisionContext) -> f64 {
    (ctx.target_tol() * 100.0).max(1e-30)
}

fn gamma_half_squared(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let g = gamma(&c(0.5, 0.0, ctx), ctx)?;
    let d = (&g * &g).dist(&c(PI, 0.0, ctx));
    Ok((d < tol(ctx).max(1e-15), format!("|Γ(1/2)² - π| = {d:.2e}")))
}

fn gamma_recurrence(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let s = c(0.3, 2.0, ctx);
    let lhs = gamma(&s.add_f64(1.0), ctx)?;
    let rhs = &s * &gamma(&s, ctx)?;
    let d = lhs.rel_dist(&rhs);
    Ok((d < tol(ctx), format!("rel |Γ(s+1) - sΓ(s)| = {d:.2e}")))
}

fn bernoulli_12(_: &PrecisionContext) -> Result<(bool, String)> {
    let b = bernoulli(12);
    let want = Rational::from((-691, 2730));
    Ok((*b.as_rational() == want, format!("B_12 = {}", b.as_rational())))
}

fn binomial_50_25(_: &PrecisionContext) -> Result<(bool, String)> {
    let b = binomial(50, 25)?;
    Ok((b == Integer::from(126_410_606_437_752u64), format!("C(50,25) = {b}")))
}

fn exp_log_roundtrip(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let z = c(0.2, 0.7, ctx);
    let d = z.exp().ln()?.dist(&z);
    Ok((d < tol(ctx), format!("|log(exp z) - z| = {d:.2e}")))
}

fn series_reciprocal(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let a = TruncatedSeries::from_f64(&[1.0, 1.0, 2.0, -0.5, 0.25, 0.0, 3.0], ctx.bits());
    let one = ps_mul(&a, &ps_reciprocal(&a)?)?;
    let back = ps_exp(&ps_log(&a)?)?;
    let mut worst: f64 = 0.0;
    for n in 0..=a.order() {
        let want = if n == 0 { 1.0 } else { 0.0 };
        worst = worst.max(one.coeff(n).dist(&c(want, 0.0, ctx)));
        worst = worst.max(back.coeff(n).dist(a.coeff(n)));
    }
    Ok((worst < tol(ctx), format!("max deviation {worst:.2e}")))
}

fn s_n_at_one(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let t = s_n_table(&c(1.0, 0.0, ctx), 60, ctx)?;
    let worst = (1..=60)
        .map(|n| t.get(n).expect("in range").dist(&c(1.0 / n as f64, 0.0, ctx)) * n as f64)
        .fold(0.0, f64::max);
    Ok((worst < tol(ctx).max(1e-15), format!("max n|S_n(1) - 1/n| = {worst:.2e}")))
}

fn s_n_at_zero(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let t = s_n_table(&c(0.0, 0.0, ctx), 60, ctx)?;
    let worst = (2..=60).map(|n| t.get(n).expect("in range").abs_f64()).fold(0.0, f64::max);
    Ok((worst < tol(ctx), format!("max |S_n(0)|, n ≥ 2: {worst:.2e}")))
}

fn zeta_series_basel(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let r = zeta_series(&c(2.0, 0.0, ctx), 2000, ctx)?;
    let d = r.value.dist(&c(PI * PI / 6.0, 0.0, ctx));
    Ok((d <= r.error_estimate, format!("error {d:.2e}, estimate {:.2e}", r.error_estimate)))
}

fn tail_monotone(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let s = c(0.5, 3.0, ctx);
    let vals: Vec<f64> = [100, 1000, 10_000, 100_000].iter().map(|&n| zeta_tail(&s, n)).collect::<Result<_>>()?;
    let ok = vals.windows(2).all(|w| w[1] < w[0]);
    Ok((ok, format!("tail at N = 1e2..1e5: {:.2e} {:.2e} {:.2e} {:.2e}", vals[0], vals[1], vals[2], vals[3])))
}

fn s_n_asymptotic_ratio(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let s = c(0.5, 1.0, ctx);
    let r = &s_n(&s, 100, ctx)? / &s_n_asymptotic(&s, 100, 0, ctx)?;
    let d = r.dist(&c(1.0, 0.0, ctx));
    Ok((d < 0.5, format!("|ratio - 1| at n = 100: {d:.3}")))
}

fn moment_bound(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for sigma in [0.3, 0.7] {
        let s = c(sigma, 0.0, ctx);
        let g = gamma(&s, ctx)?.re().to_f64();
        let t = s_n_table(&s, 50, ctx)?;
        for n in 2..=50 {
            let lhs = g * t.get(n).expect("in range").re().to_f64() / (n + 1) as f64;
            worst = worst.max(lhs / s_n_moment_bound(sigma, n)?);
        }
    }
    Ok((worst <= 1.0, format!("max integral/bound = {worst:.4}")))
}

fn residue_integral(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let v = kernel_integral(&c(1.0, 0.0, ctx), ctx)?;
    let d = v.value.dist(&c(1.0, 0.0, ctx));
    Ok((d < 1e-12, format!("|∫φe^(-t) - 1| = {d:.2e}")))
}

fn upper_constant(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let r = quad_weighted_detailed(&Weight::None, Range::Above, &QuadratureSpec::default(), ctx)?;
    let v = r.values[0].re().to_f64();
    Ok(((v - 0.58).abs() <= 0.005, format!("∫₁^∞ φe^(-t) = {v:.6}")))
}

fn zeta_even_values(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let z2 = zeta_integral(&c(2.0, 0.0, ctx), ctx)?.value.dist(&c(PI.powi(2) / 6.0, 0.0, ctx));
    let z4 = zeta_integral(&c(4.0, 0.0, ctx), ctx)?.value.dist(&c(PI.powi(4) / 90.0, 0.0, ctx));
    Ok((z2 < 1e-14 && z4 < 1e-14, format!("ζ(2) error {z2:.2e}, ζ(4) error {z4:.2e}")))
}

fn series_integral_agree(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let s = c(0.5, 3.0, ctx);
    let n = 2000;
    let a = zeta_series(&s, n, ctx)?.value;
    let b = zeta_integral(&s, ctx)?.value;
    let d = a.dist(&b);
    let bound = zeta_tail(&s, n)?;
    Ok((d <= bound, format!("|series - integral| = {d:.2e}, tail bound {bound:.2e}")))
}

fn a0_is_one(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let d = a_coeff(0, ctx)?.dist(&c(1.0, 0.0, ctx));
    Ok((d < 1e-12, format!("|a_0 - 1| = {d:.2e}")))
}

fn determinant_recurrence(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let b = b_table(1.0, 8, ctx)?;
    let cs = c_from_b(&b)?;
    let mut worst: f64 = 0.0;
    for n in 0..=8 {
        worst = worst.max(c_determinant(&b, n)?.rel_dist(&cs.values[n]));
    }
    Ok((worst < tol(ctx), format!("max rel deviation, y = 1, n ≤ 8: {worst:.2e}")))
}

fn convolution_identity(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let b = b_table(2.0, 20, ctx)?;
    let cs = c_from_b(&b)?;
    let prod = ps_mul(&b.as_series(), &cs.as_series())?;
    let worst = (0..=20)
        .map(|n| prod.coeff(n).dist(&c(if n == 0 { 1.0 } else { 0.0 }, 0.0, ctx)))
        .fold(0.0, f64::max);
    Ok((worst < tol(ctx), format!("max |(b·c)_n - δ_n0| = {worst:.2e}")))
}

fn laguerre_routes(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let n = 6;
    let a = laguerre_coeff(n, ctx)?;
    let b = laguerre_coeff_direct(n, ctx)?;
    let d = rug::Float::with_val(ctx.bits(), &a - &b).abs().to_f64();
    Ok((d < tol(ctx).max(1e-15), format!("ã_6 binomial vs direct: {d:.2e}")))
}

fn f_consistency_check(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let (direct, series) = f_consistency(&c(0.3, 0.0, ctx), 40, ctx)?;
    let d = direct.dist(&series);
    Ok((d < 1e-6, format!("z = 0.3, N = 40: {d:.2e}")))
}

fn phi_hat_identity(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for x in [0.1, 0.5, 0.9, 0.999] {
        for (sig, t) in [(0.5, 2.0), (0.3, 1.0), (0.8, -4.0)] {
            let r = phi_hat_ratio(x, &c(sig, t, ctx))?;
            let l = log_ratio(x, 64).to_f64();
            let want = l.powf(1.0 - 2.0 * sig);
            worst = worst.max((r - want).abs() / want);
        }
    }
    Ok((worst < 1e-12, format!("max rel deviation {worst:.2e}")))
}

fn zeta_x_at_one(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let x: f64 = 0.9;
    let want = 1.0 + (1.0 - x) / x * (-x).ln_1p();
    let v = zeta_x_abel(&c(1.0, 0.0, ctx), x, ctx, false)?.value;
    let d = v.dist(&c(want, 0.0, ctx));
    Ok((d < 1e-14, format!("s = 1, x = 0.9: {d:.2e}")))
}

fn flajolet_one_term(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let n = 1000usize;
    let ln_n = (n as f64).ln();
    let est = flajolet_coeff_estimate(&FlajoletParams::new(0, c(0.3, 0.0, ctx), 1)?, n, ctx)?;
    let want = 0.3 / (n as f64 * ln_n.powf(0.7));
    let d = (est.re().to_f64() - want).abs() / want;
    Ok((d < 1e-12, format!("α = 0, β = 0.3, n = 1000: rel {d:.2e}")))
}

fn l62_trajectory(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let tr = limit_trajectory(TrajectoryKind::L62DerivRatio, &c(2.0, 0.0, ctx), &default_grid(), None, ctx)?;
    let d: Vec<f64> = tr.samples.iter().filter_map(|p| p.distance).collect();
    let ok = d.len() == tr.samples.len() && d.windows(2).all(|w| w[1] <= w[0]);
    let last = d.last().copied().unwrap_or(f64::NAN);
    Ok((ok, format!("distance non-increasing, final {last:.3e}")))
}

fn func_eq_check(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let r = func_eq_residual(&c(0.5, 3.0, ctx), ctx)?;
    Ok((r < 1e-10, format!("s = 1/2+3i: {r:.2e}")))
}

fn first_zero(ctx: &PrecisionContext) -> Result<(bool, String)> {
    let z = refine_zero(&c(0.5, 14.0, ctx), ctx)?;
    let t = z.s.im().to_f64();
    let ok = (t - 14.134_725_141_734_693).abs() < 1e-6 && z.func_eq_residual < 1e-8;
    Ok((ok, format!("t = {t:.9}, functional-equation residual {:.2e}", z.func_eq_residual)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_tags_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.tag()).unwrap(), s);
        }
        assert!(Suite::parse("nope").is_err());
    }

    #[test]
    fn core_suite_passes() {
        let ctx = PrecisionContext::new(128, 1e-20).unwrap();
        let out = run_suite(Suite::Core, &ctx);
        assert!(out.iter().all(|o| o.passed), "{}", format_table(&out));
    }
}
