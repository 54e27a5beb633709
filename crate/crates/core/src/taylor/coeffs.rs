use rug::{Float, Integer};
use serde::Serialize;

use crate::error::{Result, ZetaError};
use crate::integral::{integrate_sized, quad_weighted_detailed, KernelIntegrand, KernelWeight, QuadratureSpec, Range, Weight};
use crate::numerics::{ComplexValue, PrecisionContext};
use crate::powerseries::{ps_reciprocal, TruncatedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffKind {
    /// Taylor coefficients of (s-1)ζ(s)Γ(s) at s = 1.
    A,
    /// Taylor coefficients of (s-1)ζ(s)Γ(s) at s = 1 + iy.
    B,
    /// Taylor coefficients of 1/((s-1)ζ(s)Γ(s)) at s = 1 + iy.
    C,
    /// Laguerre coefficients ∫φ(t)e^{-t}L_n(-ln t)dt.
    ATilde,
}

impl std::fmt::Display for CoeffKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CoeffKind::A => "a",
            CoeffKind::B => "b",
            CoeffKind::C => "c",
            CoeffKind::ATilde => "a_tilde",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CoeffTable {
    pub kind: CoeffKind,
    pub y: f64,
    pub values: Vec<ComplexValue>,
    pub n_max: usize,
    /// Largest absolute error estimate over the table.
    pub error_estimate: f64,
}

impl CoeffTable {
    pub fn new(kind: CoeffKind, y: f64, values: Vec<ComplexValue>, error_estimate: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(ZetaError::invalid("coefficient table is empty"));
        }
        let n_max = values.len() - 1;
        Ok(CoeffTable { kind, y, values, n_max, error_estimate })
    }

    pub fn as_series(&self) -> TruncatedSeries {
        TruncatedSeries::new(self.values.clone())
    }
}

/// a_0..a_{n_max} and b_0..b_{n_max} share one quadrature: components
/// (log t)^k/k! · t^{iy} φ(t)e^{-t}.
fn moment_table(y: f64, n_max: usize, ctx: &PrecisionContext) -> Result<(Vec<ComplexValue>, f64)> {
    let f = KernelIntegrand::new(
        ComplexValue::from_f64(1.0, y, ctx.work_bits()),
        KernelWeight::Powers { n_max, inv_factorial: true },
    );
    let (r, _) = integrate_sized(&f, Range::Whole, ctx.target_tol(), &QuadratureSpec::default(), ctx)?;
    let err = r.error;
    Ok((r.values.into_iter().map(|v| v.with_prec(ctx.bits())).collect(), err))
}

/// a_0..a_{n_max} with a_n = (1/n!) ∫₀^∞ φ(t)e^{-t}(log t)^n dt.
pub fn a_table(n_max: usize, ctx: &PrecisionContext) -> Result<CoeffTable> {
    let (mut v, err) = moment_table(0.0, n_max, ctx)?;
    for c in v.iter_mut() {
        *c = ComplexValue::from_real(c.re().clone());
    }
    CoeffTable::new(CoeffKind::A, 0.0, v, err)
}

/// a_n = (1/n!) ∫₀^∞ φ(t)e^{-t}(log t)^n dt.
pub fn a_coeff(n: usize, ctx: &PrecisionContext) -> Result<ComplexValue> {
    let r = quad_weighted_detailed(&Weight::LogPow(n as u32), Range::Whole, &QuadratureSpec::default(), ctx)?;
    let fact = Float::with_val(ctx.work_bits(), Integer::from(Integer::factorial(n as u32)));
    let v = r.values[0].scale(&fact.recip());
    Ok(ComplexValue::from_real(v.re().clone()).with_prec(ctx.bits()))
}

/// b_0(y)..b_{n_max}(y), the Taylor coefficients at s_0 = 1 + iy.
pub fn b_table(y: f64, n_max: usize, ctx: &PrecisionContext) -> Result<CoeffTable> {
    if !y.is_finite() {
        return Err(ZetaError::invalid("y must be finite"));
    }
    let (v, err) = moment_table(y, n_max, ctx)?;
    CoeffTable::new(CoeffKind::B, y, v, err)
}

/// b_n(y) = (1/n!) ∫₀^∞ φ(t)e^{-t}(log t)^n t^{iy} dt.
pub fn b_coeff(y: f64, n: usize, ctx: &PrecisionContext) -> Result<ComplexValue> {
    if !y.is_finite() {
        return Err(ZetaError::invalid("y must be finite"));
    }
    let r = quad_weighted_detailed(&Weight::LogPowTiy { n: n as u32, y }, Range::Whole, &QuadratureSpec::default(), ctx)?;
    let fact = Float::with_val(ctx.work_bits(), Integer::from(Integer::factorial(n as u32)));
    Ok(r.values[0].scale(&fact.recip()).with_prec(ctx.bits()))
}

/// (1/n!) ∫₀¹ [φ(t)e^{-t} - 1/2] (log 1/t)^n dt.
pub fn a_subseries_integral(n: usize, ctx: &PrecisionContext) -> Result<Float> {
    let mut f = KernelIntegrand::new(
        ComplexValue::one(ctx.work_bits()),
        KernelWeight::Powers { n_max: n, inv_factorial: true },
    );
    f.subtract_half = true;
    let (r, _) = integrate_sized(&f, Range::Below, ctx.target_tol(), &QuadratureSpec::default(), ctx)?;
    let v = r.values[n].re().clone();
    Ok(Float::with_val(ctx.bits(), if n % 2 == 1 { -v } else { v }))
}

/// c_n from Σ_k b_k c_{n-k} = [n = 0].
pub fn c_from_b(b: &CoeffTable) -> Result<CoeffTable> {
    if b.values[0].is_zero() {
        return Err(ZetaError::SingularSeries);
    }
    let c = ps_reciprocal(&b.as_series())?;
    // Errors in b propagate through 1/b_0 roughly linearly at each order.
    let b0 = b.values[0].abs_f64();
    let err = b.error_estimate / (b0 * b0);
    CoeffTable::new(CoeffKind::C, b.y, c.into_coeffs(), err)
}

/// Largest table index accepted by the determinant oracle.
pub const DETERMINANT_MAX_N: usize = 12;

/// c_n = (-1)^n Δ_n / b_0^{n+1} with Δ_n the n×n Toeplitz determinant
/// whose (i, j) entry is b_{i-j+1} (zero when i - j + 1 < 0).
pub fn c_determinant(b: &CoeffTable, n: usize) -> Result<ComplexValue> {
    if n > DETERMINANT_MAX_N {
        return Err(ZetaError::Unsupported(format!("determinant route limited to n ≤ {DETERMINANT_MAX_N}")));
    }
    if n > b.n_max {
        return Err(ZetaError::invalid(format!("table has order {}, need {n}", b.n_max)));
    }
    let b0 = &b.values[0];
    if b0.is_zero() {
        return Err(ZetaError::SingularSeries);
    }
    let prec = b0.prec() + 32;
    let mut m: Vec<Vec<ComplexValue>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let idx = i as i64 - j as i64 + 1;
                    if idx < 0 {
                        ComplexValue::zero(prec)
                    } else {
                        b.values[idx as usize].with_prec(prec)
                    }
                })
                .collect()
        })
        .collect();
    let det = determinant(&mut m, prec);
    let mut den = b0.with_prec(prec);
    for _ in 0..n {
        den = &den * b0;
    }
    let mut c = &det / &den;
    if n % 2 == 1 {
        c = -c;
    }
    Ok(c.with_prec(b0.prec()))
}

/// Determinant by Gaussian elimination with partial pivoting.
fn determinant(m: &mut [Vec<ComplexValue>], prec: u32) -> ComplexValue {
    let n = m.len();
    let mut det = ComplexValue::one(prec);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].abs_f64().total_cmp(&m[b][col].abs_f64()))
            .expect("non-empty range");
        if m[pivot][col].is_zero() {
            return ComplexValue::zero(prec);
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = &det * &p;
        let inv = p.recip();
        for row in col + 1..n {
            let factor = &m[row][col] * &inv;
            if factor.is_zero() {
                continue;
            }
            for k in col..n {
                let sub = &factor * &m[col][k];
                m[row][k] -= &sub;
            }
        }
    }
    det
}

#[derive(Debug, Clone, Serialize)]
pub struct RadiusReport {
    pub y: f64,
    pub n_window: (usize, usize),
    /// 1 / max_{n in window} |c_n|^{1/n}
    pub radius_estimate: f64,
    /// exp(-slope) of a least-squares line through log|c_n|
    pub radius_fit: f64,
    pub rh_threshold_met: bool,
}

/// Estimate the radius of convergence from c_n over n in [lo, hi].
pub fn radius_estimate(c: &CoeffTable, window: (usize, usize)) -> Result<RadiusReport> {
    let (lo, hi) = window;
    if lo == 0 || hi < lo || hi > c.n_max {
        return Err(ZetaError::invalid(format!("window {lo}..{hi} must lie in 1..={}", c.n_max)));
    }
    if hi - lo + 1 < 5 {
        return Err(ZetaError::invalid("window needs at least 5 coefficients"));
    }
    let mut root_max: f64 = 0.0;
    let mut pts = Vec::new();
    for n in lo..=hi {
        let a = c.values[n].abs();
        if a.is_zero() {
            continue;
        }
        let ln_a = a.ln().to_f64();
        root_max = root_max.max((ln_a / n as f64).exp());
        pts.push((n as f64, ln_a));
    }
    if pts.is_empty() {
        return Err(ZetaError::domain("all coefficients in the window vanish"));
    }
    let radius_estimate = 1.0 / root_max;
    let radius_fit = if pts.len() >= 2 {
        let m = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        (-(sxy / sxx)).exp()
    } else {
        radius_estimate
    };
    Ok(RadiusReport { y: c.y, n_window: window, radius_estimate, radius_fit, rh_threshold_met: radius_estimate >= 0.5 })
}
