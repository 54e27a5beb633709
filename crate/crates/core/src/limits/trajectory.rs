use rug::Float;
use serde::Serialize;

use super::phi::{phi_x, phi_x_prime, psi_x};
use super::phitilde::{nphi_abs_sum, nphi_abs_sum_truncated, truncation_for};
use super::zeta_x::{zeta_x_abel, zeta_x_partial};
use crate::error::{Result, ZetaError};
use crate::numerics::{fmt_float, gamma, ComplexValue, PrecisionContext};
use crate::powerseries::phi_psi_coeffs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TrajectoryKind {
    /// (s-1)ζ'(s,x)/Φ'(x) → -1/(sΓ(s))
    #[serde(rename = "L62_deriv_ratio")]
    L62DerivRatio,
    /// (s-1)ζ(s,x)/Φ(x) → -1/(sΓ(s)) at a zero of ζ
    #[serde(rename = "L63_value_ratio")]
    L63ValueRatio,
    /// |Φ'(x)|/Φ̃(x), no target
    #[serde(rename = "L61_phiprime_over_phitilde")]
    L61PhiPrimeOverPhiTilde,
    /// xΨ(x) / Σ n|φ_n|xⁿ → σ/|s|
    #[serde(rename = "psi_over_nphi")]
    PsiOverNPhi,
}

impl TrajectoryKind {
    pub fn parse(tag: &str) -> Result<Self> {
        Ok(match tag {
            "L62_deriv_ratio" | "L62" => TrajectoryKind::L62DerivRatio,
            "L63_value_ratio" | "L63" => TrajectoryKind::L63ValueRatio,
            "L61_phiprime_over_phitilde" | "L61" => TrajectoryKind::L61PhiPrimeOverPhiTilde,
            "psi_over_nphi" => TrajectoryKind::PsiOverNPhi,
            other => return Err(ZetaError::invalid(format!("unknown trajectory kind '{other}'"))),
        })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            TrajectoryKind::L62DerivRatio => "L62_deriv_ratio",
            TrajectoryKind::L63ValueRatio => "L63_value_ratio",
            TrajectoryKind::L61PhiPrimeOverPhiTilde => "L61_phiprime_over_phitilde",
            TrajectoryKind::PsiOverNPhi => "psi_over_nphi",
        }
    }
}

#[derive(Debug, Clone)]
pub struct TrajectoryPoint {
    pub x: f64,
    pub value: ComplexValue,
    /// |value - target|, absent for kinds without a target.
    pub distance: Option<f64>,
    /// Series terms needed at this x (⌈40/(1-x)⌉), or the truncation used.
    pub terms: usize,
    /// False when a requested truncation was too short for this x.
    pub resolved: bool,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub s: ComplexValue,
    pub kind: TrajectoryKind,
    pub target: Option<ComplexValue>,
    pub samples: Vec<TrajectoryPoint>,
}

/// x_k = 1 - 10^{-k/2}, k = 2..=12.
pub fn default_grid() -> Vec<f64> {
    (2..=12).map(|k| 1.0 - 10f64.powf(-(k as f64) / 2.0)).collect()
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(ZetaError::invalid("empty x grid"));
    }
    for w in grid.windows(2) {
        if !(w[0] < w[1]) {
            return Err(ZetaError::invalid("x grid must be strictly increasing"));
        }
    }
    if !(grid[0] > 0.0 && grid[grid.len() - 1] < 1.0) {
        return Err(ZetaError::domain("x grid must lie in (0, 1)"));
    }
    Ok(())
}

/// -1/(sΓ(s))
pub fn limit_target(s: &ComplexValue, ctx: &PrecisionContext) -> Result<ComplexValue> {
    let g = gamma(s, ctx)?;
    Ok(-(&(s * &g)).recip())
}

/// Σ_{n=1}^{N} ψ_{n-1}xⁿ
fn psi_shift_truncated(sigma: f64, x: f64, n: usize, ctx: &PrecisionContext) -> Result<f64> {
    let s = ComplexValue::from_f64(sigma, 0.0, ctx.bits());
    let (_, psi) = phi_psi_coeffs(&s, sigma, n.max(2), ctx)?;
    let mut sum = 0.0;
    let mut p = 1.0;
    for k in 1..=n {
        p *= x;
        sum += psi.coeff(k - 1).re().to_f64() * p;
    }
    Ok(sum)
}

fn point_value(
    kind: TrajectoryKind,
    s: &ComplexValue,
    x: f64,
    truncation: Option<usize>,
    ctx: &PrecisionContext,
) -> Result<ComplexValue> {
    let bits = ctx.bits();
    let sigma = s.re().to_f64();
    Ok(match kind {
        TrajectoryKind::L62DerivRatio | TrajectoryKind::L63ValueRatio => {
            let derivative = kind == TrajectoryKind::L62DerivRatio;
            let num = match truncation {
                None => zeta_x_abel(s, x, ctx, derivative)?.value,
                Some(n) => zeta_x_partial(s, x, n, ctx, derivative)?,
            };
            let den = if derivative { phi_x_prime(x, s, ctx)? } else { phi_x(x, s, ctx)? };
            &num / &den
        }
        TrajectoryKind::L61PhiPrimeOverPhiTilde => {
            let d = match truncation {
                None => nphi_abs_sum(s, x, ctx)?,
                Some(n) => nphi_abs_sum_truncated(s, x, n, ctx)?,
            };
            let num = phi_x_prime(x, s, ctx)?.abs_f64();
            ComplexValue::from_f64(num * x / d, 0.0, bits)
        }
        TrajectoryKind::PsiOverNPhi => {
            let (num, d) = match truncation {
                None => (psi_x(x, sigma, ctx)?.to_f64() * x, nphi_abs_sum(s, x, ctx)?),
                Some(n) => (psi_shift_truncated(sigma, x, n, ctx)?, nphi_abs_sum_truncated(s, x, n, ctx)?),
            };
            ComplexValue::from_f64(num / d, 0.0, bits)
        }
    })
}

/// Sample one of the limit ratios along an x grid approaching 1.
///
/// With `n_max = None` every series is summed in full (closed-form kernel
/// integrals for ζ(s,x); Taylor head plus branch-cut tail for Σ n|φ_n|xⁿ).
/// With `Some(N)` each point uses min(N, ⌈40/(1-x)⌉) terms on both sides of
/// the ratio, and points that needed more are marked unresolved.
pub fn limit_trajectory(
    kind: TrajectoryKind,
    s: &ComplexValue,
    x_grid: &[f64],
    n_max: Option<usize>,
    ctx: &PrecisionContext,
) -> Result<Trajectory> {
    check_grid(x_grid)?;
    if !(s.is_finite() && *s.re() > 0) {
        return Err(ZetaError::domain("trajectories need Re(s) > 0"));
    }
    let target = match kind {
        TrajectoryKind::L62DerivRatio | TrajectoryKind::L63ValueRatio => Some(limit_target(s, ctx)?),
        TrajectoryKind::PsiOverNPhi => {
            let v = Float::with_val(ctx.bits(), s.re() / s.abs());
            Some(ComplexValue::from_real(v))
        }
        TrajectoryKind::L61PhiPrimeOverPhiTilde => None,
    };
    let mut samples = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        let need = truncation_for(x);
        let (trunc, terms, resolved) = match n_max {
            None => (None, need, true),
            Some(n) => (Some(n.min(need)), n.min(need), need <= n),
        };
        let value = point_value(kind, s, x, trunc, ctx)?;
        let distance = target.as_ref().map(|t| value.dist(t));
        samples.push(TrajectoryPoint { x, value, distance, terms, resolved });
    }
    Ok(Trajectory { s: s.with_prec(ctx.bits()), kind, target, samples })
}

#[derive(Serialize)]
struct PointJson {
    x: f64,
    re: String,
    im: String,
    distance: Option<f64>,
    terms: usize,
    resolved: bool,
}

#[derive(Serialize)]
struct TrajectoryJson {
    kind: TrajectoryKind,
    s: [String; 2],
    target: Option<[String; 2]>,
    samples: Vec<PointJson>,
}

const EXPORT_DIGITS: usize = 17;

impl Trajectory {
    /// CSV with columns x, re, im, distance.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,re,im,distance\n");
        for p in &self.samples {
            let d = p.distance.map(|d| format!("{d:.6e}")).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{}\n",
                p.x,
                fmt_float(p.value.re(), EXPORT_DIGITS),
                fmt_float(p.value.im(), EXPORT_DIGITS),
                d
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pair = |c: &ComplexValue| [fmt_float(c.re(), EXPORT_DIGITS), fmt_float(c.im(), EXPORT_DIGITS)];
        serde_json::to_value(TrajectoryJson {
            kind: self.kind,
            s: pair(&self.s),
            target: self.target.as_ref().map(pair),
            samples: self
                .samples
                .iter()
                .map(|p| PointJson {
                    x: p.x,
                    re: fmt_float(p.value.re(), EXPORT_DIGITS),
                    im: fmt_float(p.value.im(), EXPORT_DIGITS),
                    distance: p.distance,
                    terms: p.terms,
                    resolved: p.resolved,
                })
                .collect(),
        })
        .expect("trajectory serializes")
    }
}
