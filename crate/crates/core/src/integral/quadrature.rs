//! Trapezoidal quadrature in x = ln t with a one-sided double-exponential map.
//!
//! An integral ∫₀^∞ F(t) dt is written as ∫ g(x) dx with g(x) = F(eˣ)eˣ and
//! split at x_s = ln(split_point). Each half-line is mapped by
//! x = x_s ± ψ(v) with ψ(v) = ln(1 + exp(v − e^{−v})): nodes crowd
//! double-exponentially towards the split and spread linearly away from it.
//! The trapezoid rule in v is refined by halving the step so that every
//! previous node is reused.

use rug::Float;
use serde::Serialize;

use crate::error::{Result, ZetaError};
use crate::numerics::ComplexValue;

/// An x-space integrand g(x) = F(eˣ)eˣ with `dim` components sharing nodes.
pub trait LogIntegrand {
    fn dim(&self) -> usize;

    /// Upper bound on ln max_k |g_k(x)| in double precision. May return
    /// `f64::NEG_INFINITY` where every component vanishes.
    fn log_bound(&self, x: f64) -> f64;

    /// Write g_k(x) for all k into `out` (length `dim`).
    fn eval(&self, x: &Float, out: &mut [ComplexValue]) -> Result<()>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Each half-line stops refining as soon as it meets its share of the tolerance.
    Adaptive,
    /// Both half-lines are refined in lockstep until both have converged.
    FixedDoubling,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureSpec {
    pub split_point: f64,
    pub node_budget: usize,
    pub scheme: Scheme,
}

pub const MIN_NODE_BUDGET: usize = 32;

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { split_point: 1.0, node_budget: 1 << 18, scheme: Scheme::Adaptive }
    }
}

impl QuadratureSpec {
    pub fn new(split_point: f64, node_budget: usize, scheme: Scheme) -> Result<Self> {
        let spec = QuadratureSpec { split_point, node_budget, scheme };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.split_point.is_finite() && self.split_point > 0.0) {
            return Err(ZetaError::invalid(format!("split point {} must be positive", self.split_point)));
        }
        if self.node_budget < MIN_NODE_BUDGET {
            return Err(ZetaError::invalid(format!(
                "node budget {} is below {MIN_NODE_BUDGET}",
                self.node_budget
            )));
        }
        Ok(())
    }
}

/// Which part of (0, ∞) to integrate over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Range {
    Whole,
    /// (0, split_point]
    Below,
    /// [split_point, ∞)
    Above,
}

#[derive(Debug, Clone)]
pub struct QuadResult {
    pub values: Vec<ComplexValue>,
    /// Largest change between the last two refinement levels, summed over sides.
    pub error: f64,
    pub nodes: usize,
    pub levels: u32,
}

const H0: f64 = 0.5;
const MIN_LEVEL: u32 = 3;
const MAX_LEVEL: u32 = 24;
const PLAN_STEP: f64 = 0.125;
const MAX_V: f64 = 2.0e5;

fn psi_f64(v: f64) -> (f64, f64) {
    let u = v - (-v).exp();
    let psi = if u > 30.0 { u + (-u).exp().ln_1p() } else { u.exp().ln_1p() };
    let logistic = if u > 0.0 { 1.0 / (1.0 + (-u).exp()) } else { let e = u.exp(); e / (1.0 + e) };
    (psi, logistic * (1.0 + (-v).exp()))
}

fn ln_psi_prime(v: f64) -> f64 {
    let u = v - (-v).exp();
    // ln logistic(u) = -ln(1 + e^{-u})
    let ln_logistic = if u > 0.0 { -(-u).exp().ln_1p() } else { u - u.exp().ln_1p() };
    ln_logistic + (-v).exp().ln_1p()
}

fn psi_mp(v: &Float, wp: u32) -> (Float, Float) {
    let emv = Float::with_val(wp, (-v.clone()).exp());
    let u = Float::with_val(wp, v - &emv);
    let eu = Float::with_val(wp, u.exp_ref());
    let psi = Float::with_val(wp, eu.ln_1p_ref());
    // ψ' = (1 + e^{-v}) / (1 + e^{-u})
    let emu = Float::with_val(wp, (-u).exp());
    let num = Float::with_val(wp, &emv + 1u32);
    let den = Float::with_val(wp, &emu + 1u32);
    (psi, num / den)
}

#[derive(Debug, Clone)]
struct SidePlan {
    sign: f64,
    v_lo: f64,
    v_hi: f64,
    log_max: f64,
}

fn side_log_f<F: LogIntegrand>(f: &F, x_s: f64, sign: f64, v: f64) -> f64 {
    let (psi, _) = psi_f64(v);
    let b = f.log_bound(x_s + sign * psi);
    if b == f64::NEG_INFINITY {
        return b;
    }
    b + ln_psi_prime(v)
}

fn plan_side<F: LogIntegrand>(f: &F, x_s: f64, sign: f64, thr: f64) -> Result<Option<SidePlan>> {
    let mut log_max = f64::NEG_INFINITY;
    // Upward march: far end of the half-line.
    let mut v = 0.0;
    let mut prev = side_log_f(f, x_s, sign, v);
    log_max = log_max.max(prev);
    let v_hi = loop {
        v += PLAN_STEP;
        let cur = side_log_f(f, x_s, sign, v);
        if cur.is_nan() {
            return Err(ZetaError::Overflow(format!("integrand bound is NaN at v = {v}")));
        }
        log_max = log_max.max(cur);
        if v >= 8.0 && cur < thr && cur <= prev {
            break v;
        }
        if v > MAX_V {
            return Err(ZetaError::no_convergence("quadrature range search", None, f64::INFINITY));
        }
        prev = cur;
    };
    // Downward march: the split end, where ψ' dies double-exponentially.
    let mut v = 0.0;
    let v_lo = loop {
        v -= PLAN_STEP;
        let cur = side_log_f(f, x_s, sign, v);
        log_max = log_max.max(cur);
        if v <= -3.0 && cur < thr {
            break v;
        }
        if v < -40.0 {
            break v;
        }
    };
    if log_max < thr {
        return Ok(None);
    }
    Ok(Some(SidePlan { sign, v_lo, v_hi, log_max }))
}

/// ln of the largest |g(x(v)) ψ'(v)| seen while planning, used to size the
/// working precision before a cancelling integral. `None` when negligible.
pub fn plan_log_max<F: LogIntegrand>(f: &F, range: Range, spec: &QuadratureSpec, tol: f64) -> Result<Option<f64>> {
    spec.validate()?;
    let x_s = spec.split_point.ln();
    let thr = tol.ln() - 12.0;
    let mut m: Option<f64> = None;
    for sign in sides(range) {
        if let Some(p) = plan_side(f, x_s, sign, thr)? {
            m = Some(m.map_or(p.log_max, |a: f64| a.max(p.log_max)));
        }
    }
    Ok(m)
}

fn sides(range: Range) -> Vec<f64> {
    match range {
        Range::Whole => vec![-1.0, 1.0],
        Range::Below => vec![-1.0],
        Range::Above => vec![1.0],
    }
}

struct SideState {
    plan: SidePlan,
    sum: Vec<ComplexValue>,
    estimate: Vec<ComplexValue>,
    diff: f64,
    converged: bool,
}

/// Integrate `f` over `range` to absolute tolerance `tol` at `wp` bits.
pub fn integrate<F: LogIntegrand>(f: &F, range: Range, tol: f64, spec: &QuadratureSpec, wp: u32) -> Result<QuadResult> {
    spec.validate()?;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(ZetaError::invalid(format!("quadrature tolerance {tol} must be positive")));
    }
    let dim = f.dim();
    let x_s = spec.split_point.ln();
    let x_s_mp = Float::with_val(wp, Float::with_val(wp, spec.split_point).ln());
    let thr = tol.ln() - 12.0;
    let side_signs = sides(range);
    let side_tol = tol / side_signs.len() as f64;

    let mut states = Vec::new();
    for sign in side_signs {
        if let Some(plan) = plan_side(f, x_s, sign, thr)? {
            states.push(SideState {
                plan,
                sum: vec![ComplexValue::zero(wp); dim],
                estimate: vec![ComplexValue::zero(wp); dim],
                diff: f64::INFINITY,
                converged: false,
            });
        }
    }

    let mut nodes = 0usize;
    let mut buf = vec![ComplexValue::zero(wp); dim];
    let mut level = 0u32;
    loop {
        let h = H0 / f64::from(1u32 << level.min(30));
        for st in states.iter_mut() {
            if st.converged && spec.scheme == Scheme::Adaptive {
                continue;
            }
            let span = st.plan.v_hi - st.plan.v_lo;
            let skip_below = side_tol.ln() - (span + 1.0).ln() - 6.0;
            let k_lo = (st.plan.v_lo / h).ceil() as i64;
            let k_hi = (st.plan.v_hi / h).floor() as i64;
            let count = (k_hi - k_lo + 1).max(0) as usize;
            let new_nodes = if level == 0 { count } else { count.div_ceil(2) };
            if nodes + new_nodes > spec.node_budget {
                let (best, err) = combine(&states, dim, wp);
                return Err(ZetaError::no_convergence(
                    format!("quadrature after {nodes} nodes"),
                    best.into_iter().next(),
                    err,
                ));
            }
            for k in k_lo..=k_hi {
                if level > 0 && k % 2 == 0 {
                    continue;
                }
                let v = k as f64 * h;
                if side_log_f(f, x_s, st.plan.sign, v) < skip_below {
                    continue;
                }
                nodes += 1;
                let v_mp = Float::with_val(wp, v);
                let (psi, dpsi) = psi_mp(&v_mp, wp);
                let x = if st.plan.sign > 0.0 {
                    Float::with_val(wp, &x_s_mp + &psi)
                } else {
                    Float::with_val(wp, &x_s_mp - &psi)
                };
                f.eval(&x, &mut buf)?;
                for (acc, val) in st.sum.iter_mut().zip(buf.iter()) {
                    if !val.is_finite() {
                        return Err(ZetaError::Overflow(format!("integrand at x = {}", x.to_f64())));
                    }
                    acc.add_mul_real(val, &dpsi);
                }
            }
            let h_mp = Float::with_val(wp, h);
            let new_est: Vec<ComplexValue> = st.sum.iter().map(|c| c.scale(&h_mp)).collect();
            if level > 0 {
                st.diff = new_est
                    .iter()
                    .zip(st.estimate.iter())
                    .map(|(a, b)| a.dist(b))
                    .fold(0.0, f64::max);
                if level >= MIN_LEVEL && st.diff <= side_tol {
                    st.converged = true;
                }
            }
            st.estimate = new_est;
        }
        if states.iter().all(|s| s.converged) {
            break;
        }
        level += 1;
        if level > MAX_LEVEL {
            let (best, err) = combine(&states, dim, wp);
            return Err(ZetaError::no_convergence("quadrature level cap", best.into_iter().next(), err));
        }
    }
    let (values, error) = combine(&states, dim, wp);
    Ok(QuadResult { values, error, nodes: nodes.max(1), levels: level })
}

fn combine(states: &[SideState], dim: usize, wp: u32) -> (Vec<ComplexValue>, f64) {
    let mut vals = vec![ComplexValue::zero(wp); dim];
    let mut err = 0.0;
    for st in states {
        for (v, e) in vals.iter_mut().zip(st.estimate.iter()) {
            *v += e;
        }
        err += st.diff;
    }
    (vals, err)
}
