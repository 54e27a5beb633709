use std::collections::HashMap;
use std::sync::RwLock;

use rug::Float;

use crate::error::{Result, ZetaError};
use crate::numerics::{bernoulli, PrecisionContext};

/// Below this t the Bernoulli expansion is used.
pub const SERIES_BRANCH_MAX_T: f64 = 1.0;

/// B_{2m}/(2m-1)! for m = 1, 2, ... keyed by precision.
static SERIES_COEFFS: RwLock<Option<HashMap<u32, Vec<Float>>>> = RwLock::new(None);

fn series_coeffs(count: usize, prec: u32) -> Vec<Float> {
    if let Some(v) = SERIES_COEFFS.read().unwrap_or_else(|e| e.into_inner()).as_ref().and_then(|m| m.get(&prec)) {
        if v.len() >= count {
            return v[..count].to_vec();
        }
    }
    let mut guard = SERIES_COEFFS.write().unwrap_or_else(|e| e.into_inner());
    let v = guard.get_or_insert_with(HashMap::new).entry(prec).or_default();
    while v.len() < count {
        let m = v.len() + 1;
        let fact = rug::Integer::from(rug::Integer::factorial((2 * m - 1) as u32));
        let b = bernoulli(2 * m).to_float(prec);
        v.push(b / Float::with_val(prec, &fact));
    }
    v[..count].to_vec()
}

/// Terms needed for the Bernoulli branch at `t` to reach 2^-prec.
fn series_terms(t: f64, prec: u32) -> usize {
    let ratio = (2.0 * std::f64::consts::PI / t.max(1e-300)).log2();
    (((prec as f64) + 16.0) / (2.0 * ratio)).ceil().max(1.0) as usize + 2
}

/// φ(t)e^{-t} from 1/2 - Σ_{n≥2} B_n t^{n-1}/(n-1)!, usable for t < 2π.
pub fn phi_exp_series(t: &Float, prec: u32) -> Result<Float> {
    let tf = t.to_f64();
    if !(tf > -1.0 && tf < 5.0) {
        return Err(ZetaError::domain(format!("Bernoulli branch needs |t| < 5, got {tf}")));
    }
    let wp = prec + 8;
    let m = series_terms(tf.abs(), wp);
    let c = series_coeffs(m, wp);
    let t = Float::with_val(wp, t);
    let u = Float::with_val(wp, t.square_ref());
    let mut p = Float::new(wp);
    for ck in c.iter().rev() {
        p *= &u;
        p += ck;
    }
    p *= &t;
    let half = Float::with_val(wp, 0.5);
    Ok(Float::with_val(prec, half - p))
}

/// φ(t)e^{-t} = E(t - D)/D² with E = e^{-t}, D = 1 - e^{-t}.
pub fn phi_exp_closed(t: &Float, prec: u32) -> Result<Float> {
    if !(t.is_finite() && *t > 0) {
        return Err(ZetaError::domain(format!("kernel needs t > 0, got {}", t.to_f64())));
    }
    let wp = prec + 8;
    let t = Float::with_val(wp, t);
    let neg = Float::with_val(wp, -&t);
    let e = Float::with_val(wp, neg.exp_ref());
    let d = Float::with_val(wp, -neg.exp_m1());
    let num = Float::with_val(wp, &t - &d) * &e;
    Ok(Float::with_val(prec, num / d.square()))
}

/// φ(t)e^{-t}, switching to the Bernoulli expansion for small t.
pub fn phi_exp(t: &Float, prec: u32) -> Result<Float> {
    if !(t.is_finite() && *t > 0) {
        return Err(ZetaError::domain(format!("kernel needs t > 0, got {}", t.to_f64())));
    }
    if *t < SERIES_BRANCH_MAX_T {
        phi_exp_series(t, prec)
    } else {
        phi_exp_closed(t, prec)
    }
}

/// φ(t) = t/(1-e^{-t})² - 1/(1-e^{-t}).
pub fn phi_kernel(t: &Float, ctx: &PrecisionContext) -> Result<Float> {
    let prec = ctx.bits();
    let k = phi_exp(t, prec + 4)?;
    let et = Float::with_val(prec + 4, t.exp_ref());
    Ok(Float::with_val(prec, k * et))
}

/// Upper bound for ln(φ(t)e^{-t}) in double precision.
pub fn ln_phi_exp_bound(t: f64) -> f64 {
    t.ln_1p() - t
}
