use rug::Float;
use serde::Serialize;

use super::funceq::{check_strip, func_eq_residual};
use crate::error::{Result, ZetaError};
use crate::integral::s_minus_one_zeta;
use crate::numerics::{fmt_float, ComplexValue, PrecisionContext};

pub const MAX_NEWTON_ITERATIONS: usize = 50;
/// Largest |ζ(s_guess)| accepted as a starting point.
pub const MAX_GUESS_ZETA: f64 = 0.5;

const METHOD_TAG: &str = "newton-integral";

/// A refined nontrivial zero.
#[derive(Debug, Clone)]
pub struct ZeroRecord {
    pub s: ComplexValue,
    /// |(s-1)ζ(s)| at the final iterate.
    pub residual: f64,
    pub func_eq_residual: f64,
    pub iterations: usize,
    pub method: &'static str,
}

fn f_at(s: &ComplexValue, ctx: &PrecisionContext) -> Result<ComplexValue> {
    Ok(s_minus_one_zeta(s, ctx)?.value)
}

/// Newton iteration on F(s) = (s-1)ζ(s) with F' from a central difference at
/// step 2^{-bits/3}. Stops once |F| < ctx.target_tol.
pub fn refine_zero(s_guess: &ComplexValue, ctx: &PrecisionContext) -> Result<ZeroRecord> {
    check_strip(s_guess)?;
    let bits = ctx.bits();
    let mut s = s_guess.with_prec(bits);
    let mut f = f_at(&s, ctx)?;
    let zeta_mag = f.abs_f64() / s.add_f64(-1.0).abs_f64();
    if !(zeta_mag < MAX_GUESS_ZETA) {
        return Err(ZetaError::invalid(format!(
            "starting point {} has |zeta| = {zeta_mag:.3}, needs < {MAX_GUESS_ZETA}",
            s.to_string_digits(10)
        )));
    }
    let h = Float::with_val(bits, Float::i_exp(1, -((bits / 3) as i32)));
    let h_c = ComplexValue::from_real(h.clone());
    let mut iterations = 0;
    while !(f.abs_f64() < ctx.target_tol()) {
        if iterations == MAX_NEWTON_ITERATIONS {
            return Err(ZetaError::no_convergence("zero refinement", Some(s), f.abs_f64()));
        }
        iterations += 1;
        let fp = f_at(&(&s + &h_c), ctx)?;
        let fm = f_at(&(&s - &h_c), ctx)?;
        let deriv = (&fp - &fm).scale(&Float::with_val(bits, 2 * &h).recip());
        if deriv.is_zero() {
            return Err(ZetaError::no_convergence("zero refinement (flat derivative)", Some(s), f.abs_f64()));
        }
        let mut step = &f / &deriv;
        // Halve the step while it fails to reduce |F| or leaves the strip.
        let mut accepted = None;
        for _ in 0..12 {
            let cand = &s - &step;
            if check_strip(&cand).is_ok() {
                let fc = f_at(&cand, ctx)?;
                if fc.abs_f64() < f.abs_f64() {
                    accepted = Some((cand, fc));
                    break;
                }
            }
            step = step.scale_f64(0.5);
        }
        match accepted {
            Some((cand, fc)) => {
                s = cand;
                f = fc;
            }
            None => return Err(ZetaError::no_convergence("zero refinement (no descent)", Some(s), f.abs_f64())),
        }
    }
    let fer = func_eq_residual(&s, ctx)?;
    Ok(ZeroRecord { residual: f.abs_f64(), func_eq_residual: fer, iterations, method: METHOD_TAG, s })
}

#[derive(Serialize)]
struct ZeroJson {
    re: String,
    im: String,
    residual: f64,
    func_eq_residual: f64,
    iterations: usize,
    method: &'static str,
}

fn digits(r: &ZeroRecord) -> usize {
    ((r.s.prec() as f64) * std::f64::consts::LOG10_2).floor() as usize
}

/// CSV with columns re, im, residual, func_eq_residual, iterations, method.
pub fn zeros_to_csv(records: &[ZeroRecord]) -> String {
    let mut out = String::from("re,im,residual,func_eq_residual,iterations,method\n");
    for r in records {
        let d = digits(r);
        out.push_str(&format!(
            "{},{},{:.3e},{:.3e},{},{}\n",
            fmt_float(r.s.re(), d),
            fmt_float(r.s.im(), d),
            r.residual,
            r.func_eq_residual,
            r.iterations,
            r.method
        ));
    }
    out
}

pub fn zeros_to_json(records: &[ZeroRecord]) -> serde_json::Value {
    let rows: Vec<ZeroJson> = records
        .iter()
        .map(|r| {
            let d = digits(r);
            ZeroJson {
                re: fmt_float(r.s.re(), d),
                im: fmt_float(r.s.im(), d),
                residual: r.residual,
                func_eq_residual: r.func_eq_residual,
                iterations: r.iterations,
                method: r.method,
            }
        })
        .collect();
    serde_json::to_value(rows).expect("serializable rows")
}
