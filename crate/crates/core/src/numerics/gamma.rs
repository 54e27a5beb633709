use std::collections::HashMap;
use std::sync::RwLock;

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use super::complex::{pi, ComplexValue};
use super::exact::bernoulli;
use super::precision::PrecisionContext;
use crate::error::{Result, ZetaError};

/// Stirling coefficients B_{2k} / (2k (2k-1)) at a given precision.
static STIRLING: RwLock<Option<HashMap<u32, Vec<Float>>>> = RwLock::new(None);

fn stirling_coeff(k: usize, prec: u32) -> Float {
    if let Some(v) = STIRLING.read().unwrap_or_else(|e| e.into_inner()).as_ref().and_then(|m| m.get(&prec)) {
        if let Some(c) = v.get(k) {
            return c.clone();
        }
    }
    let mut guard = STIRLING.write().unwrap_or_else(|e| e.into_inner());
    let v = guard.get_or_insert_with(HashMap::new).entry(prec).or_default();
    while v.len() <= k {
        let j = v.len() + 1;
        let b = bernoulli(2 * j).to_float(prec);
        v.push(b / ((2 * j * (2 * j - 1)) as u64));
    }
    v[k].clone()
}

fn nonpositive_integer(s: &ComplexValue) -> bool {
    s.im().is_zero() && s.re().is_integer() && *s.re() <= 0
}

/// Shift count N so that Re(s) + N clears the Stirling threshold.
fn shift_for(s: &ComplexValue, wp: u32) -> u64 {
    let target = (wp as f64) / 4.0;
    let re = s.re().to_f64();
    if re >= target {
        0
    } else {
        (target - re).ceil() as u64
    }
}

/// Stirling sum for ln Γ(z) with Re z large; `wp` bits.
fn ln_gamma_stirling(z: &ComplexValue, wp: u32) -> Result<ComplexValue> {
    let ln_z = z.ln()?;
    let half = Float::with_val(wp, 0.5);
    let zm = z.add_real(&-half);
    let mut acc = &(&zm * &ln_z) - z;
    let ln2pi = Float::with_val(wp, Float::with_val(wp, Constant::Pi) * 2u32).ln() / 2u32;
    acc = acc.add_real(&ln2pi);

    let zinv = z.recip();
    let zinv2 = &zinv * &zinv;
    let mut pow = zinv;
    let eps = Float::with_val(53, Float::i_exp(1, -(wp as i32)));
    let mut prev_mag = f64::INFINITY;
    for k in 0..10_000 {
        let term = pow.scale(&stirling_coeff(k, wp));
        let mag = term.abs();
        acc += &term;
        if mag < eps {
            return Ok(acc);
        }
        let m = mag.to_f64();
        if m > prev_mag {
            // Asymptotic series started to diverge; the shift is too small.
            return Err(ZetaError::no_convergence("Stirling series", None, m));
        }
        prev_mag = m;
        pow = &pow * &zinv2;
    }
    Err(ZetaError::no_convergence("Stirling series", None, prev_mag))
}

fn gamma_at(s: &ComplexValue, bits: u32) -> Result<ComplexValue> {
    if nonpositive_integer(s) {
        return Err(ZetaError::Pole(format!("Gamma at {}", s.re().to_f64())));
    }
    let (_, t) = s.to_f64();
    // exp(ln Γ) loses about log2|ln Γ| bits in the argument reduction.
    let guard = 16 + (t.abs() * (t.abs() + 2.0).ln() + 2.0).log2().max(0.0) as u32;
    let wp = bits + 32 + guard;
    let s_w = s.with_prec(wp);
    let n = shift_for(&s_w, wp);
    let z = s_w.add_f64(n as f64);
    let lg = ln_gamma_stirling(&z, wp)?;
    let mut prod = ComplexValue::one(wp);
    for j in 0..n {
        prod = &prod * &s_w.add_f64(j as f64);
    }
    let g = &lg.exp() / &prod;
    g.with_prec(bits).checked("Gamma")
}

/// Γ(s) at the context precision.
pub fn gamma(s: &ComplexValue, ctx: &PrecisionContext) -> Result<ComplexValue> {
    gamma_at(s, ctx.bits())
}

/// Γ(s) at an explicit precision in bits.
pub fn gamma_prec(s: &ComplexValue, bits: u32) -> Result<ComplexValue> {
    gamma_at(s, bits)
}

/// 1/Γ(s), entire; zero at the non-positive integers.
pub fn rgamma(s: &ComplexValue, bits: u32) -> Result<ComplexValue> {
    if nonpositive_integer(s) {
        return Ok(ComplexValue::zero(bits));
    }
    Ok(gamma_at(s, bits)?.recip())
}

/// ln|Γ(s)| in double precision, for sizing decisions.
pub fn ln_abs_gamma_f64(s: &ComplexValue) -> f64 {
    let (re, im) = s.to_f64();
    ln_abs_gamma_c64(re, im)
}

/// ln|Γ(re + i im)| via shifted Stirling in f64. Poles give +inf.
pub fn ln_abs_gamma_c64(re: f64, im: f64) -> f64 {
    if im == 0.0 && re <= 0.0 && re.fract() == 0.0 {
        return f64::INFINITY;
    }
    let mut x = re;
    let mut corr = 0.0;
    while x < 20.0 {
        corr -= 0.5 * (x * x + im * im).ln();
        x += 1.0;
    }
    // Re[(z - 1/2) ln z - z + ln(2π)/2 + 1/(12 z) - 1/(360 z^3) + 1/(1260 z^5)]
    let r2 = x * x + im * im;
    let ln_r = 0.5 * r2.ln();
    let th = im.atan2(x);
    let main = (x - 0.5) * ln_r - im * th - x + 0.5 * (2.0 * std::f64::consts::PI).ln();
    let inv_re = x / r2;
    let r = r2.sqrt();
    let inv3_re = (3.0 * th).cos() / (r2 * r);
    let inv5_re = (5.0 * th).cos() / (r2 * r2 * r);
    main + inv_re / 12.0 - inv3_re / 360.0 + inv5_re / 1260.0 + corr
}

/// Central-difference derivatives f^(0..=k_max) at `x`, refined by two
/// Richardson steps. `f` is evaluated at `wp` bits.
pub(crate) fn central_derivs<F>(f: F, x: &ComplexValue, k_max: usize, bits: u32) -> Result<Vec<ComplexValue>>
where
    F: Fn(&ComplexValue) -> Result<ComplexValue>,
{
    let wp = 3 * bits;
    let x = x.with_prec(wp);
    let h0 = Float::with_val(wp, Float::i_exp(1, -((bits / 3) as i32)));
    let levels = 3usize;
    // est[level][k]
    let mut est: Vec<Vec<ComplexValue>> = Vec::with_capacity(levels);
    for lvl in 0..levels {
        let h = Float::with_val(wp, &h0 >> lvl as u32);
        let half_h = Float::with_val(wp, &h / 2u32);
        // Nodes x + m h/2 for m in -k_max..=k_max.
        let mut vals: HashMap<i64, ComplexValue> = HashMap::new();
        let mut row = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            let mut acc = ComplexValue::zero(wp);
            let mut c = rug::Integer::from(1);
            for j in 0..=k {
                let m = k as i64 - 2 * j as i64;
                if !vals.contains_key(&m) {
                    let off = Float::with_val(wp, &half_h * m);
                    vals.insert(m, f(&x.add_real(&off))?.with_prec(wp));
                }
                let term = vals[&m].scale(&Float::with_val(wp, &c));
                if j % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
                c *= (k - j) as u64;
                c /= (j + 1) as u64;
            }
            let hk = Float::with_val(wp, h.clone().pow(k as u32));
            row.push(acc.scale(&hk.recip()));
        }
        est.push(row);
    }
    // Richardson on the h^2 expansion.
    let mut out = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let mut col: Vec<ComplexValue> = est.iter().map(|r| r[k].clone()).collect();
        let mut factor = 4.0f64;
        while col.len() > 1 {
            let mut next = Vec::with_capacity(col.len() - 1);
            for i in 0..col.len() - 1 {
                let d = &col[i + 1] - &col[i];
                next.push(&col[i + 1] + &d.scale_f64(1.0 / (factor - 1.0)));
            }
            col = next;
            factor *= 4.0;
        }
        out.push(col.pop().expect("non-empty").with_prec(bits));
    }
    Ok(out)
}

/// e_k = d^k/ds^k (1/Γ(-s)) at the integer s = alpha, for k = 0..=k_max.
///
/// Uses 1/Γ(-s) = -sin(πs) Γ(1+s) / π, which is smooth at the integers.
pub fn gamma_derivs_at(alpha: u32, k_max: usize, ctx: &PrecisionContext) -> Result<Vec<ComplexValue>> {
    if k_max > 4 {
        return Err(ZetaError::Unsupported(format!("derivative order {k_max} > 4")));
    }
    let bits = ctx.bits();
    let wp = 3 * bits;
    let pi_w = pi(wp);
    let g = |s: &ComplexValue| -> Result<ComplexValue> {
        let sin = s.scale(&pi_w).sin();
        let gam = gamma_prec(&s.add_f64(1.0), wp)?;
        Ok(-(&sin * &gam).scale(&pi_w.clone().recip()))
    };
    let x = ComplexValue::from_f64(alpha as f64, 0.0, wp);
    let mut out = central_derivs(g, &x, k_max, bits)?;
    out[0] = ComplexValue::zero(bits);
    Ok(out)
}

/// Γ^{(j)}(1) for j = 0..=j_max (j_max ≤ 4).
pub fn gamma_derivs_at_one(j_max: usize, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    if j_max > 4 {
        return Err(ZetaError::Unsupported(format!("derivative order {j_max} > 4")));
    }
    let bits = ctx.bits();
    let wp = 3 * bits;
    let x = ComplexValue::one(wp);
    let d = central_derivs(|s| gamma_prec(s, wp), &x, j_max, bits)?;
    let mut out: Vec<Float> = d.into_iter().map(|c| c.into_parts().0).collect();
    out[0] = Float::with_val(bits, 1);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(128, 1e-30).unwrap()
    }

    #[test]
    fn factorials_and_half() {
        let c = ctx();
        let g5 = gamma(&ComplexValue::from_f64(5.0, 0.0, 128), &c).unwrap();
        assert!(g5.dist(&ComplexValue::from_f64(24.0, 0.0, 128)) < 1e-33);
        let gh = gamma(&ComplexValue::from_f64(0.5, 0.0, 128), &c).unwrap();
        let sqrt_pi = Float::with_val(128, pi(128).sqrt());
        assert!(gh.dist(&ComplexValue::from_real(sqrt_pi)) < 1e-35);
    }

    #[test]
    fn poles_rejected() {
        let c = ctx();
        assert!(matches!(gamma(&ComplexValue::from_f64(0.0, 0.0, 128), &c), Err(ZetaError::Pole(_))));
        assert!(matches!(gamma(&ComplexValue::from_f64(-3.0, 0.0, 128), &c), Err(ZetaError::Pole(_))));
        assert!(gamma(&ComplexValue::from_f64(-3.5, 0.0, 128), &c).is_ok());
    }

    #[test]
    fn f64_log_gamma_tracks_mpfr() {
        for &(re, im) in &[(0.5, 14.0), (2.0, 0.0), (0.3, -30.0), (7.5, 3.0)] {
            let exact = gamma(&ComplexValue::from_f64(re, im, 128), &ctx()).unwrap().abs().ln().to_f64();
            assert!((ln_abs_gamma_c64(re, im) - exact).abs() < 1e-9, "{re} {im}");
        }
    }

    #[test]
    fn first_derivative_closed_form() {
        let e = gamma_derivs_at(1, 2, &ctx()).unwrap();
        assert!(e[1].dist(&ComplexValue::one(128)) < 1e-25);
        let e0 = gamma_derivs_at(0, 1, &ctx()).unwrap();
        assert!(e0[1].dist(&ComplexValue::from_f64(-1.0, 0.0, 128)) < 1e-25);
        assert!(gamma_derivs_at(0, 5, &ctx()).is_err());
    }

    #[test]
    fn gamma_prime_at_one_is_minus_euler() {
        let d = gamma_derivs_at_one(2, &ctx()).unwrap();
        let g = super::super::complex::euler_gamma(128);
        assert!(Float::with_val(128, &d[1] + &g).abs().to_f64() < 1e-25);
    }
}
