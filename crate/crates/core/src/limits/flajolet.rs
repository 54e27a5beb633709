use rug::ops::Pow;
use rug::Float;

use crate::error::{Result, ZetaError};
use crate::numerics::{gamma_derivs_at, ComplexValue, PrecisionContext};

/// Parameters of f(z) = (1-z)^α ((1/z) log(1/(1-z)))^β.
#[derive(Debug, Clone)]
pub struct FlajoletParams {
    pub alpha: u32,
    pub beta: ComplexValue,
    pub terms: usize,
}

impl FlajoletParams {
    pub fn new(alpha: u32, beta: ComplexValue, terms: usize) -> Result<Self> {
        if alpha > 1 {
            return Err(ZetaError::Unsupported(format!("alpha = {alpha}; only 0 and 1 are supported")));
        }
        if !(1..=3).contains(&terms) {
            return Err(ZetaError::invalid(format!("terms must be 1..=3, got {terms}")));
        }
        Ok(FlajoletParams { alpha, beta, terms })
    }
}

/// f_n ≈ n^{-α-1}(log n)^β Σ_{k=1}^{terms} (e_k/k!) (-1)^k β(β-1)⋯(β-k+1) (log n)^{-k},
/// e_k = d^k/ds^k (1/Γ(-s)) at s = α.
pub fn flajolet_coeff_estimate(p: &FlajoletParams, n: usize, ctx: &PrecisionContext) -> Result<ComplexValue> {
    let p = FlajoletParams::new(p.alpha, p.beta.clone(), p.terms)?;
    if n < 3 {
        return Err(ZetaError::invalid(format!("estimate needs n ≥ 3, got {n}")));
    }
    let wp = ctx.work_bits();
    let e = gamma_derivs_at(p.alpha, p.terms, &ctx.raised_to(wp))?;
    let beta = p.beta.with_prec(wp);
    let ln_n = Float::with_val(wp, Float::with_val(wp, n).ln());
    let mut sum = ComplexValue::zero(wp);
    // falling = β(β-1)⋯(β-k+1); fact = k!; inv = (log n)^{-k}
    let mut falling = ComplexValue::one(wp);
    let mut fact = 1u64;
    let mut inv = Float::with_val(wp, 1);
    for (k, ek) in e.iter().enumerate().skip(1) {
        falling = &falling * &beta.add_f64(-((k - 1) as f64));
        fact *= k as u64;
        inv /= &ln_n;
        let mut term = (&falling * ek).div_u64(fact).scale(&inv);
        if k % 2 == 1 {
            term = -term;
        }
        sum += &term;
    }
    let ln_ln = Float::with_val(wp, ln_n.ln_ref());
    let lead = beta.scale(&ln_ln).exp();
    let np = Float::with_val(wp, Float::with_val(wp, n).pow((p.alpha + 1) as u32));
    Ok((&lead * &sum).scale(&np.recip()).with_prec(ctx.bits()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_term_laws() {
        let ctx = PrecisionContext::new(128, 1e-30).unwrap();
        let s = ComplexValue::from_f64(0.5, 1.0, 128);
        let n = 1000usize;
        let ln_n = (n as f64).ln();
        let est = flajolet_coeff_estimate(&FlajoletParams::new(1, s.clone(), 1).unwrap(), n, &ctx).unwrap();
        // -s/(n²(log n)^{1-s})
        let want = &(-&s).scale_f64(1.0 / (n * n) as f64) * &s.add_f64(-1.0).scale_f64(ln_n.ln()).exp();
        assert!(est.rel_dist(&want) < 1e-12);
        let sig = ComplexValue::from_f64(0.3, 0.0, 128);
        let est = flajolet_coeff_estimate(&FlajoletParams::new(0, sig, 1).unwrap(), n, &ctx).unwrap();
        let want = 0.3 / (n as f64 * ln_n.powf(0.7));
        assert!((est.re().to_f64() - want).abs() < 1e-12 * want);
        assert!(FlajoletParams::new(2, s, 1).is_err());
    }
}
