use rug::Float;

use crate::error::{Result, ZetaError};
use crate::numerics::{gamma_derivs_at_one, rgamma, ComplexValue, PrecisionContext};

/// S_n(s) ≈ (1/n)(log n)^{s-1} Σ_{j=0}^{j_max} (-1)^j Γ^{(j)}(1) / (j! Γ(s-j)) (log n)^{-j}.
pub fn s_n_asymptotic(s: &ComplexValue, n: usize, j_max: usize, ctx: &PrecisionContext) -> Result<ComplexValue> {
    if n < 3 {
        return Err(ZetaError::invalid(format!("asymptotic form needs n ≥ 3, got {n}")));
    }
    if s.im().is_zero() && s.re().is_integer() && *s.re() >= 1 {
        return Err(ZetaError::Unsupported(format!(
            "asymptotic expansion degenerates at the positive integer s = {}",
            s.re().to_f64()
        )));
    }
    let wp = ctx.work_bits();
    let s = s.with_prec(wp);
    let ln_n = Float::with_val(wp, Float::with_val(wp, n).ln());
    let ln_ln = Float::with_val(wp, ln_n.ln_ref());
    let g = gamma_derivs_at_one(j_max, &ctx.raised_to(wp))?;
    let mut sum = ComplexValue::zero(wp);
    let mut inv_pow = Float::with_val(wp, 1);
    let mut fact = Float::with_val(wp, 1);
    for (j, gj) in g.iter().enumerate() {
        if j > 0 {
            inv_pow /= &ln_n;
            fact *= j as u64;
        }
        let mut c = Float::with_val(wp, gj / &fact) * &inv_pow;
        if j % 2 == 1 {
            c = -c;
        }
        let r = rgamma(&s.add_f64(-(j as f64)), wp)?;
        sum.add_mul_real(&r, &c);
    }
    // (log n)^{s-1} = exp((s-1) log log n)
    let lead = s.add_f64(-1.0).scale(&ln_ln).exp();
    Ok((&lead * &sum).div_u64(n as u64).with_prec(ctx.bits()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_term() {
        let ctx = PrecisionContext::default();
        let s = ComplexValue::from_f64(0.5, 1.0, 128);
        let a = s_n_asymptotic(&s, 100, 0, &ctx).unwrap();
        let ln_n = 100f64.ln();
        let g = crate::numerics::gamma(&s, &ctx).unwrap();
        let lead = s.add_f64(-1.0).scale_f64(ln_n.ln()).exp();
        let want = (&lead / &g).div_u64(100);
        assert!(a.rel_dist(&want) < 1e-14);
    }

    #[test]
    fn integer_points_refused() {
        let ctx = PrecisionContext::default();
        assert!(matches!(
            s_n_asymptotic(&ComplexValue::from_f64(2.0, 0.0, 128), 100, 1, &ctx),
            Err(ZetaError::Unsupported(_))
        ));
        assert!(s_n_asymptotic(&ComplexValue::from_f64(0.5, 0.0, 128), 2, 0, &ctx).is_err());
    }
}
