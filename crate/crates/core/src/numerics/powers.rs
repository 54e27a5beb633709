use rug::Float;

use super::complex::ComplexValue;
use super::precision::PrecisionContext;
use crate::error::{Result, ZetaError};

/// base^(-s) for a positive real base.
pub fn cpow(base: &Float, s: &ComplexValue, ctx: &PrecisionContext) -> Result<ComplexValue> {
    cpow_prec(base, s, ctx.bits())
}

/// base^(-s) at `bits` bits.
pub fn cpow_prec(base: &Float, s: &ComplexValue, bits: u32) -> Result<ComplexValue> {
    if !(base.is_finite() && *base > 0) {
        return Err(ZetaError::domain(format!("cpow base {} must be positive", base.to_f64())));
    }
    let wp = bits + 16;
    let ln_b = Float::with_val(wp, base.ln_ref());
    Ok(neg_s_times(s, &ln_b, wp).exp().with_prec(bits))
}

/// k^(-s) for a positive integer k.
pub fn cpow_int(k: u64, s: &ComplexValue, bits: u32) -> Result<ComplexValue> {
    cpow_prec(&Float::with_val(bits + 16, k), s, bits)
}

/// exp(-s * l) for real l.
pub(crate) fn neg_s_times(s: &ComplexValue, l: &Float, wp: u32) -> ComplexValue {
    let re = Float::with_val(wp, -(Float::with_val(wp, s.re() * l)));
    let im = Float::with_val(wp, -(Float::with_val(wp, s.im() * l)));
    ComplexValue::new(re, im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_powers() {
        let s = ComplexValue::from_f64(0.5, 14.134725, 128);
        assert!(cpow_int(1, &s, 128).unwrap().dist(&ComplexValue::one(128)) < 1e-35);
        let one = ComplexValue::one(128);
        assert!(cpow_int(2, &one, 128).unwrap().dist(&ComplexValue::from_f64(0.5, 0.0, 128)) < 1e-35);
        let m = cpow_int(2, &s, 128).unwrap().abs_f64();
        assert!((m - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(cpow_prec(&Float::with_val(64, -1), &s, 128).is_err());
        assert!(cpow_prec(&Float::with_val(64, 0), &s, 128).is_err());
    }
}
