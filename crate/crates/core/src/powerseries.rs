//! Truncated formal power series over multiple-precision complex numbers.

use rug::{Float, Rational};

use crate::error::{Result, ZetaError};
use crate::numerics::{ComplexValue, PrecisionContext};

/// Coefficients c_0..c_N of a power series known modulo x^(N+1).
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<ComplexValue>,
}

impl TruncatedSeries {
    /// Panics on an empty coefficient vector.
    pub fn new(coeffs: Vec<ComplexValue>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        TruncatedSeries { coeffs }
    }

    pub fn from_f64(coeffs: &[f64], prec: u32) -> Self {
        Self::new(coeffs.iter().map(|&c| ComplexValue::from_f64(c, 0.0, prec)).collect())
    }

    pub fn from_reals(coeffs: Vec<Float>) -> Self {
        Self::new(coeffs.into_iter().map(ComplexValue::from_real).collect())
    }

    pub fn one(order: usize, prec: u32) -> Self {
        let mut c = vec![ComplexValue::zero(prec); order + 1];
        c[0] = ComplexValue::one(prec);
        Self::new(c)
    }

    /// L(x) = log(1-x)/(-x) = Σ x^k/(k+1), built from the exact rationals.
    pub fn log_ratio(order: usize, prec: u32) -> Self {
        Self::from_reals(log_ratio_real(order, prec))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ComplexValue] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ComplexValue> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &ComplexValue {
        &self.coeffs[n]
    }

    pub fn prec(&self) -> u32 {
        self.coeffs.iter().map(|c| c.prec()).max().unwrap_or(64)
    }

    fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_real())
    }

    fn real_parts(&self) -> Vec<Float> {
        self.coeffs.iter().map(|c| c.re().clone()).collect()
    }

    /// Evaluate Σ c_n z^n by Horner's rule.
    pub fn eval(&self, z: &ComplexValue) -> ComplexValue {
        let mut acc = ComplexValue::zero(self.prec());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    /// Largest |c_n| over all n, as f64.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs_f64()).fold(0.0, f64::max)
    }
}

fn log_ratio_real(order: usize, prec: u32) -> Vec<Float> {
    (0..=order).map(|k| Float::with_val(prec, Rational::from((1, k as u64 + 1)))).collect()
}

fn check_orders(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<()> {
    if a.order() != b.order() {
        return Err(ZetaError::OrderMismatch(a.order(), b.order()));
    }
    Ok(())
}

/// Cauchy product truncated at the common order.
pub fn ps_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    check_orders(a, b)?;
    let prec = a.prec().max(b.prec());
    let n = a.order();
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = ComplexValue::zero(prec);
        for j in 0..=k {
            acc.add_mul(&a.coeffs[j], &b.coeffs[k - j]);
        }
        out.push(acc);
    }
    Ok(TruncatedSeries::new(out))
}

/// Multiplicative inverse: Σ_{k≤n} b_k c_{n-k} = [n = 0].
pub fn ps_reciprocal(b: &TruncatedSeries) -> Result<TruncatedSeries> {
    if b.coeffs[0].is_zero() {
        return Err(ZetaError::SingularSeries);
    }
    let prec = b.prec();
    let inv0 = b.coeffs[0].recip();
    let mut c: Vec<ComplexValue> = Vec::with_capacity(b.order() + 1);
    c.push(inv0.clone());
    for n in 1..=b.order() {
        let mut acc = ComplexValue::zero(prec);
        for k in 1..=n {
            acc.add_mul(&b.coeffs[k], &c[n - k]);
        }
        c.push(-(&acc * &inv0));
    }
    Ok(TruncatedSeries::new(c))
}

fn check_unit_constant(a: &TruncatedSeries) -> Result<()> {
    let one = ComplexValue::one(a.prec());
    let tol = (-(a.prec() as f64) + 8.0).exp2();
    if a.coeffs[0].dist(&one) > tol {
        return Err(ZetaError::domain("power series exponentiation needs constant term 1"));
    }
    Ok(())
}

/// log(a) for a_0 = 1, via l_n = a_n - (1/n) Σ_{k<n} k l_k a_{n-k}.
pub fn ps_log(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    check_unit_constant(a)?;
    let prec = a.prec();
    let n_max = a.order();
    let mut l = vec![ComplexValue::zero(prec); n_max + 1];
    for n in 1..=n_max {
        let mut acc = ComplexValue::zero(prec);
        for k in 1..n {
            acc.add_mul(&l[k].scale_f64(k as f64), &a.coeffs[n - k]);
        }
        l[n] = &a.coeffs[n] - &acc.div_u64(n as u64);
    }
    Ok(TruncatedSeries::new(l))
}

/// exp(g) for g_0 = 0, via e_n = (1/n) Σ_{k=1}^{n} k g_k e_{n-k}.
pub fn ps_exp(g: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !g.coeffs[0].is_zero() {
        return Err(ZetaError::domain("power series exponential needs constant term 0"));
    }
    let prec = g.prec();
    let n_max = g.order();
    let kg: Vec<ComplexValue> = g.coeffs.iter().enumerate().map(|(k, c)| c.scale_f64(k as f64)).collect();
    let mut e = Vec::with_capacity(n_max + 1);
    e.push(ComplexValue::one(prec));
    for n in 1..=n_max {
        let mut acc = ComplexValue::zero(prec);
        for k in 1..=n {
            acc.add_mul(&kg[k], &e[n - k]);
        }
        e.push(acc.div_u64(n as u64));
    }
    Ok(TruncatedSeries::new(e))
}

fn log_real(a: &[Float], prec: u32) -> Vec<Float> {
    let n_max = a.len() - 1;
    let mut kl: Vec<Float> = vec![Float::new(prec); n_max + 1];
    let mut l = vec![Float::new(prec); n_max + 1];
    for n in 1..=n_max {
        let mut acc = Float::new(prec);
        for k in 1..n {
            acc += &kl[k] * &a[n - k];
        }
        acc /= n as u64;
        l[n] = Float::with_val(prec, &a[n] - &acc);
        kl[n] = Float::with_val(prec, &l[n] * n as u64);
    }
    l
}

/// exp(s·l) for a real series l with l_0 = 0.
fn exp_scaled_real(l: &[Float], s: &ComplexValue, prec: u32) -> Vec<ComplexValue> {
    let n_max = l.len() - 1;
    let kl: Vec<Float> = l.iter().enumerate().map(|(k, c)| Float::with_val(prec, c * k as u64)).collect();
    let mut e = Vec::with_capacity(n_max + 1);
    e.push(ComplexValue::one(prec));
    if s.is_real() {
        let s_re = s.re();
        let mut er: Vec<Float> = vec![Float::with_val(prec, 1)];
        for n in 1..=n_max {
            let mut acc = Float::new(prec);
            for k in 1..=n {
                acc += &kl[k] * &er[n - k];
            }
            acc *= s_re;
            acc /= n as u64;
            er.push(acc);
        }
        return er.into_iter().map(ComplexValue::from_real).collect();
    }
    for n in 1..=n_max {
        let mut acc = ComplexValue::zero(prec);
        for k in 1..=n {
            acc.add_mul_real(&e[n - k], &kl[k]);
        }
        e.push((&acc * s).div_u64(n as u64));
    }
    e
}

/// a^s = exp(s·log a) for a_0 = 1.
pub fn ps_pow(a: &TruncatedSeries, s: &ComplexValue) -> Result<TruncatedSeries> {
    check_unit_constant(a)?;
    let prec = a.prec().max(s.prec());
    if a.is_real() {
        let l = log_real(&a.real_parts(), prec);
        return Ok(TruncatedSeries::new(exp_scaled_real(&l, s, prec)));
    }
    let l = ps_log(a)?;
    let g = TruncatedSeries::new(l.coeffs.iter().map(|c| c * s).collect());
    ps_exp(&g)
}

/// Coefficients of Φ(x) = (1-x) L(x)^s and Ψ(x) = L(x)^σ up to order N.
pub fn phi_psi_coeffs(
    s: &ComplexValue,
    sigma: f64,
    n: usize,
    ctx: &PrecisionContext,
) -> Result<(TruncatedSeries, TruncatedSeries)> {
    if n < 2 {
        return Err(ZetaError::invalid(format!("series order {n} must be at least 2")));
    }
    let prec = ctx.bits();
    let l = log_real(&log_ratio_real(n, prec), prec);
    let c = exp_scaled_real(&l, &s.with_prec(prec), prec);
    let mut phi = Vec::with_capacity(n + 1);
    phi.push(c[0].clone());
    for k in 1..=n {
        phi.push(&c[k] - &c[k - 1]);
    }
    let psi = exp_scaled_real(&l, &ComplexValue::from_f64(sigma, 0.0, prec), prec);
    Ok((TruncatedSeries::new(phi), TruncatedSeries::new(psi)))
}
