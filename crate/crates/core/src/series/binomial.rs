use rug::{Float, Integer};

use crate::error::{Result, ZetaError};
use crate::numerics::{neg_s_times, ComplexValue, PrecisionContext};

/// S_1(s)..S_N(s) computed together, with the precision that was needed.
#[derive(Debug, Clone)]
pub struct SnTable {
    pub s: ComplexValue,
    /// values[n-1] = S_n(s)
    pub values: Vec<ComplexValue>,
    pub precision_used: u32,
}

impl SnTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// S_n(s) for 1 ≤ n ≤ len.
    pub fn get(&self, n: usize) -> Option<&ComplexValue> {
        n.checked_sub(1).and_then(|i| self.values.get(i))
    }
}

/// Bits for an alternating binomial sum of length `n` over terms bounded by
/// n^{max(0, -σ)} to reach the context tolerance.
pub(crate) fn cancellation_bits(n: usize, sigma: f64, ctx: &PrecisionContext) -> Result<u32> {
    let growth = if sigma < 0.0 { (-sigma) * (n.max(1) as f64).log2() } else { 0.0 };
    let needed = ctx.target_bits() as u64 + n as u64 + 20 + growth.ceil() as u64;
    if needed > ctx.max_bits() as u64 {
        return Err(ZetaError::PrecisionBudget { needed, max: ctx.max_bits() });
    }
    Ok((needed as u32).max(ctx.bits()))
}

/// Smallest prime factor for 0..=n (entries 0 and 1 are 0).
fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// m^{-s} for m = 1..=count at `bits`, exponentiating only at primes.
pub(crate) fn neg_powers(s: &ComplexValue, count: usize, bits: u32) -> Vec<ComplexValue> {
    let wp = bits + 8 + (usize::BITS - count.leading_zeros());
    let s_w = s.with_prec(wp);
    let spf = smallest_prime_factors(count);
    let mut out: Vec<ComplexValue> = Vec::with_capacity(count);
    for m in 1..=count {
        let v = if m == 1 {
            ComplexValue::one(wp)
        } else if spf[m] as usize == m {
            let ln_m = Float::with_val(wp, Float::with_val(wp, m).ln());
            neg_s_times(&s_w, &ln_m, wp).exp()
        } else {
            let p = spf[m] as usize;
            &out[p - 1] * &out[m / p - 1]
        };
        out.push(v);
    }
    out.into_iter().map(|c| c.with_prec(bits)).collect()
}

/// Σ_{k=0}^{n-1} (-1)^k C(n-1,k) a_k with exact binomials.
fn alternating_binomial_sum(a: &[ComplexValue], wp: u32) -> ComplexValue {
    let n = a.len();
    let mut acc = ComplexValue::zero(wp);
    let mut c = Integer::from(1);
    for (k, ak) in a.iter().enumerate() {
        let cf = Float::with_val(wp, &c);
        if k % 2 == 0 {
            acc.add_mul_real(ak, &cf);
        } else {
            acc.add_mul_real(&-ak, &cf);
        }
        if k + 1 < n {
            c *= (n - 1 - k) as u64;
            c /= (k + 1) as u64;
        }
    }
    acc
}

/// S_n(s) = Σ_{k=0}^{n-1} (-1)^k C(n-1,k)(k+1)^{-s}.
pub fn s_n(s: &ComplexValue, n: usize, ctx: &PrecisionContext) -> Result<ComplexValue> {
    if n == 0 {
        return Err(ZetaError::invalid("S_n needs n ≥ 1"));
    }
    if n == 1 {
        return Ok(ComplexValue::one(ctx.bits()));
    }
    let wp = cancellation_bits(n, s.re().to_f64(), ctx)?;
    s_n_at(s, n, wp).map(|v| v.with_prec(ctx.bits()))
}

/// S_n(s) evaluated directly at an explicit working precision.
pub fn s_n_at(s: &ComplexValue, n: usize, wp: u32) -> Result<ComplexValue> {
    if n == 0 {
        return Err(ZetaError::invalid("S_n needs n ≥ 1"));
    }
    let a = neg_powers(s, n, wp);
    Ok(alternating_binomial_sum(&a, wp))
}

/// S_1..S_N from one forward-difference tableau of (k+1)^{-s}.
pub fn s_n_table(s: &ComplexValue, n_max: usize, ctx: &PrecisionContext) -> Result<SnTable> {
    if n_max == 0 {
        return Err(ZetaError::invalid("S_n table needs N ≥ 1"));
    }
    let wp = cancellation_bits(n_max, s.re().to_f64(), ctx)?;
    let mut d = neg_powers(s, n_max, wp);
    let mut values = Vec::with_capacity(n_max);
    for r in 0..n_max {
        values.push(d[0].with_prec(ctx.bits()));
        let len = n_max - r;
        for k in 0..len - 1 {
            let (lo, hi) = d.split_at_mut(k + 1);
            lo[k] -= &hi[0];
        }
    }
    values[0] = ComplexValue::one(ctx.bits());
    Ok(SnTable { s: s.with_prec(ctx.bits()), values, precision_used: wp })
}

/// Δ_n(λ) = Σ_{m=1}^{n} C(n,m)(-1)^m m^{-λ}.
pub fn delta_n(lambda: &ComplexValue, n: usize, ctx: &PrecisionContext) -> Result<ComplexValue> {
    if n == 0 {
        return Err(ZetaError::invalid("Δ_n needs n ≥ 1"));
    }
    let wp = cancellation_bits(n + 1, lambda.re().to_f64(), ctx)?;
    let p = neg_powers(lambda, n, wp);
    let mut acc = ComplexValue::zero(wp);
    let mut c = Integer::from(n);
    for m in 1..=n {
        let cf = Float::with_val(wp, &c);
        if m % 2 == 0 {
            acc.add_mul_real(&p[m - 1], &cf);
        } else {
            acc.add_mul_real(&-&p[m - 1], &cf);
        }
        c *= (n - m) as u64;
        c /= (m + 1) as u64;
    }
    Ok(acc.with_prec(ctx.bits()))
}
