use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Result, ZetaError};

/// Complex number with MPFR components. As an argument `s` the real part is
/// σ and the imaginary part is t.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexValue {
    re: Float,
    im: Float,
}

impl ComplexValue {
    pub fn new(re: Float, im: Float) -> Self {
        ComplexValue { re, im }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        ComplexValue { re: Float::with_val(prec, re), im: Float::with_val(prec, im) }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        ComplexValue { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        ComplexValue { re: Float::new(prec), im: Float::new(prec) }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_f64(1.0, 0.0, prec)
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn into_parts(self) -> (Float, Float) {
        (self.re, self.im)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// Copy rounded (or widened) to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        ComplexValue { re: Float::with_val(prec, &self.re), im: Float::with_val(prec, &self.im) }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Fails with an overflow error when a component is infinite or NaN.
    pub fn checked(self, what: &str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(ZetaError::Overflow(what.to_string()))
        }
    }

    pub fn conj(&self) -> Self {
        ComplexValue { re: self.re.clone(), im: Float::with_val(self.im.prec(), -&self.im) }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let mut n = Float::with_val(p, &self.re * &self.re);
        n += &self.im * &self.im;
        n
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn abs_f64(&self) -> f64 {
        self.abs().to_f64()
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn scale(&self, k: &Float) -> Self {
        let p = self.prec().max(k.prec());
        ComplexValue { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    pub fn scale_f64(&self, k: f64) -> Self {
        let p = self.prec();
        ComplexValue { re: Float::with_val(p, &self.re * k), im: Float::with_val(p, &self.im * k) }
    }

    /// Exact division by a positive integer (one rounding per component).
    pub fn div_u64(&self, k: u64) -> Self {
        let p = self.prec();
        ComplexValue { re: Float::with_val(p, &self.re / k), im: Float::with_val(p, &self.im / k) }
    }

    pub fn add_real(&self, k: &Float) -> Self {
        ComplexValue { re: Float::with_val(self.prec(), &self.re + k), im: self.im.clone() }
    }

    pub fn add_f64(&self, k: f64) -> Self {
        ComplexValue { re: Float::with_val(self.prec(), &self.re + k), im: self.im.clone() }
    }

    /// Multiply by i.
    pub fn mul_i(&self) -> Self {
        ComplexValue { re: Float::with_val(self.im.prec(), -&self.im), im: self.re.clone() }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let p = self.prec();
        ComplexValue {
            re: Float::with_val(p, &self.re / &n),
            im: Float::with_val(p, -Float::with_val(p, &self.im / &n)),
        }
    }

    /// `self += a * b` without temporaries for the product.
    pub fn add_mul(&mut self, a: &ComplexValue, b: &ComplexValue) {
        self.re += &a.re * &b.re;
        self.re -= &a.im * &b.im;
        self.im += &a.re * &b.im;
        self.im += &a.im * &b.re;
    }

    /// `self += a * k` for real `k`.
    pub fn add_mul_real(&mut self, a: &ComplexValue, k: &Float) {
        self.re += &a.re * k;
        self.im += &a.im * k;
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = Float::with_val(p, self.re.exp_ref());
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        ComplexValue { re: Float::with_val(p, &m * &c), im: Float::with_val(p, &m * &s) }
    }

    /// Principal logarithm; zero maps to an overflow error.
    pub fn ln(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(ZetaError::domain("logarithm of zero"));
        }
        let p = self.prec();
        Ok(ComplexValue { re: Float::with_val(p, self.abs().ln()), im: self.arg() })
    }

    /// Principal power `self^w`.
    pub fn powc(&self, w: &ComplexValue) -> Result<Self> {
        Ok((&self.ln()? * w).exp())
    }

    /// `e^(i*theta)` for real theta.
    pub fn cis(theta: &Float) -> Self {
        let (s, c) = theta.clone().sin_cos(Float::new(theta.prec()));
        ComplexValue { re: c, im: s }
    }

    pub fn sin(&self) -> Self {
        // sin(a+ib) = sin a cosh b + i cos a sinh b
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        ComplexValue { re: Float::with_val(p, &s * &ch), im: Float::with_val(p, &c * &sh) }
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        ComplexValue { re: Float::with_val(p, &c * &ch), im: Float::with_val(p, -(s * sh)) }
    }

    /// Distance |self - other| as f64.
    pub fn dist(&self, other: &ComplexValue) -> f64 {
        (self - other).abs_f64()
    }

    /// Relative distance |self - other| / max(|other|, tiny).
    pub fn rel_dist(&self, other: &ComplexValue) -> f64 {
        let d = (self - other).abs();
        let m = other.abs();
        if m.is_zero() {
            d.to_f64()
        } else {
            Float::with_val(53, d / m).to_f64()
        }
    }

    /// Parses `a+bi`, `a-bi`, `a`, `bi` or `i`, with optional whitespace.
    /// Decimal parts are rounded once, at `prec` bits.
    pub fn parse(text: &str, prec: u32) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ZetaError::invalid(format!("cannot parse complex number {text:?}"));
        let real = |p: &str| -> Result<Float> {
            let v = Float::parse(p).map_err(|_| bad())?;
            Ok(Float::with_val(prec, v))
        };
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(ComplexValue::from_real(real(&t)?));
        };
        // The split is the last sign that does not follow an exponent marker.
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("", body),
        };
        let im = match im_part {
            "" | "+" => Float::with_val(prec, 1),
            "-" => Float::with_val(prec, -1),
            p => real(p)?,
        };
        let re = if re_part.is_empty() { Float::new(prec) } else { real(re_part)? };
        Ok(ComplexValue::new(re, im))
    }

    /// Decimal rendering with `digits` significant digits, e.g. `1.5+2.25i`.
    pub fn to_string_digits(&self, digits: usize) -> String {
        let re = fmt_float(&self.re, digits);
        let im = fmt_float(&self.im, digits);
        if im.starts_with('-') {
            format!("{re}{im}i")
        } else {
            format!("{re}+{im}i")
        }
    }
}

pub(crate) fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

#[cfg(test)]
pub(crate) fn euler_gamma(prec: u32) -> Float {
    Float::with_val(prec, Constant::Euler)
}

/// Scientific notation with a fixed number of significant digits.
pub fn fmt_float(x: &Float, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return "0".to_string();
    }
    let s = x.to_string_radix(10, Some(digits));
    // rug writes exponents as `e5`; keep that form, it parses everywhere.
    s
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(((self.prec() as f64) * std::f64::consts::LOG10_2) as usize);
        f.write_str(&self.to_string_digits(digits))
    }
}

impl<'a> Add<&'a ComplexValue> for &'a ComplexValue {
    type Output = ComplexValue;
    fn add(self, o: &'a ComplexValue) -> ComplexValue {
        let p = self.prec().max(o.prec());
        ComplexValue { re: Float::with_val(p, &self.re + &o.re), im: Float::with_val(p, &self.im + &o.im) }
    }
}

impl<'a> Sub<&'a ComplexValue> for &'a ComplexValue {
    type Output = ComplexValue;
    fn sub(self, o: &'a ComplexValue) -> ComplexValue {
        let p = self.prec().max(o.prec());
        ComplexValue { re: Float::with_val(p, &self.re - &o.re), im: Float::with_val(p, &self.im - &o.im) }
    }
}

impl<'a> Mul<&'a ComplexValue> for &'a ComplexValue {
    type Output = ComplexValue;
    fn mul(self, o: &'a ComplexValue) -> ComplexValue {
        let p = self.prec().max(o.prec());
        let mut re = Float::with_val(p, &self.re * &o.re);
        re -= &self.im * &o.im;
        let mut im = Float::with_val(p, &self.re * &o.im);
        im += &self.im * &o.re;
        ComplexValue { re, im }
    }
}

impl<'a> Div<&'a ComplexValue> for &'a ComplexValue {
    type Output = ComplexValue;
    fn div(self, o: &'a ComplexValue) -> ComplexValue {
        let p = self.prec().max(o.prec());
        let n = o.norm_sqr();
        let mut re = Float::with_val(p, &self.re * &o.re);
        re += &self.im * &o.im;
        let mut im = Float::with_val(p, &self.im * &o.re);
        im -= &self.re * &o.im;
        ComplexValue { re: re / &n, im: im / &n }
    }
}

impl Neg for &ComplexValue {
    type Output = ComplexValue;
    fn neg(self) -> ComplexValue {
        ComplexValue { re: Float::with_val(self.re.prec(), -&self.re), im: Float::with_val(self.im.prec(), -&self.im) }
    }
}

impl Neg for ComplexValue {
    type Output = ComplexValue;
    fn neg(self) -> ComplexValue {
        ComplexValue { re: -self.re, im: -self.im }
    }
}

impl AddAssign<&ComplexValue> for ComplexValue {
    fn add_assign(&mut self, o: &ComplexValue) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

impl SubAssign<&ComplexValue> for ComplexValue {
    fn sub_assign(&mut self, o: &ComplexValue) {
        self.re -= &o.re;
        self.im -= &o.im;
    }
}

impl MulAssign<&ComplexValue> for ComplexValue {
    fn mul_assign(&mut self, o: &ComplexValue) {
        let r = &*self * o;
        *self = r;
    }
}

impl Pow<i32> for &ComplexValue {
    type Output = ComplexValue;
    fn pow(self, n: i32) -> ComplexValue {
        let p = self.prec();
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = ComplexValue::one(p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexValue {
        ComplexValue::from_f64(re, im, 128)
    }

    #[test]
    fn parse_forms() {
        let p = |t: &str| ComplexValue::parse(t, 128).unwrap().to_f64();
        assert_eq!(p("2+0i"), (2.0, 0.0));
        assert_eq!(p(" 0.5 + 14.25i "), (0.5, 14.25));
        assert_eq!(p("0.5-i"), (0.5, -1.0));
        assert_eq!(p("-3i"), (0.0, -3.0));
        assert_eq!(p("i"), (0.0, 1.0));
        assert_eq!(p("-2"), (-2.0, 0.0));
        assert_eq!(p("1e-3-2.5e2i"), (1e-3, -250.0));
        assert_eq!(p("1.5E+1+2e-1i"), (15.0, 0.2));
        for bad in ["", "abc", "1+2", "1+2j", "1++2i"] {
            assert!(ComplexValue::parse(bad, 128).is_err(), "{bad}");
        }
    }

    #[test]
    fn field_ops() {
        let a = c(1.0, 2.0);
        let b = c(3.0, -1.0);
        assert_eq!((&a * &b).to_f64(), (5.0, 5.0));
        let q = &(&a * &b) / &b;
        assert!(q.dist(&a) < 1e-35);
        assert_eq!((&a - &b).to_f64(), (-2.0, 3.0));
        assert!((&a.recip() * &a).dist(&c(1.0, 0.0)) < 1e-35);
    }

    #[test]
    fn exp_ln_roundtrip() {
        let z = c(0.3, -2.5);
        assert!(z.ln().unwrap().exp().dist(&z) < 1e-35);
        assert!(c(0.0, 0.0).ln().is_err());
    }

    #[test]
    fn sin_cos_identity() {
        let z = c(0.7, 1.3);
        let s = z.sin();
        let co = z.cos();
        let one = &(&s * &s) + &(&co * &co);
        assert!(one.dist(&c(1.0, 0.0)) < 1e-33);
    }

    #[test]
    fn integer_power() {
        let z = c(1.0, 1.0);
        assert!((&z).pow(4).dist(&c(-4.0, 0.0)) < 1e-35);
        assert!((&z).pow(-2).dist(&c(0.0, -0.5)) < 1e-35);
    }

    #[test]
    fn display_uses_sign() {
        let z = c(1.5, -2.25);
        assert_eq!(z.to_string_digits(3), "1.50-2.25i");
    }
}
