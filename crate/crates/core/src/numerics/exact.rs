use std::fmt;
use std::sync::RwLock;

use rug::{Float, Integer, Rational};
use serde::{Serialize, Serializer};

use crate::error::{Result, ZetaError};

/// Exact rational in lowest terms with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactRational(Rational);

impl ExactRational {
    pub fn new(num: impl Into<Integer>, den: impl Into<Integer>) -> Result<Self> {
        let den = den.into();
        if den == 0 {
            return Err(ZetaError::domain("zero denominator"));
        }
        Ok(ExactRational(Rational::from((num.into(), den))))
    }

    pub fn from_rational(r: Rational) -> Self {
        ExactRational(r)
    }

    pub fn numerator(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denominator(&self) -> &Integer {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0
    }

    pub fn to_float(&self, prec: u32) -> Float {
        Float::with_val(prec, &self.0)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self.0.denom() == 1 {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Exact C(n, k).
pub fn binomial(n: u64, k: u64) -> Result<Integer> {
    if k > n {
        return Err(ZetaError::domain(format!("binomial({n}, {k}) with k > n")));
    }
    let k = u32::try_from(k.min(n - k)).map_err(|_| ZetaError::invalid("binomial index too large"))?;
    Ok(Integer::from(n).binomial(k))
}

static BERNOULLI: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// B_n with B_1 = -1/2, from Σ_{j=0}^{m} C(m+1, j) B_j = 0.
pub fn bernoulli(n: usize) -> ExactRational {
    {
        let table = BERNOULLI.read().unwrap_or_else(|e| e.into_inner());
        if let Some(b) = table.get(n) {
            return ExactRational(b.clone());
        }
    }
    let mut table = BERNOULLI.write().unwrap_or_else(|e| e.into_inner());
    if table.is_empty() {
        table.push(Rational::from(1));
    }
    while table.len() <= n {
        let m = table.len();
        if m >= 3 && m % 2 == 1 {
            table.push(Rational::new());
            continue;
        }
        // B_m = -1/(m+1) Σ_{j<m} C(m+1, j) B_j
        let mut acc = Rational::new();
        let mut c = Integer::from(1);
        for (j, bj) in table.iter().enumerate() {
            if *bj != 0 {
                acc += Rational::from(bj * &c);
            }
            c *= (m + 1 - j) as u64;
            c /= (j + 1) as u64;
        }
        acc /= -((m + 1) as i64);
        table.push(acc);
    }
    ExactRational(table[n].clone())
}

/// B_0..B_n as floats at `prec`.
pub fn bernoulli_floats(n: usize, prec: u32) -> Vec<Float> {
    (0..=n).map(|k| bernoulli(k).to_float(prec)).collect()
}
