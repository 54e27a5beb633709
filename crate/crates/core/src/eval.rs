use serde::Serialize;

use crate::numerics::ComplexValue;

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Integral,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Series => "series",
            Method::Integral => "integral",
        })
    }
}

/// A value with an error estimate and the work spent on it.
#[derive(Debug, Clone)]
pub struct EvalResult {
    pub value: ComplexValue,
    pub error_estimate: f64,
    pub method: Method,
    /// Series terms or quadrature nodes.
    pub effort: usize,
    /// Largest working precision used, in bits.
    pub precision_bits: u32,
    /// Set when the value is the pole-free quantity (s-1)ζ(s) at s = 1
    /// rather than ζ(s).
    pub pole: bool,
}
