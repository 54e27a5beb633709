use serde::Serialize;

use crate::error::{Result, ZetaError};

/// Smallest mantissa width accepted for any computation.
pub const MIN_BITS: u32 = 64;

/// Default ceiling on the working precision of a single cancellation-aware
/// binomial sum. S_n needs roughly `n + target` bits, so this caps n near 16k.
pub const DEFAULT_MAX_BITS: u32 = 1 << 14;

/// Working precision plus the absolute tolerance that results are asked to meet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrecisionContext {
    bits: u32,
    target_tol: f64,
    max_bits: u32,
}

impl PrecisionContext {
    pub fn new(bits: u32, target_tol: f64) -> Result<Self> {
        if bits < MIN_BITS {
            return Err(ZetaError::invalid(format!("precision {bits} bits is below {MIN_BITS}")));
        }
        if !(target_tol.is_finite() && target_tol > 0.0) {
            return Err(ZetaError::invalid(format!("tolerance {target_tol} must be positive")));
        }
        let floor = (-(bits as f64) + 8.0).exp2();
        if target_tol < floor {
            return Err(ZetaError::invalid(format!(
                "tolerance {target_tol:e} is below 2^-(bits-8) = {floor:e} for {bits} bits"
            )));
        }
        Ok(PrecisionContext { bits, target_tol, max_bits: DEFAULT_MAX_BITS.max(bits) })
    }

    /// A context whose tolerance sits 24 bits above the rounding floor.
    pub fn with_bits(bits: u32) -> Result<Self> {
        Self::new(bits, (-(bits as f64) + 24.0).exp2())
    }

    pub fn with_max_bits(mut self, max_bits: u32) -> Self {
        self.max_bits = max_bits.max(self.bits);
        self
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn target_tol(&self) -> f64 {
        self.target_tol
    }

    pub fn max_bits(&self) -> u32 {
        self.max_bits
    }

    /// Bits of absolute accuracy implied by the tolerance.
    pub fn target_bits(&self) -> u32 {
        (-self.target_tol.log2()).ceil().max(1.0) as u32
    }

    /// Internal precision used by kernels before rounding back to `bits`.
    pub fn work_bits(&self) -> u32 {
        self.bits + 32
    }

    /// Same precision, different tolerance (clamped to the legal range).
    pub fn with_tol(&self, tol: f64) -> Self {
        let floor = (-(self.bits as f64) + 8.0).exp2();
        PrecisionContext { target_tol: tol.max(floor), ..*self }
    }

    /// Precision raised to `bits` (never lowered), tolerance unchanged.
    pub fn raised_to(&self, bits: u32) -> Self {
        PrecisionContext { bits: self.bits.max(bits), max_bits: self.max_bits.max(bits), ..*self }
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext { bits: 128, target_tol: 1e-24, max_bits: DEFAULT_MAX_BITS }
    }
}
