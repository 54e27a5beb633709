//! Multiple-precision evaluation and cross-checking of several
//! representations of the Riemann zeta function: the alternating binomial
//! series in S_n(s), the φ(t) integral, Taylor and Laguerre coefficient
//! systems, and the Abel-limit experiments near x = 1.

pub mod error;
pub mod eval;
pub mod integral;
pub mod limits;
pub mod numerics;
pub mod powerseries;
pub mod series;
pub mod taylor;
pub mod verify;
pub mod zeros;

pub use error::{Result, ZetaError};
pub use eval::{EvalResult, Method};
pub use numerics::{ComplexValue, PrecisionContext};
