//! C ABI over the `zetarep` evaluators.
//!
//! Every entry point returns a [`ZrStatus`]. On failure a human-readable message
//! is kept per thread and can be read with [`zr_last_error`]. Handles are opaque
//! and must be released with their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use zetarep::integral::zeta_integral;
use zetarep::series::{s_n, zeta_series};
use zetarep::taylor::{a_table, b_table, c_from_b, CoeffTable};
use zetarep::zeros::refine_zero;
use zetarep::{ComplexValue, EvalResult, PrecisionContext, ZetaError};

/// Result codes shared by every function in this library.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Pole = 4,
    Unsupported = 5,
    PrecisionBudget = 6,
    NonConvergence = 7,
    Overflow = 8,
    OutOfRange = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZrMethod {
    Integral = 0,
    Series = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZrCoeffKind {
    A = 0,
    B = 1,
    C = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ZrComplex {
    pub re: f64,
    pub im: f64,
}

/// A value rounded to double precision, with its error estimate and cost.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct ZrEval {
    pub value: ZrComplex,
    pub error_estimate: f64,
    /// Series terms or quadrature nodes.
    pub effort: usize,
    pub precision_bits: u32,
    /// True when `value` is (s-1)ζ(s) at the pole s = 1.
    pub pole: bool,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct ZrZero {
    pub s: ZrComplex,
    pub residual: f64,
    pub func_eq_residual: f64,
    pub iterations: usize,
}

/// Working precision and target tolerance.
pub struct ZrContext {
    ctx: PrecisionContext,
}

/// A table of Taylor or reciprocal coefficients.
pub struct ZrCoeffTable {
    table: CoeffTable,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<Vec<u8>>) {
    let mut bytes = msg.into();
    bytes.retain(|&b| b != 0);
    let c = CString::new(bytes).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &ZetaError) -> ZrStatus {
    match err {
        ZetaError::Domain(_) => ZrStatus::Domain,
        ZetaError::Pole(_) => ZrStatus::Pole,
        ZetaError::Unsupported(_) => ZrStatus::Unsupported,
        ZetaError::InvalidArgument(_) | ZetaError::OrderMismatch(..) | ZetaError::SingularSeries => {
            ZrStatus::InvalidArgument
        }
        ZetaError::PrecisionBudget { .. } => ZrStatus::PrecisionBudget,
        ZetaError::NonConvergence { .. } => ZrStatus::NonConvergence,
        ZetaError::Overflow(_) => ZrStatus::Overflow,
    }
}

struct Fail(ZrStatus, String);

impl From<ZetaError> for Fail {
    fn from(e: ZetaError) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(ZrStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, records any failure message and converts panics to `ZrStatus::Panic`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> ZrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            ZrStatus::Ok
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            ZrStatus::Panic
        }
    }
}

unsafe fn context<'a>(ctx: *const ZrContext) -> Result<&'a PrecisionContext, Fail> {
    ctx.as_ref().map(|c| &c.ctx).ok_or_else(|| null("context"))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(ZrStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

fn complex(z: &ComplexValue) -> ZrComplex {
    let (re, im) = z.to_f64();
    ZrComplex { re, im }
}

fn digits_for(ctx: &PrecisionContext) -> usize {
    (ctx.bits() as f64 * std::f64::consts::LOG10_2).floor() as usize
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Ok(());
    }
    let c = CString::new(s).map_err(|_| Fail(ZrStatus::Panic, "value text contains nul".into()))?;
    out.write(c.into_raw());
    Ok(())
}

/// Message for the most recent failure on this thread, or NULL after a
/// successful call. The pointer stays valid until the next call on the
/// same thread.
#[no_mangle]
pub extern "C" fn zr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned through an `out_text` parameter. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and must not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn zr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates a context with `bits` of working precision. A `target_tol` of 0
/// selects 2^-(bits-24).
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn zr_context_new(bits: u32, target_tol: f64, out: *mut *mut ZrContext) -> ZrStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let ctx = if target_tol == 0.0 {
            PrecisionContext::with_bits(bits)?
        } else {
            PrecisionContext::new(bits, target_tol)?
        };
        out.write(Box::into_raw(Box::new(ZrContext { ctx })));
        Ok(())
    })
}

/// # Safety
/// `ctx` must be NULL or a handle from [`zr_context_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zr_context_free(ctx: *mut ZrContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// # Safety
/// `ctx` must be a live context handle; the outputs must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn zr_context_info(ctx: *const ZrContext, bits: *mut u32, target_tol: *mut f64) -> ZrStatus {
    guard(|| {
        let c = context(ctx)?;
        if !bits.is_null() {
            bits.write(c.bits());
        }
        if !target_tol.is_null() {
            target_tol.write(c.target_tol());
        }
        Ok(())
    })
}

/// Evaluates ζ(s). `s` is text such as "0.5+14.1i" and is read at the
/// context precision. `max_terms` bounds the series method and is ignored by
/// the integral method. When `out_text` is not NULL it receives the value with
/// full digits, to be released with [`zr_string_free`].
///
/// # Safety
/// `ctx` must be a live context, `s` a NUL-terminated string, `out` writable,
/// and `out_text` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn zr_zeta(
    ctx: *const ZrContext,
    s: *const c_char,
    method: ZrMethod,
    max_terms: usize,
    out: *mut ZrEval,
    out_text: *mut *mut c_char,
) -> ZrStatus {
    guard(|| {
        let c = context(ctx)?;
        let s = ComplexValue::parse(text(s, "s")?, c.bits())?;
        let r: EvalResult = match method {
            ZrMethod::Integral => zeta_integral(&s, c)?,
            ZrMethod::Series => zeta_series(&s, max_terms, c)?,
        };
        write(
            out,
            ZrEval {
                value: complex(&r.value),
                error_estimate: r.error_estimate,
                effort: r.effort,
                precision_bits: r.precision_bits,
                pole: r.pole,
            },
        )?;
        write_string(out_text, r.value.to_string_digits(digits_for(c)))
    })
}

/// Evaluates the finite binomial sum S_n(s) for n ≥ 1.
///
/// # Safety
/// Same requirements as [`zr_zeta`].
#[no_mangle]
pub unsafe extern "C" fn zr_sn(
    ctx: *const ZrContext,
    s: *const c_char,
    n: usize,
    out: *mut ZrComplex,
    out_text: *mut *mut c_char,
) -> ZrStatus {
    guard(|| {
        let c = context(ctx)?;
        let s = ComplexValue::parse(text(s, "s")?, c.bits())?;
        let v = s_n(&s, n, c)?;
        write(out, complex(&v))?;
        write_string(out_text, v.to_string_digits(digits_for(c)))
    })
}

/// Refines a zero of ζ in the critical strip from the guess `guess`.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zr_refine_zero(ctx: *const ZrContext, guess: ZrComplex, out: *mut ZrZero) -> ZrStatus {
    guard(|| {
        let c = context(ctx)?;
        let z = refine_zero(&ComplexValue::from_f64(guess.re, guess.im, c.bits()), c)?;
        write(
            out,
            ZrZero {
                s: complex(&z.s),
                residual: z.residual,
                func_eq_residual: z.func_eq_residual,
                iterations: z.iterations,
            },
        )
    })
}

/// Computes coefficients 0..=n_max. `y` is the imaginary part of the
/// expansion point for kinds B and C and is ignored for kind A.
///
/// # Safety
/// `ctx` must be a live context and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn zr_coeffs_new(
    ctx: *const ZrContext,
    kind: ZrCoeffKind,
    y: f64,
    n_max: usize,
    out: *mut *mut ZrCoeffTable,
) -> ZrStatus {
    guard(|| {
        let c = context(ctx)?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let table = match kind {
            ZrCoeffKind::A => a_table(n_max, c)?,
            ZrCoeffKind::B => b_table(y, n_max, c)?,
            ZrCoeffKind::C => c_from_b(&b_table(y, n_max, c)?)?,
        };
        out.write(Box::into_raw(Box::new(ZrCoeffTable { table })));
        Ok(())
    })
}

/// # Safety
/// `table` must be NULL or a handle from [`zr_coeffs_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn zr_coeffs_free(table: *mut ZrCoeffTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Number of coefficients held, or 0 for NULL.
///
/// # Safety
/// `table` must be NULL or a live table handle.
#[no_mangle]
pub unsafe extern "C" fn zr_coeffs_len(table: *const ZrCoeffTable) -> usize {
    table.as_ref().map_or(0, |t| t.table.values.len())
}

/// Largest absolute error estimate over the table, or NaN for NULL.
///
/// # Safety
/// `table` must be NULL or a live table handle.
#[no_mangle]
pub unsafe extern "C" fn zr_coeffs_error_estimate(table: *const ZrCoeffTable) -> f64 {
    table.as_ref().map_or(f64::NAN, |t| t.table.error_estimate)
}

/// Reads coefficient `n`. `digits` sets the length of `out_text` and is
/// ignored when `out_text` is NULL.
///
/// # Safety
/// `table` must be a live table handle, `out` writable, and `out_text` NULL
/// or writable.
#[no_mangle]
pub unsafe extern "C" fn zr_coeffs_get(
    table: *const ZrCoeffTable,
    n: usize,
    digits: usize,
    out: *mut ZrComplex,
    out_text: *mut *mut c_char,
) -> ZrStatus {
    guard(|| {
        let t = table.as_ref().ok_or_else(|| null("table"))?;
        let len = t.table.values.len();
        let v = t
            .table
            .values
            .get(n)
            .ok_or_else(|| Fail(ZrStatus::OutOfRange, format!("index {n} outside table of {len}")))?;
        write(out, complex(v))?;
        write_string(out_text, v.to_string_digits(digits.max(1)))
    })
}
