//! C ABI over `finv-core`.
//!
//! Conventions:
//! * every fallible call returns a [`FinvStatus`]; results go through out
//!   pointers, which are written only on `FINV_STATUS_OK` (and on
//!   `FINV_STATUS_NOT_CONVERGED` for report-producing calls);
//! * handles are opaque, created by `*_new`/`*_lookup`/computation calls and
//!   released by the matching `*_free`, which accepts NULL;
//! * the message of the most recent failure on the calling thread is
//!   available from [`finv_last_error_message`];
//! * panics never cross the boundary; they map to `FINV_STATUS_PANIC`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use finv_core::inversion::{invert_at, Acceleration, InversionReport, TruncationLadder};
use finv_core::localization::localize_invert;
use finv_core::multivar::{invert2d_at, lookup2d, TestFunction2D};
use finv_core::perron::{heaviside_kernel_with, semicircle_bound, ComplexParameter};
use finv_core::quadrature::{sinc_integral, Tolerance};
use finv_core::testfns::{lookup, TestFunction};
use finv_core::transform::fourier_transform;
use finv_core::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownFunction = 3,
    Precondition = 4,
    /// The value was produced but a quadrature missed its tolerance.
    NotConverged = 5,
    Numerical = 6,
    /// The requested quantity does not exist (e.g. no reference value).
    Unavailable = 7,
    Panic = 8,
}

/// Limit estimate applied to a ladder.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinvAcceleration {
    None = 0,
    PairwiseAveraging = 1,
    IteratedAveraging = 2,
    Extrapolation = 3,
}

impl From<FinvAcceleration> for Acceleration {
    fn from(a: FinvAcceleration) -> Self {
        match a {
            FinvAcceleration::None => Acceleration::None,
            FinvAcceleration::PairwiseAveraging => Acceleration::PairwiseAveraging,
            FinvAcceleration::IteratedAveraging => Acceleration::IteratedAveraging,
            FinvAcceleration::Extrapolation => Acceleration::Extrapolation,
        }
    }
}

/// Opaque one-dimensional catalog function.
pub struct FinvFunction(TestFunction);

/// Opaque two-dimensional catalog function.
pub struct FinvFunction2D(TestFunction2D);

/// Opaque truncation ladder.
pub struct FinvLadder(TruncationLadder);

/// Opaque inversion report.
pub struct FinvReport(InversionReport);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(e: &Error) -> FinvStatus {
    match e {
        Error::UnknownFunction(_) => FinvStatus::UnknownFunction,
        Error::Precondition(_) | Error::MetadataInconsistency { .. } => FinvStatus::Precondition,
        Error::InvalidInterval { .. }
        | Error::InvalidTolerance(_)
        | Error::Domain(_)
        | Error::InvalidLadder(_)
        | Error::Parse(_) => FinvStatus::InvalidArgument,
        Error::InvalidIntegrand { .. } | Error::DivergenceSuspected { .. } | Error::Precision(_) => {
            FinvStatus::Numerical
        }
    }
}

enum Fail {
    Null(&'static str),
    Core(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

/// Run `body`, translating errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<FinvStatus, Fail>) -> FinvStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("{what} is NULL"));
            FinvStatus::NullPointer
        }
        Ok(Err(Fail::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            FinvStatus::Panic
        }
    }
}

fn null_error(what: &'static str) -> Fail {
    Fail::Null(what)
}

unsafe fn read_id<'a>(id: *const c_char) -> Result<&'a str, Fail> {
    if id.is_null() {
        return Err(null_error("id"));
    }
    CStr::from_ptr(id)
        .to_str()
        .map_err(|_| Fail::Core(Error::Parse("id is not valid UTF-8".into())))
}

fn tolerance(abs_tol: f64, rel_tol: f64) -> Result<Tolerance, Error> {
    Tolerance::new(abs_tol, rel_tol, Tolerance::default().max_subdivisions)
}

unsafe fn write<T>(out: *mut T, v: T) {
    if !out.is_null() {
        *out = v;
    }
}

/// Copy the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len − 1` bytes). Returns the full message length in bytes.
#[no_mangle]
pub unsafe extern "C" fn finv_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn finv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Look up a one-dimensional catalog entry by id.
#[no_mangle]
pub unsafe extern "C" fn finv_function_lookup(id: *const c_char, out: *mut *mut FinvFunction) -> FinvStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_error("out"));
        }
        let f = lookup(read_id(id)?)?;
        *out = Box::into_raw(Box::new(FinvFunction(f)));
        Ok(FinvStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn finv_function_free(f: *mut FinvFunction) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// `f(x)`.
#[no_mangle]
pub unsafe extern "C" fn finv_function_eval(f: *const FinvFunction, x: f64, out: *mut f64) -> FinvStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null_error("function"))?;
        if out.is_null() {
            return Err(null_error("out"));
        }
        *out = f.0.eval(x);
        Ok(FinvStatus::Ok)
    })
}

/// Numerical `f̂(s)` with its error estimate.
#[no_mangle]
pub unsafe extern "C" fn finv_fourier_transform(
    f: *const FinvFunction,
    s: f64,
    abs_tol: f64,
    rel_tol: f64,
    out_re: *mut f64,
    out_im: *mut f64,
    out_error: *mut f64,
) -> FinvStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null_error("function"))?;
        let o = fourier_transform(&f.0, s, &tolerance(abs_tol, rel_tol)?)?;
        write(out_re, o.value.re);
        write(out_im, o.value.im);
        write(out_error, o.error_estimate);
        Ok(if o.converged { FinvStatus::Ok } else { FinvStatus::NotConverged })
    })
}

/// A ladder from `n` strictly increasing positive radii.
#[no_mangle]
pub unsafe extern "C" fn finv_ladder_new(
    radii: *const f64,
    n: usize,
    acceleration: FinvAcceleration,
    out: *mut *mut FinvLadder,
) -> FinvStatus {
    guard(|| {
        if radii.is_null() || out.is_null() {
            return Err(null_error("radii or out"));
        }
        let r = std::slice::from_raw_parts(radii, n).to_vec();
        let ladder = TruncationLadder::new(r, acceleration.into())?;
        *out = Box::into_raw(Box::new(FinvLadder(ladder)));
        Ok(FinvStatus::Ok)
    })
}

/// The default ladder: 25, 50, …, 800 with extrapolation.
#[no_mangle]
pub extern "C" fn finv_ladder_default() -> *mut FinvLadder {
    Box::into_raw(Box::new(FinvLadder(TruncationLadder::default())))
}

#[no_mangle]
pub unsafe extern "C" fn finv_ladder_free(l: *mut FinvLadder) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

fn report_status(r: &InversionReport) -> FinvStatus {
    if r.converged {
        FinvStatus::Ok
    } else {
        FinvStatus::NotConverged
    }
}

unsafe fn emit_report(out: *mut *mut FinvReport, r: InversionReport) -> Result<FinvStatus, Fail> {
    let status = report_status(&r);
    *out = Box::into_raw(Box::new(FinvReport(r)));
    Ok(status)
}

/// Truncated inversion integrals of `f` at `x` along `ladder`.
#[no_mangle]
pub unsafe extern "C" fn finv_invert_at(
    f: *const FinvFunction,
    x: f64,
    ladder: *const FinvLadder,
    abs_tol: f64,
    rel_tol: f64,
    out: *mut *mut FinvReport,
) -> FinvStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null_error("function"))?;
        let l = ladder.as_ref().ok_or_else(|| null_error("ladder"))?;
        if out.is_null() {
            return Err(null_error("out"));
        }
        emit_report(out, invert_at(&f.0, x, &l.0, &tolerance(abs_tol, rel_tol)?)?)
    })
}

/// Inversion at `x` from the restriction of `f` to `[x1, x2]`.
#[no_mangle]
pub unsafe extern "C" fn finv_localize_invert(
    f: *const FinvFunction,
    x1: f64,
    x2: f64,
    x: f64,
    ladder: *const FinvLadder,
    abs_tol: f64,
    rel_tol: f64,
    out: *mut *mut FinvReport,
) -> FinvStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null_error("function"))?;
        let l = ladder.as_ref().ok_or_else(|| null_error("ladder"))?;
        if out.is_null() {
            return Err(null_error("out"));
        }
        emit_report(out, localize_invert(&f.0, x1, x2, x, &l.0, &tolerance(abs_tol, rel_tol)?)?)
    })
}

/// Look up a two-dimensional catalog entry by id.
#[no_mangle]
pub unsafe extern "C" fn finv_function2d_lookup(id: *const c_char, out: *mut *mut FinvFunction2D) -> FinvStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_error("out"));
        }
        let f = lookup2d(read_id(id)?)?;
        *out = Box::into_raw(Box::new(FinvFunction2D(f)));
        Ok(FinvStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn finv_function2d_free(f: *mut FinvFunction2D) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Iterated-limit inversion of a two-dimensional entry at `(x, y)`.
#[no_mangle]
pub unsafe extern "C" fn finv_invert2d_at(
    f: *const FinvFunction2D,
    x: f64,
    y: f64,
    ladder1: *const FinvLadder,
    ladder2: *const FinvLadder,
    abs_tol: f64,
    rel_tol: f64,
    out: *mut *mut FinvReport,
) -> FinvStatus {
    guard(|| {
        let f = f.as_ref().ok_or_else(|| null_error("function"))?;
        let l1 = ladder1.as_ref().ok_or_else(|| null_error("ladder1"))?;
        let l2 = ladder2.as_ref().ok_or_else(|| null_error("ladder2"))?;
        if out.is_null() {
            return Err(null_error("out"));
        }
        emit_report(out, invert2d_at(&f.0, x, y, &l1.0, &l2.0, &tolerance(abs_tol, rel_tol)?)?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn finv_report_free(r: *mut FinvReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Number of ladder rows in a report; 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn finv_report_len(r: *const FinvReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.partials.len())
}

/// Row `i`: radius and partial value.
#[no_mangle]
pub unsafe extern "C" fn finv_report_partial(
    r: *const FinvReport,
    i: usize,
    out_r: *mut f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> FinvStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null_error("report"))?;
        let row = r
            .0
            .partials
            .get(i)
            .ok_or_else(|| Fail::Core(Error::Domain(format!("row {i} out of range"))))?;
        write(out_r, row.r);
        write(out_re, row.value.re);
        write(out_im, row.value.im);
        Ok(FinvStatus::Ok)
    })
}

/// Accelerated limit estimate and the accumulated error estimate.
#[no_mangle]
pub unsafe extern "C" fn finv_report_accelerated(
    r: *const FinvReport,
    out_re: *mut f64,
    out_im: *mut f64,
    out_error_estimate: *mut f64,
) -> FinvStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null_error("report"))?;
        write(out_re, r.0.accelerated.re);
        write(out_im, r.0.accelerated.im);
        write(out_error_estimate, r.0.error_estimate);
        Ok(report_status(&r.0))
    })
}

/// `|accelerated − f(x)|`; `FINV_STATUS_UNAVAILABLE` without a reference.
#[no_mangle]
pub unsafe extern "C" fn finv_report_abs_error(r: *const FinvReport, out: *mut f64) -> FinvStatus {
    guard(|| {
        let r = r.as_ref().ok_or_else(|| null_error("report"))?;
        match r.0.abs_error {
            Some(e) => {
                write(out, e);
                Ok(FinvStatus::Ok)
            }
            None => {
                set_error("report has no reference value");
                Ok(FinvStatus::Unavailable)
            }
        }
    })
}

/// `(1/2πi) ∫_{−R}^{R} e^{ipx}/(x − w) dx` with `w = w_re + i w_im`.
#[no_mangle]
pub unsafe extern "C" fn finv_heaviside_kernel(
    p: f64,
    w_re: f64,
    w_im: f64,
    r: f64,
    out_re: *mut f64,
    out_im: *mut f64,
    out_error: *mut f64,
) -> FinvStatus {
    guard(|| {
        let w = ComplexParameter::new(w_re, w_im)?;
        let o = heaviside_kernel_with(p, w, r, &Tolerance::default())?;
        write(out_re, o.value.re);
        write(out_im, o.value.im);
        write(out_error, o.error_estimate);
        Ok(if o.converged { FinvStatus::Ok } else { FinvStatus::NotConverged })
    })
}

/// Arc bound for `p > 0`, `R > 2|w|`.
#[no_mangle]
pub unsafe extern "C" fn finv_semicircle_bound(p: f64, r: f64, w_modulus: f64, out: *mut f64) -> FinvStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_error("out"));
        }
        *out = semicircle_bound(p, r, w_modulus)?;
        Ok(FinvStatus::Ok)
    })
}

/// `∫_0^R sin(x)/x dx`; `R = +∞` gives `π/2`.
#[no_mangle]
pub unsafe extern "C" fn finv_sinc_integral(r: f64, out: *mut f64) -> FinvStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_error("out"));
        }
        *out = sinc_integral(r)?;
        Ok(FinvStatus::Ok)
    })
}
