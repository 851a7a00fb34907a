//! C interface to the nlqc bound calculator.
//!
//! Gates and reports are opaque heap handles released with their `_free`
//! function. Every call returns an [`NlqcStatus`]; on failure the message is
//! kept per thread and can be read with [`nlqc_last_error`]. Panics never
//! cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nlqc::bounds::{self, BoundFlag, BoundReport, Reference};
use nlqc::gates::{catalog_lookup, Gate, Rng, FILE_UNITARY_TOL};
use nlqc::optimize::SearchOptions;
use nlqc::qmath::ComplexMatrix;
use nlqc::{Complex64, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NlqcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnknownGate = 3,
    InvalidMatrix = 4,
    NotApplicable = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NlqcFlag {
    None = 0,
    NotControllablyCorrelated = 1,
    NotControllablyEntangled = 2,
}

/// A validated two-qubit unitary.
pub struct NlqcGate(Gate);

/// Result of a bound evaluation.
pub struct NlqcReport(BoundReport);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> NlqcStatus {
    match e {
        Error::UnknownGate { .. } => NlqcStatus::UnknownGate,
        Error::NotApplicable(_) => NlqcStatus::NotApplicable,
        Error::Domain { .. } | Error::Config(_) => NlqcStatus::InvalidArgument,
        Error::Io(_) => NlqcStatus::Internal,
        _ => NlqcStatus::InvalidMatrix,
    }
}

fn guard(f: impl FnOnce() -> Result<(), NlqcStatus>) -> NlqcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NlqcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            NlqcStatus::Internal
        }
    }
}

fn fail(e: Error) -> NlqcStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn null(what: &str) -> NlqcStatus {
    set_error(format!("null pointer passed as `{what}`"));
    NlqcStatus::NullPointer
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length in bytes.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn nlqc_last_error(buf: *mut c_char, len: usize) -> usize {
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

/// Looks up a catalog gate by name (case-insensitive, common aliases).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlqc_gate_from_catalog(name: *const c_char, out: *mut *mut NlqcGate) -> NlqcStatus {
    guard(|| {
        if name.is_null() {
            return Err(null("name"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let name = CStr::from_ptr(name)
            .to_str()
            .map_err(|_| fail(Error::Config("gate name is not UTF-8".into())))?;
        let gate = catalog_lookup(name).map_err(fail)?;
        *out = Box::into_raw(Box::new(NlqcGate(gate)));
        Ok(())
    })
}

/// Builds a gate from 16 real and 16 imaginary parts, row-major.
///
/// # Safety
/// `re` and `im` must each point to 16 doubles; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn nlqc_gate_from_matrix(
    re: *const f64,
    im: *const f64,
    out: *mut *mut NlqcGate,
) -> NlqcStatus {
    guard(|| {
        if re.is_null() || im.is_null() {
            return Err(null("re/im"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let re = std::slice::from_raw_parts(re, 16);
        let im = std::slice::from_raw_parts(im, 16);
        let data = re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        let m = ComplexMatrix::from_vec(4, data).map_err(fail)?;
        let gate = Gate::new("custom", m, FILE_UNITARY_TOL).map_err(fail)?;
        *out = Box::into_raw(Box::new(NlqcGate(gate)));
        Ok(())
    })
}

/// # Safety
/// `gate` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nlqc_gate_free(gate: *mut NlqcGate) {
    if !gate.is_null() {
        drop(Box::from_raw(gate));
    }
}

unsafe fn evaluate(
    gate: *const NlqcGate,
    out: *mut *mut NlqcReport,
    f: impl FnOnce(&Gate) -> Result<BoundReport, Error>,
) -> NlqcStatus {
    guard(|| {
        if gate.is_null() {
            return Err(null("gate"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let report = f(&(*gate).0).map_err(fail)?;
        *out = Box::into_raw(Box::new(NlqcReport(report)));
        Ok(())
    })
}

/// cc bound over both standard references and both wire orientations.
/// `restarts` of 0 selects the default.
///
/// # Safety
/// `gate` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlqc_cc_bound(
    gate: *const NlqcGate,
    seed: u64,
    restarts: usize,
    out: *mut *mut NlqcReport,
) -> NlqcStatus {
    evaluate(gate, out, |g| {
        bounds::cc_bound(g, &Reference::defaults(), true, &search_options(restarts), &mut Rng::new(seed))
    })
}

/// ce bound with the Bell reference.
///
/// # Safety
/// `gate` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlqc_ce_bound(
    gate: *const NlqcGate,
    seed: u64,
    restarts: usize,
    out: *mut *mut NlqcReport,
) -> NlqcStatus {
    evaluate(gate, out, |g| {
        Ok(bounds::ce_bound(g, &search_options(restarts), &mut Rng::new(seed)))
    })
}

fn search_options(restarts: usize) -> SearchOptions {
    if restarts == 0 {
        SearchOptions::default()
    } else {
        SearchOptions::with_restarts(restarts)
    }
}

/// # Safety
/// `report` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nlqc_report_free(report: *mut NlqcReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

unsafe fn read_report(report: *const NlqcReport, out: *mut f64, f: impl FnOnce(&BoundReport) -> f64) -> NlqcStatus {
    guard(|| {
        if report.is_null() {
            return Err(null("report"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        *out = f(&(*report).0);
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlqc_report_bound(report: *const NlqcReport, out: *mut f64) -> NlqcStatus {
    read_report(report, out, |r| r.bound)
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlqc_report_lambda1(report: *const NlqcReport, out: *mut f64) -> NlqcStatus {
    read_report(report, out, |r| r.lambda1)
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlqc_report_lambda2(report: *const NlqcReport, out: *mut f64) -> NlqcStatus {
    read_report(report, out, |r| r.lambda2)
}

/// Writes the Bloch vectors of the two optimal inputs on B, three doubles each.
///
/// # Safety
/// `report` must be a live handle; `phi1` and `phi2` must each hold 3 doubles.
#[no_mangle]
pub unsafe extern "C" fn nlqc_report_witnesses(
    report: *const NlqcReport,
    phi1: *mut f64,
    phi2: *mut f64,
) -> NlqcStatus {
    guard(|| {
        if report.is_null() {
            return Err(null("report"));
        }
        if phi1.is_null() || phi2.is_null() {
            return Err(null("phi1/phi2"));
        }
        let r = &(*report).0;
        ptr::copy_nonoverlapping(r.phi1.as_ptr(), phi1, 3);
        ptr::copy_nonoverlapping(r.phi2.as_ptr(), phi2, 3);
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlqc_report_flag(report: *const NlqcReport, out: *mut NlqcFlag) -> NlqcStatus {
    guard(|| {
        if report.is_null() {
            return Err(null("report"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        *out = match (*report).0.flag {
            None => NlqcFlag::None,
            Some(BoundFlag::NotControllablyCorrelated) => NlqcFlag::NotControllablyCorrelated,
            Some(BoundFlag::NotControllablyEntangled) => NlqcFlag::NotControllablyEntangled,
        };
        Ok(())
    })
}

fn scalar(out: *mut f64, value: Result<f64, Error>) -> NlqcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let v = value.map_err(fail)?;
        // SAFETY: checked non-null; the caller promises validity.
        unsafe { *out = v };
        Ok(())
    })
}

/// Noisy cc bound for an implementation within `eps < 1/4` in diamond norm.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlqc_noisy_cc_bound(lambda1: f64, lambda2: f64, eps: f64, n_a: u32, out: *mut f64) -> NlqcStatus {
    scalar(out, bounds::noisy_cc_bound(lambda1, lambda2, eps, n_a))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlqc_noisy_ce_bound(lambda1: f64, lambda2: f64, gamma: f64, out: *mut f64) -> NlqcStatus {
    scalar(out, bounds::noisy_ce_bound(lambda1, lambda2, gamma))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlqc_delta_correction(x: f64, n_a: u32, out: *mut f64) -> NlqcStatus {
    scalar(out, bounds::delta_correction(x, n_a))
}

/// Bound for `n` parallel copies; `NotApplicable` for ce with non-zero lambda2.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlqc_parallel_repetition(report: *const NlqcReport, n: u32, out: *mut f64) -> NlqcStatus {
    if report.is_null() {
        return null("report");
    }
    scalar(out, bounds::parallel_repetition(&(*report).0, n))
}
