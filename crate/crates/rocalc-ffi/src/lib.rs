//! C ABI for the coefficient calculator.
//!
//! All functions return an `int` status: 0 success, 2 invalid argument,
//! 3 size limit, 4 internal error (1 is reserved for "verification failed"
//! in `ro_verify_suite`). Handles are opaque; strings returned through out
//! parameters are owned by the caller and must be released with
//! `ro_string_free`. The companion header is `include/rocalc.h`.

use std::collections::BTreeMap;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rocalc::charlattice::{Character, SplittingConvention};
use rocalc::cli::{compute_rows_json, parse_m};
use rocalc::series::phi_poincare;
use rocalc::sscomplex::{coefficients, verify_suite, Coefficients};
use rocalc::Error;

pub const RO_OK: c_int = 0;
pub const RO_VERIFY_FAILED: c_int = 1;
pub const RO_INVALID_ARGUMENT: c_int = 2;
pub const RO_SIZE_LIMIT: c_int = 3;
pub const RO_INTERNAL: c_int = 4;

/// Opaque handle around one finished computation.
pub struct RoComputation {
    coeffs: Coefficients,
    t_min: i64,
    t_max: i64,
}

fn status_of(e: &Error) -> c_int {
    match e {
        Error::Parse(_) | Error::NegativeCoefficient(..) | Error::NotACircuit(_)
        | Error::NotIndexTwo => RO_INVALID_ARGUMENT,
        Error::SizeLimit(_) => RO_SIZE_LIMIT,
        Error::CompositionNonzero | Error::NormalFormFailure => RO_INTERNAL,
    }
}

/// Runs `f` guarding against panics crossing the ABI.
fn guarded(f: impl FnOnce() -> c_int) -> c_int {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(RO_INTERNAL)
}

unsafe fn cstr<'a>(p: *const c_char) -> Option<&'a str> {
    if p.is_null() {
        return None;
    }
    CStr::from_ptr(p).to_str().ok()
}

fn give_string(s: String, out: *mut *mut c_char) -> c_int {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            RO_OK
        }
        Err(_) => RO_INTERNAL,
    }
}

/// Computes coefficients for G = (Z/2)^n in degrees [t_min, t_max].
/// `m_spec` uses the "101:2,011:-1" syntax; NULL or "" means m = 0.
///
/// # Safety
/// `out` must be a valid pointer; `m_spec` must be NULL or a NUL-terminated
/// string.
#[no_mangle]
pub unsafe extern "C" fn ro_compute_new(
    n: u8,
    m_spec: *const c_char,
    t_min: i64,
    t_max: i64,
    out: *mut *mut RoComputation,
) -> c_int {
    if out.is_null() || t_min > t_max {
        return RO_INVALID_ARGUMENT;
    }
    let spec = if m_spec.is_null() {
        ""
    } else {
        match cstr(m_spec) {
            Some(s) => s,
            None => return RO_INVALID_ARGUMENT,
        }
    };
    guarded(|| {
        let m: BTreeMap<Character, i64> = match parse_m(spec, n) {
            Ok(m) => m,
            Err(e) => return status_of(&e),
        };
        match coefficients(n, &m, t_min, t_max, SplittingConvention::Pivot) {
            Ok(coeffs) => {
                *out = Box::into_raw(Box::new(RoComputation { coeffs, t_min, t_max }));
                RO_OK
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Total coefficient dimension at degree t, or -1 outside the computed range.
///
/// # Safety
/// `h` must be a live handle from `ro_compute_new`.
#[no_mangle]
pub unsafe extern "C" fn ro_compute_total(h: *const RoComputation, t: i64) -> i64 {
    let Some(h) = h.as_ref() else { return -1 };
    if t < h.t_min || t > h.t_max {
        return -1;
    }
    h.coeffs.total(t) as i64
}

/// Serializes the computation as the JSON row array of the CLI's
/// `compute --json`.
///
/// # Safety
/// `h` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ro_compute_json(
    h: *const RoComputation,
    out: *mut *mut c_char,
) -> c_int {
    let (Some(h), false) = (h.as_ref(), out.is_null()) else {
        return RO_INVALID_ARGUMENT;
    };
    guarded(|| give_string(compute_rows_json(&h.coeffs, h.t_min, h.t_max).to_string(), out))
}

/// Releases a computation handle. NULL is a no-op.
///
/// # Safety
/// `h` must be NULL or a handle not freed before.
#[no_mangle]
pub unsafe extern "C" fn ro_compute_free(h: *mut RoComputation) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Poincare series of the fixed-point ring, as the CLI's series JSON.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ro_series_phi_json(n: u8, out: *mut *mut c_char) -> c_int {
    if out.is_null() {
        return RO_INVALID_ARGUMENT;
    }
    if n == 0 || n > 8 {
        return RO_SIZE_LIMIT;
    }
    guarded(|| give_string(phi_poincare(n).to_json().to_string(), out))
}

/// Runs a named verification suite: 0 pass, 1 fail, 2 unknown suite.
///
/// # Safety
/// `name` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ro_verify_suite(name: *const c_char, n: u8) -> c_int {
    let Some(name) = cstr(name) else {
        return RO_INVALID_ARGUMENT;
    };
    guarded(|| match verify_suite(name, n) {
        Ok(rep) if rep.pass => RO_OK,
        Ok(_) => RO_VERIFY_FAILED,
        Err(e) => status_of(&e),
    })
}

/// Releases a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, not freed before.
#[no_mangle]
pub unsafe extern "C" fn ro_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
