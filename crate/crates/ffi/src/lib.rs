//! C ABI over azk-core. Objects are opaque handles released with the matching
//! `_free`; every fallible call returns an [`AzkStatus`] and records a
//! message readable through [`azk_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use azk_core::arith::{parse_rat, ExactPoly};
use azk_core::casebook::run_case;
use azk_core::cli::parse_poly;
use azk_core::knots::{alexander, predicates, KnotFamilySpec};
use azk_core::quaternion::{hilbert_p, hilbert_real, ramification_set};
use azk_core::star::{bad_primes, star_check, star_ell_check, BadPrimesReport, StarReport};
use azk_core::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AzkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    AzumayaNegative = 5,
    Panic = 6,
}

pub struct AzkPoly(ExactPoly);
pub struct AzkStarReport(StarReport);
pub struct AzkBadPrimes(BadPrimesReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Message for the most recent failure on this thread; empty after success.
/// The pointer stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn azk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

fn status_of(e: &Error) -> AzkStatus {
    match e {
        Error::Parse { .. } => AzkStatus::ParseError,
        Error::AzumayaNegative => AzkStatus::AzumayaNegative,
        _ => AzkStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), AzkStatus>) -> AzkStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AzkStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            AzkStatus::Panic
        }
    }
}

fn fail(e: Error) -> AzkStatus {
    set_error(&e.to_string());
    status_of(&e)
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, AzkStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(AzkStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        AzkStatus::InvalidUtf8
    })
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, AzkStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle");
        AzkStatus::NullPointer
    })
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), AzkStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(AzkStatus::NullPointer);
    }
    out.write(v);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Parse a polynomial such as `"t^2 - 3t + 1"`.
///
/// # Safety
/// `src` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn azk_poly_parse(src: *const c_char, out: *mut *mut AzkPoly) -> AzkStatus {
    guard(|| {
        let p = parse_poly(text(src)?).map_err(fail)?;
        put(out, Box::into_raw(Box::new(AzkPoly(p))))
    })
}

/// Alexander polynomial of a family member, e.g. `"twist:8"` or `"lehmer"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn azk_poly_family(spec: *const c_char, out: *mut *mut AzkPoly) -> AzkStatus {
    guard(|| {
        let s: KnotFamilySpec = text(spec)?.parse().map_err(fail)?;
        let p = alexander(&s).map_err(fail)?;
        put(out, Box::into_raw(Box::new(AzkPoly(p))))
    })
}

/// Canonical text form; release with [`azk_string_free`].
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn azk_poly_to_string(p: *const AzkPoly, out: *mut *mut c_char) -> AzkStatus {
    guard(|| {
        let p = handle(p)?;
        put(out, c_string(p.0.to_string()))
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn azk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `p` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn azk_poly_free(p: *mut AzkPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Decide condition (⋆) for every root.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn azk_star_check(p: *const AzkPoly, out: *mut *mut AzkStarReport) -> AzkStatus {
    guard(|| {
        let r = star_check(&handle(p)?.0).map_err(fail)?;
        put(out, Box::into_raw(Box::new(AzkStarReport(r))))
    })
}

/// 1 if positive, 0 if negative, -1 on a null handle.
///
/// # Safety
/// `r` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn azk_star_report_is_positive(r: *const AzkStarReport) -> c_int {
    match r.as_ref() {
        Some(r) => c_int::from(r.0.verdict.is_positive()),
        None => -1,
    }
}

/// Number of failing factors.
///
/// # Safety
/// `r` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn azk_star_report_witness_count(r: *const AzkStarReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.witnesses.len())
}

/// # Safety
/// `r` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn azk_star_report_json(r: *const AzkStarReport, out: *mut *mut c_char) -> AzkStatus {
    guard(|| {
        let r = handle(r)?;
        let s = serde_json::to_string(&r.0).map_err(|e| {
            set_error(&e.to_string());
            AzkStatus::InvalidInput
        })?;
        put(out, c_string(s))
    })
}

/// # Safety
/// `r` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn azk_star_report_free(r: *mut AzkStarReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Condition (⋆_l); writes 1 when it holds and 0 otherwise.
///
/// # Safety
/// `p` must be a live handle and `holds` writable.
#[no_mangle]
pub unsafe extern "C" fn azk_star_mod(p: *const AzkPoly, ell: u64, holds: *mut c_int) -> AzkStatus {
    guard(|| {
        let r = star_ell_check(&handle(p)?.0, ell).map_err(fail)?;
        put(holds, c_int::from(r.holds))
    })
}

/// Bad primes of a positive polynomial; `scan_limit = 0` tests candidates only.
/// A negative polynomial yields `AzumayaNegative`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn azk_bad_primes(p: *const AzkPoly, scan_limit: u64, out: *mut *mut AzkBadPrimes) -> AzkStatus {
    guard(|| {
        let lim = (scan_limit > 0).then_some(scan_limit);
        let r = bad_primes(&handle(p)?.0, lim).map_err(fail)?;
        put(out, Box::into_raw(Box::new(AzkBadPrimes(r))))
    })
}

/// # Safety
/// `b` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn azk_bad_primes_count(b: *const AzkBadPrimes) -> usize {
    b.as_ref().map_or(0, |b| b.0.failing.len())
}

/// The `i`-th bad prime in increasing order, or 0 when out of range.
///
/// # Safety
/// `b` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn azk_bad_primes_get(b: *const AzkBadPrimes, i: usize) -> u64 {
    b.as_ref().and_then(|b| b.0.failing.get(i).copied()).unwrap_or(0)
}

/// # Safety
/// `b` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn azk_bad_primes_free(b: *mut AzkBadPrimes) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

unsafe fn rational(s: *const c_char) -> Result<azk_core::arith::Rat, AzkStatus> {
    let t = text(s)?;
    parse_rat(t).ok_or_else(|| {
        set_error(&format!("not a rational number: '{t}'"));
        AzkStatus::ParseError
    })
}

/// Hilbert symbol `(a, b)_v` with `a`, `b` given as decimal rationals like
/// `"-3"` or `"5/7"`; `place = 0` is the real place, otherwise a prime.
///
/// # Safety
/// `a`, `b` must be NUL-terminated strings and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn azk_hilbert_symbol(
    a: *const c_char,
    b: *const c_char,
    place: u64,
    out: *mut c_int,
) -> AzkStatus {
    guard(|| {
        let (x, y) = (rational(a)?, rational(b)?);
        let s = if place == 0 { hilbert_real(&x, &y) } else { hilbert_p(&x, &y, place) }.map_err(fail)?;
        put(out, c_int::from(s))
    })
}

/// Ramification of `(a, b)_Q`. Up to `cap` finite primes go to `primes`;
/// `count` receives the full number, which may exceed `cap`.
///
/// # Safety
/// `a`, `b` must be NUL-terminated strings; `real` and `count` writable;
/// `primes` writable for `cap` entries (may be null when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn azk_ramification(
    a: *const c_char,
    b: *const c_char,
    real: *mut c_int,
    primes: *mut u64,
    cap: usize,
    count: *mut usize,
) -> AzkStatus {
    guard(|| {
        let s = ramification_set(&rational(a)?, &rational(b)?).map_err(fail)?;
        if cap > 0 && primes.is_null() {
            set_error("null prime buffer");
            return Err(AzkStatus::NullPointer);
        }
        put(real, c_int::from(s.includes_real_place))?;
        put(count, s.finite_primes.len())?;
        for (i, p) in s.finite_primes.iter().take(cap).enumerate() {
            primes.add(i).write(*p);
        }
        Ok(())
    })
}

/// Run a casebook entry (`"fig8"`, `"pretzel7"`, `"m137"`). `json` may be
/// null; otherwise it receives the report.
///
/// # Safety
/// `name` must be a NUL-terminated string and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn azk_casebook_run(
    name: *const c_char,
    passed: *mut c_int,
    json: *mut *mut c_char,
) -> AzkStatus {
    guard(|| {
        let r = run_case(text(name)?).map_err(fail)?;
        put(passed, c_int::from(r.passed))?;
        if !json.is_null() {
            json.write(c_string(serde_json::to_string(&r).unwrap_or_default()));
        }
        Ok(())
    })
}

/// Root-location predicates as JSON.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn azk_knot_predicates_json(p: *const AzkPoly, out: *mut *mut c_char) -> AzkStatus {
    guard(|| {
        let r = predicates(&handle(p)?.0).map_err(fail)?;
        put(out, c_string(serde_json::to_string(&r).unwrap_or_default()))
    })
}
