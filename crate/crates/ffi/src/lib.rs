//! C ABI over `binodet`.
//!
//! Reports are opaque handles freed with [`binodet_report_free`]. Strings
//! returned to the caller are heap-allocated, NUL-terminated decimal or JSON
//! text freed with [`binodet_string_free`]. Every entry point returns a
//! [`BinodetStatus`]; on failure [`binodet_last_error`] describes it.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use binodet::lattice::{LatticePoint, PointConfiguration};
use binodet::oracle::signed_count;
use binodet::scanner::report::report_to_json;
use binodet::{coefficient, CoefficientReport, Error, Partition};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinodetStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Invariant = 3,
    OutOfRange = 4,
    Panic = 5,
}

/// Opaque handle to a computed coefficient.
pub struct BinodetReport {
    inner: CoefficientReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: BinodetStatus, msg: impl Into<String>) -> BinodetStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> BinodetStatus {
    let status = match e {
        Error::Invariant(_) => BinodetStatus::Invariant,
        Error::FOutOfRange { .. } | Error::IndexOutOfRange { .. } => BinodetStatus::OutOfRange,
        _ => BinodetStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> BinodetStatus) -> BinodetStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(BinodetStatus::Panic, "internal panic"),
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("decimal and JSON text has no NUL").into_raw()
}

unsafe fn partition_from(parts: *const u32, len: usize) -> Result<Partition, BinodetStatus> {
    if parts.is_null() && len > 0 {
        return Err(fail(BinodetStatus::NullPointer, "null partition pointer"));
    }
    let v = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(parts, len).to_vec() };
    Partition::new(v).map_err(from_error)
}

unsafe fn write_report(out: *mut *mut BinodetReport, lambda: &Partition, mu: &Partition) -> BinodetStatus {
    match coefficient(lambda, mu) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(BinodetReport { inner }));
            BinodetStatus::Ok
        }
        Err(e) => from_error(e),
    }
}

/// Message for the last failed call on this thread, or NULL. Owned by the
/// library; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn binodet_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Computes `c(lambda, mu)` from arrays of parts.
///
/// # Safety
/// `lambda` and `mu` must point to `lambda_len` and `mu_len` readable
/// values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn binodet_compute(
    lambda: *const u32,
    lambda_len: usize,
    mu: *const u32,
    mu_len: usize,
    out: *mut *mut BinodetReport,
) -> BinodetStatus {
    guard(|| {
        if out.is_null() {
            return fail(BinodetStatus::NullPointer, "null output handle");
        }
        let lambda = match partition_from(lambda, lambda_len) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let mu = match partition_from(mu, mu_len) {
            Ok(p) => p,
            Err(s) => return s,
        };
        write_report(out, &lambda, &mu)
    })
}

/// Computes `c(lambda, mu)` from comma-separated text such as `"3,3,3"`.
///
/// # Safety
/// `lambda` and `mu` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn binodet_compute_str(
    lambda: *const c_char,
    mu: *const c_char,
    out: *mut *mut BinodetReport,
) -> BinodetStatus {
    guard(|| {
        if lambda.is_null() || mu.is_null() || out.is_null() {
            return fail(BinodetStatus::NullPointer, "null argument");
        }
        let parse = |p: *const c_char| -> Result<Partition, BinodetStatus> {
            let s = CStr::from_ptr(p).to_str().map_err(|_| fail(BinodetStatus::InvalidInput, "partition is not UTF-8"))?;
            s.parse::<Partition>().map_err(from_error)
        };
        match (parse(lambda), parse(mu)) {
            (Ok(l), Ok(m)) => write_report(out, &l, &m),
            (Err(s), _) | (_, Err(s)) => s,
        }
    })
}

/// # Safety
/// `report` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn binodet_report_free(report: *mut BinodetReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn binodet_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `c(lambda, mu)` as a decimal string.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn binodet_report_total(report: *const BinodetReport, out: *mut *mut c_char) -> BinodetStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            return fail(BinodetStatus::NullPointer, "null argument");
        }
        *out = into_c_string((*report).inner.total.to_string());
        BinodetStatus::Ok
    })
}

/// Number of triangular sequences in the report.
///
/// # Safety
/// `report` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn binodet_report_term_count(report: *const BinodetReport) -> usize {
    if report.is_null() {
        return 0;
    }
    (*report).inner.per_sequence.len()
}

/// Entries of term `index`: writes up to `cap` values to `entries`, the
/// sequence length to `len`, and the determinant as a decimal string to `det`.
///
/// # Safety
/// `report` must be a live handle; `entries` must have room for `cap`
/// values (or be NULL when `cap` is 0); `len` and `det` must be writable.
#[no_mangle]
pub unsafe extern "C" fn binodet_report_term(
    report: *const BinodetReport,
    index: usize,
    entries: *mut i64,
    cap: usize,
    len: *mut usize,
    det: *mut *mut c_char,
) -> BinodetStatus {
    guard(|| {
        if report.is_null() || len.is_null() || det.is_null() || (entries.is_null() && cap > 0) {
            return fail(BinodetStatus::NullPointer, "null argument");
        }
        let terms = &(*report).inner.per_sequence;
        let Some((s, d)) = terms.get(index) else {
            return fail(BinodetStatus::OutOfRange, format!("term {index} of {}", terms.len()));
        };
        let e = s.entries();
        *len = e.len();
        if cap > 0 {
            ptr::copy_nonoverlapping(e.as_ptr(), entries, e.len().min(cap));
        }
        *det = into_c_string(d.to_string());
        BinodetStatus::Ok
    })
}

/// `c(lambda, mu; f)` as a decimal string (`p = 3`).
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn binodet_report_partial(
    report: *const BinodetReport,
    f: i64,
    out: *mut *mut c_char,
) -> BinodetStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            return fail(BinodetStatus::NullPointer, "null argument");
        }
        match (*report).inner.per_f.get(&f) {
            Some(v) => {
                *out = into_c_string(v.to_string());
                BinodetStatus::Ok
            }
            None => fail(BinodetStatus::OutOfRange, format!("no partial sum at f = {f}")),
        }
    })
}

/// The report as JSON; `f < 0` means all terms.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn binodet_report_json(
    report: *const BinodetReport,
    f: i64,
    out: *mut *mut c_char,
) -> BinodetStatus {
    guard(|| {
        if report.is_null() || out.is_null() {
            return fail(BinodetStatus::NullPointer, "null argument");
        }
        let inner = &(*report).inner;
        let f = (f >= 0).then_some(f);
        if let Some(f) = f {
            if !inner.per_f.contains_key(&f) {
                return fail(BinodetStatus::OutOfRange, format!("no partial sum at f = {f}"));
            }
        }
        *out = into_c_string(report_to_json(inner, f));
        BinodetStatus::Ok
    })
}

/// Signed count of vertex-disjoint path tuples from `starts` to `ends`,
/// each given as `p` interleaved `x, y` pairs.
///
/// # Safety
/// `starts` and `ends` must point to `2 * p` readable values; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn binodet_signed_count(
    starts: *const i64,
    ends: *const i64,
    p: usize,
    out: *mut *mut c_char,
) -> BinodetStatus {
    guard(|| {
        if out.is_null() || (p > 0 && (starts.is_null() || ends.is_null())) {
            return fail(BinodetStatus::NullPointer, "null argument");
        }
        if p > 8 {
            return fail(BinodetStatus::OutOfRange, format!("p = {p} exceeds 8"));
        }
        let points = |raw: *const i64| -> Vec<LatticePoint> {
            if p == 0 {
                return Vec::new();
            }
            std::slice::from_raw_parts(raw, 2 * p).chunks(2).map(|c| LatticePoint::new(c[0], c[1])).collect()
        };
        let config = PointConfiguration::new(points(starts), points(ends));
        *out = into_c_string(signed_count(&config).to_string());
        BinodetStatus::Ok
    })
}
