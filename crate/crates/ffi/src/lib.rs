//! C ABI over the `scdt` library.
//!
//! Codes are opaque `ScdtCode` handles. Every fallible call returns an
//! `ScdtStatus`; on failure the message is available from
//! `scdt_last_error` on the same thread. Strings handed out by the library
//! must be released with `scdt_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use scdt::catalog::construct;
use scdt::code::SphericalCode;
use scdt::codefile::{emit_code, load_code, parse_code, LoadError};
use scdt::design::classify;
use scdt::report::{analyze, bound_report, AnalyzeOptions};

/// An exact spherical code.
pub struct ScdtCode(SphericalCode);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScdtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Io = 4,
    InvalidCode = 5,
    UnknownName = 6,
    /// The analysis finished but an expectation failed; the report is still returned.
    Violation = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScdtProfile {
    pub dim: usize,
    pub size: usize,
    /// Number of distinct inner products.
    pub s: usize,
    /// Design strength.
    pub t: usize,
    pub tight: bool,
    pub delsarte: bool,
    pub rational: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: ScdtStatus, msg: impl Into<String>) -> ScdtStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> ScdtStatus) -> ScdtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(ScdtStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, ScdtStatus> {
    if s.is_null() {
        return Err(fail(ScdtStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(ScdtStatus::InvalidUtf8, "argument is not valid UTF-8"))
}

fn load_status(e: &LoadError) -> ScdtStatus {
    match e {
        LoadError::Parse { .. } => ScdtStatus::Parse,
        LoadError::Invalid(_) => ScdtStatus::InvalidCode,
        LoadError::Io { .. } => ScdtStatus::Io,
    }
}

unsafe fn put_code(out: *mut *mut ScdtCode, code: Result<SphericalCode, ScdtStatus>) -> ScdtStatus {
    match code {
        Ok(c) => {
            *out = Box::into_raw(Box::new(ScdtCode(c)));
            ScdtStatus::Ok
        }
        Err(status) => status,
    }
}

unsafe fn put_string(out: *mut *mut c_char, text: String) -> ScdtStatus {
    match CString::new(text) {
        Ok(s) => {
            *out = s.into_raw();
            ScdtStatus::Ok
        }
        Err(_) => fail(ScdtStatus::Panic, "report contains a NUL byte"),
    }
}

/// Parses a code from `scdt-code v1` text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scdt_code_from_text(
    text: *const c_char,
    out: *mut *mut ScdtCode,
) -> ScdtStatus {
    guard(|| {
        if out.is_null() {
            return fail(ScdtStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let code = read_str(text)
            .and_then(|t| parse_code(t).map_err(|e| fail(load_status(&e), e.to_string())));
        put_code(out, code)
    })
}

/// Loads a code file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scdt_code_load(
    path: *const c_char,
    out: *mut *mut ScdtCode,
) -> ScdtStatus {
    guard(|| {
        if out.is_null() {
            return fail(ScdtStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let code = read_str(path)
            .and_then(|p| load_code(p).map_err(|e| fail(load_status(&e), e.to_string())));
        put_code(out, code)
    })
}

/// Builds a catalog code such as `icosahedron` or `simplex(5)`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scdt_code_catalog(
    name: *const c_char,
    out: *mut *mut ScdtCode,
) -> ScdtStatus {
    guard(|| {
        if out.is_null() {
            return fail(ScdtStatus::NullPointer, "null output pointer");
        }
        *out = ptr::null_mut();
        let code = read_str(name)
            .and_then(|n| construct(n).map_err(|e| fail(ScdtStatus::UnknownName, e.to_string())));
        put_code(out, code)
    })
}

/// Releases a code. Null is ignored.
///
/// # Safety
/// `code` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn scdt_code_free(code: *mut ScdtCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Dimension, size, distance count, strength and flags.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scdt_code_profile(
    code: *const ScdtCode,
    out: *mut ScdtProfile,
) -> ScdtStatus {
    guard(|| {
        let (Some(code), false) = (code.as_ref(), out.is_null()) else {
            return fail(ScdtStatus::NullPointer, "null argument");
        };
        let p = classify(&code.0);
        *out = ScdtProfile {
            dim: p.n,
            size: p.size,
            s: p.s,
            t: p.t(),
            tight: p.tight,
            delsarte: p.delsarte,
            rational: code.0.spectrum().is_rational(),
        };
        ScdtStatus::Ok
    })
}

/// The full text report. Returns `Violation` with the report set when an
/// expectation failed.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scdt_code_analyze(
    code: *const ScdtCode,
    deep: bool,
    out: *mut *mut c_char,
) -> ScdtStatus {
    guard(|| {
        let (Some(code), false) = (code.as_ref(), out.is_null()) else {
            return fail(ScdtStatus::NullPointer, "null argument");
        };
        *out = ptr::null_mut();
        let report = analyze(
            &code.0,
            AnalyzeOptions {
                deep,
                approx: false,
            },
        );
        let status = put_string(out, report.text);
        match (status, report.violations.is_empty()) {
            (ScdtStatus::Ok, false) => fail(ScdtStatus::Violation, report.violations.join("; ")),
            (s, _) => s,
        }
    })
}

/// The LP certificate section.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scdt_code_bound(
    code: *const ScdtCode,
    out: *mut *mut c_char,
) -> ScdtStatus {
    guard(|| {
        let (Some(code), false) = (code.as_ref(), out.is_null()) else {
            return fail(ScdtStatus::NullPointer, "null argument");
        };
        *out = ptr::null_mut();
        let report = bound_report(&code.0);
        let status = put_string(out, report.text);
        match (status, report.violations.is_empty()) {
            (ScdtStatus::Ok, false) => fail(ScdtStatus::Violation, report.violations.join("; ")),
            (s, _) => s,
        }
    })
}

/// The code in `scdt-code v1` text form.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn scdt_code_emit(
    code: *const ScdtCode,
    out: *mut *mut c_char,
) -> ScdtStatus {
    guard(|| {
        let (Some(code), false) = (code.as_ref(), out.is_null()) else {
            return fail(ScdtStatus::NullPointer, "null argument");
        };
        put_string(out, emit_code(&code.0))
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn scdt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn scdt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn scdt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
