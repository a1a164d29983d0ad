//! C ABI over `subuniv`.
//!
//! Structures are opaque handles created by `subuniv_structure_from_json` or
//! `subuniv_structure_named` and released with `subuniv_structure_free`.
//! Every fallible function returns a `SubunivStatus`; on failure the message
//! is available from `subuniv_last_error_message` on the same thread until
//! the next call. Strings returned through out-pointers are owned by the
//! caller and must be released with `subuniv_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use subuniv::catalog::build_named;
use subuniv::enumerate::{enumerate_semilattices_with_ceiling, DEFAULT_CEILING};
use subuniv::io::parse_structure;
use subuniv::subuniverse::{count_subuniverses_bruteforce, is_subuniverse, relative_count, Structure};
use subuniv::verify::verify_theorem;
use subuniv::{Error, JoinStructure};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubunivStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidStructure = 4,
    SizeLimit = 5,
    UnknownId = 6,
    Internal = 7,
}

/// Opaque structure handle.
pub struct SubunivStructure {
    structure: Structure,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SubunivStatus {
    match e {
        Error::Parse(_) | Error::Io { .. } => SubunivStatus::Parse,
        Error::SizeLimit { .. } | Error::Empty => SubunivStatus::SizeLimit,
        Error::UnknownId(_) => SubunivStatus::UnknownId,
        Error::OracleMismatch { .. } | Error::NoMatch(_) => SubunivStatus::Internal,
        _ => SubunivStatus::InvalidStructure,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (SubunivStatus, String)>) -> SubunivStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SubunivStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SubunivStatus::Internal
        }
    }
}

fn lib<T>(r: subuniv::Result<T>) -> Result<T, (SubunivStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (SubunivStatus, String) {
    (SubunivStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, (SubunivStatus, String)> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| (SubunivStatus::InvalidUtf8, e.to_string()))
}

unsafe fn handle<'a>(s: *const SubunivStructure) -> Result<&'a SubunivStructure, (SubunivStatus, String)> {
    s.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), (SubunivStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn into_handle(structure: Structure) -> *mut SubunivStructure {
    Box::into_raw(Box::new(SubunivStructure { structure }))
}

/// Parses a structure from JSON text (`{"labels", "covers"}` or
/// `{"n", "joins"}`).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subuniv_structure_from_json(
    json: *const c_char,
    out: *mut *mut SubunivStructure,
) -> SubunivStatus {
    guard(|| {
        let loaded = lib(parse_structure(text(json)?))?;
        write(out, into_handle(loaded.structure))
    })
}

/// Builds a catalog structure by id, e.g. `"H5"` or `"U14"`.
///
/// # Safety
/// `id` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subuniv_structure_named(id: *const c_char, out: *mut *mut SubunivStructure) -> SubunivStatus {
    guard(|| {
        let named = lib(build_named(text(id)?))?;
        write(out, into_handle(named.structure))
    })
}

/// # Safety
/// `s` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn subuniv_structure_free(s: *mut SubunivStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subuniv_structure_size(s: *const SubunivStructure, out: *mut usize) -> SubunivStatus {
    guard(|| write(out, handle(s)?.structure.size()))
}

/// Number of subuniverses, including the empty set.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subuniv_count(s: *const SubunivStructure, out: *mut u64) -> SubunivStatus {
    guard(|| {
        let report = lib(count_subuniverses_bruteforce(&handle(s)?.structure))?;
        write(out, report.count)
    })
}

/// σ_k as `mantissa · 2^exponent` with an odd mantissa (or zero).
///
/// # Safety
/// `s` must be a live handle; `mantissa` and `exponent` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subuniv_sigma(
    s: *const SubunivStructure,
    k: i32,
    mantissa: *mut u64,
    exponent: *mut i32,
) -> SubunivStatus {
    guard(|| {
        let a = &handle(s)?.structure;
        if mantissa.is_null() || exponent.is_null() {
            return Err(null());
        }
        let count = lib(count_subuniverses_bruteforce(a))?.count;
        let sigma = relative_count(count, a.size(), k);
        write(mantissa, sigma.mantissa())?;
        write(exponent, sigma.exponent())
    })
}

/// Whether the subset with bit `i` set for element `i` is closed.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subuniv_is_subuniverse(
    s: *const SubunivStructure,
    mask: u32,
    out: *mut bool,
) -> SubunivStatus {
    guard(|| {
        let a = &handle(s)?.structure;
        let n = a.size();
        if n < 32 && mask >> n != 0 {
            return Err((SubunivStatus::InvalidStructure, format!("mask has bits outside 0..{n}")));
        }
        write(out, is_subuniverse(a, mask))
    })
}

/// Number of `n`-element join-semilattices up to isomorphism.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subuniv_enumerate_count(n: usize, out: *mut u64) -> SubunivStatus {
    guard(|| {
        let run = lib(enumerate_semilattices_with_ceiling(n, DEFAULT_CEILING))?;
        write(out, run.len() as u64)
    })
}

/// Theorem report for size `n` as JSON; release with `subuniv_string_free`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn subuniv_verify_theorem_json(n: usize, out: *mut *mut c_char) -> SubunivStatus {
    guard(|| {
        let report = lib(verify_theorem(n, DEFAULT_CEILING))?;
        let text = serde_json::to_string(&report).map_err(|e| (SubunivStatus::Internal, e.to_string()))?;
        let c = CString::new(text).map_err(|e| (SubunivStatus::Internal, e.to_string()))?;
        write(out, c.into_raw())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn subuniv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null.
#[no_mangle]
pub extern "C" fn subuniv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
