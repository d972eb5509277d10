//! C ABI over the `pham-brieskorn` library.
//!
//! Tuples and verdicts are opaque handles owned by the caller and released
//! with their `_free` function. Every fallible call returns a [`PbError`];
//! on failure a message is available from [`pb_last_error_message`] until
//! the next failing call on the same thread. Strings returned through out
//! parameters are NUL-terminated UTF-8 and must be released with
//! [`pb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pham_brieskorn::arith::{self, ExponentTuple, GammaClass};
use pham_brieskorn::classify::{self, Status, Verdict};
use pham_brieskorn::{dualgraph, geometry, Error};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbError {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Domain = 4,
    NoWitness = 5,
    Internal = 6,
}

/// Rigidity verdict.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbStatus {
    Rigid = 0,
    NotRigid = 1,
    ConjecturallyRigid = 2,
}

/// Membership of a tuple in the Γ family.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbGammaClass {
    NotInGamma = 0,
    Gamma = 1,
    GammaPlus = 2,
    GammaMinus = 3,
}

/// Opaque exponent tuple.
pub struct PbTuple(ExponentTuple);

/// Opaque classification result.
pub struct PbVerdict(Verdict);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(code: PbError, msg: impl Into<String>) -> PbError {
    set_error(msg.into());
    code
}

fn from_lib(e: Error) -> PbError {
    let code = match e {
        Error::TupleTooShort(_)
        | Error::NonPositiveEntry(_)
        | Error::Parse(_)
        | Error::InvalidGraph(_)
        | Error::UnknownCurve(_)
        | Error::LengthMismatch { .. } => PbError::InvalidInput,
        Error::NoWitness(_) => PbError::NoWitness,
        _ => PbError::Domain,
    };
    fail(code, e.to_string())
}

/// Runs `f`, turning a panic into [`PbError::Internal`].
fn guard(f: impl FnOnce() -> PbError) -> PbError {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(PbError::Internal, "internal panic"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PbError> {
    if s.is_null() {
        return Err(fail(PbError::NullPointer, "null string"));
    }
    CStr::from_ptr(s).to_str().map_err(|e| fail(PbError::InvalidUtf8, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> PbError {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            PbError::Ok
        }
        Err(e) => fail(PbError::Internal, e.to_string()),
    }
}

unsafe fn write_json(out: *mut *mut c_char, value: &impl serde::Serialize) -> PbError {
    match serde_json::to_string(value) {
        Ok(s) => write_string(out, s),
        Err(e) => fail(PbError::Internal, e.to_string()),
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(PbError::NullPointer, concat!("null argument `", stringify!($p), "`"));
        })+
    };
}

/// Message of the last failing call on this thread, or NULL if none.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn pb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn pb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a tuple from `len` positive entries.
///
/// # Safety
/// `entries` must point to `len` readable integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_tuple_new(entries: *const u64, len: usize, out: *mut *mut PbTuple) -> PbError {
    non_null!(entries, out);
    guard(|| {
        let v = std::slice::from_raw_parts(entries, len);
        match ExponentTuple::from_u64s(v) {
            Ok(t) => {
                *out = Box::into_raw(Box::new(PbTuple(t)));
                PbError::Ok
            }
            Err(e) => from_lib(e),
        }
    })
}

/// Parses a tuple such as `"2,3,5,30"` or `"(2 3 5 30)"`. Entries may
/// exceed 64 bits.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_tuple_parse(text: *const c_char, out: *mut *mut PbTuple) -> PbError {
    non_null!(out);
    guard(|| {
        let text = match read_str(text) {
            Ok(t) => t,
            Err(e) => return e,
        };
        match text.parse::<ExponentTuple>() {
            Ok(t) => {
                *out = Box::into_raw(Box::new(PbTuple(t)));
                PbError::Ok
            }
            Err(e) => from_lib(e),
        }
    })
}

/// Releases a tuple. NULL is ignored.
///
/// # Safety
/// `t` must come from `pb_tuple_new` or `pb_tuple_parse` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pb_tuple_free(t: *mut PbTuple) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of entries, or 0 for NULL.
///
/// # Safety
/// `t` must be NULL or a live tuple.
#[no_mangle]
pub unsafe extern "C" fn pb_tuple_len(t: *const PbTuple) -> usize {
    t.as_ref().map_or(0, |t| t.0.len())
}

/// Cotype of the tuple.
///
/// # Safety
/// `t` must be a live tuple; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_tuple_cotype(t: *const PbTuple, out: *mut usize) -> PbError {
    non_null!(t, out);
    guard(|| {
        *out = arith::cotype(&(*t).0);
        PbError::Ok
    })
}

/// Γ class of the tuple.
///
/// # Safety
/// `t` must be a live tuple; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_tuple_gamma_class(t: *const PbTuple, out: *mut PbGammaClass) -> PbError {
    non_null!(t, out);
    guard(|| {
        *out = match arith::gamma_class(&(*t).0) {
            GammaClass::NotInGamma => PbGammaClass::NotInGamma,
            GammaClass::GammaOnly => PbGammaClass::Gamma,
            GammaClass::GammaPlus => PbGammaClass::GammaPlus,
            GammaClass::GammaMinus => PbGammaClass::GammaMinus,
        };
        PbError::Ok
    })
}

/// Classifies the tuple.
///
/// # Safety
/// `t` must be a live tuple; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_classify(t: *const PbTuple, out: *mut *mut PbVerdict) -> PbError {
    non_null!(t, out);
    guard(|| {
        *out = Box::into_raw(Box::new(PbVerdict(classify::classify(&(*t).0))));
        PbError::Ok
    })
}

/// Releases a verdict. NULL is ignored.
///
/// # Safety
/// `v` must come from `pb_classify` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pb_verdict_free(v: *mut PbVerdict) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Status of a verdict.
///
/// # Safety
/// `v` must be a live verdict; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_verdict_status(v: *const PbVerdict, out: *mut PbStatus) -> PbError {
    non_null!(v, out);
    *out = match (*v).0.status {
        Status::Rigid => PbStatus::Rigid,
        Status::NotRigid => PbStatus::NotRigid,
        Status::ConjecturallyRigid => PbStatus::ConjecturallyRigid,
    };
    PbError::Ok
}

/// Human-readable proof trace, one step per line.
///
/// # Safety
/// `v` must be a live verdict; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_verdict_trace(v: *const PbVerdict, out: *mut *mut c_char) -> PbError {
    non_null!(v, out);
    guard(|| write_string(out, (*v).0.trace.render()))
}

/// Verdict as JSON: tuple, status, trace and witness id.
///
/// # Safety
/// `v` must be a live verdict; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_verdict_json(v: *const PbVerdict, out: *mut *mut c_char) -> PbError {
    non_null!(v, out);
    guard(|| write_json(out, &(*v).0))
}

/// Non-rigidity witness of a verdict as JSON. Fails with
/// [`PbError::NoWitness`] unless the status is not-rigid.
///
/// # Safety
/// `v` must be a live verdict; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_verdict_witness_json(v: *const PbVerdict, out: *mut *mut c_char) -> PbError {
    non_null!(v, out);
    guard(|| match &(*v).0.witness {
        Some(w) => write_json(out, w),
        None => from_lib(Error::NoWitness(format!("{} has no witness", (*v).0.tuple))),
    })
}

/// Surface data of a tuple in Γ⁻ with four entries, as JSON.
///
/// # Safety
/// `t` must be a live tuple; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_geometry_json(t: *const PbTuple, out: *mut *mut c_char) -> PbError {
    non_null!(t, out);
    guard(|| match geometry::surface_report(&(*t).0) {
        Ok(r) => write_json(out, &r),
        Err(e) => from_lib(e),
    })
}

/// Minimal resolution graph of a tuple as JSON, in the format accepted by
/// [`pb_contract_json`].
///
/// # Safety
/// `t` must be a live tuple; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_resolution_graph_json(t: *const PbTuple, out: *mut *mut c_char) -> PbError {
    non_null!(t, out);
    guard(|| match geometry::resolution_graph(&(*t).0) {
        Ok(g) => write_json(out, &g),
        Err(e) => from_lib(e),
    })
}

/// Blows down every isolated contractible curve of a graph given as JSON
/// and returns the final graph as JSON.
///
/// # Safety
/// `graph` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_contract_json(graph: *const c_char, out: *mut *mut c_char) -> PbError {
    non_null!(out);
    guard(|| {
        let text = match read_str(graph) {
            Ok(t) => t,
            Err(e) => return e,
        };
        match dualgraph::IntersectionGraph::from_json(text) {
            Ok(g) => write_json(out, &dualgraph::contract_all(&g).0),
            Err(e) => from_lib(e),
        }
    })
}
