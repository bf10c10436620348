//! C interface to `qhom`.
//!
//! Objects are opaque handles released with their `_free` function. Every fallible call returns a
//! [`QhomStatus`]; on failure `qhom_last_error()` describes the error on the calling thread.
//! Strings returned through out-parameters are owned by the caller and released with
//! `qhom_string_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use qhom::algebra::{parse_polynomial, Field, PolyRing, Polynomial, QuotientRing, Ring};
use qhom::cli::runner::{run_script, RunOptions};
use qhom::invariants::corpus;
use qhom::invariants::harness::theorem_harness;
use qhom::modules::GradedModule;
use qhom::quasires::{qid_certified, qpd_certified};
use qhom::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QhomStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    Parse = 4,
    RingMismatch = 5,
    NotHomogeneous = 6,
    InvalidComplex = 7,
    NotArtinian = 8,
    NotCohenMacaulay = 9,
    TruncationInsufficient = 10,
    Unverified = 11,
    Precondition = 12,
    /// A script ran but some statements failed; the output is still filled in.
    Runtime = 13,
    Internal = 14,
}

/// A graded quotient of a polynomial ring.
pub struct QhomRing(Ring);

/// A finitely generated graded module.
pub struct QhomModule(GradedModule);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QhomStatus {
    match e {
        Error::InvalidInput(_) | Error::Io(_) | Error::Json(_) => QhomStatus::InvalidInput,
        Error::Parse { .. } => QhomStatus::Parse,
        Error::RingMismatch(_) => QhomStatus::RingMismatch,
        Error::NotHomogeneous(_) => QhomStatus::NotHomogeneous,
        Error::InvalidComplex { .. } | Error::NotChainMap { .. } | Error::LiftFailed { .. } => QhomStatus::InvalidComplex,
        Error::NotArtinian => QhomStatus::NotArtinian,
        Error::NotCohenMacaulay(_) => QhomStatus::NotCohenMacaulay,
        Error::TruncationInsufficient(_) => QhomStatus::TruncationInsufficient,
        Error::Unverified(_) => QhomStatus::Unverified,
        Error::Precondition(_) => QhomStatus::Precondition,
        Error::Runtime { .. } => QhomStatus::Runtime,
    }
}

struct Fail(QhomStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QhomStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            QhomStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal error: {msg}"));
            QhomStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(QhomStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(QhomStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(QhomStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(QhomStatus::NullPointer, "null output pointer".into()));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(QhomStatus::Internal, "string contains NUL".into()))?;
    put(out, c.into_raw())
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).collect()
}

fn options(seed: u64) -> RunOptions {
    RunOptions { seed, ..RunOptions::default() }
}

/// Message for the most recent failure on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn qhom_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn qhom_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[no_mangle]
pub unsafe extern "C" fn qhom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `k[vars] / (ideal)` with `k` the rationals when `characteristic` is 0 and `GF(p)` otherwise.
/// `vars` and `ideal` are comma-separated; `ideal` may be empty.
#[no_mangle]
pub unsafe extern "C" fn qhom_ring_new(
    characteristic: u32,
    vars: *const c_char,
    ideal: *const c_char,
    out: *mut *mut QhomRing,
) -> QhomStatus {
    guard(|| {
        let field = if characteristic == 0 { Field::Rationals } else { Field::prime(characteristic)? };
        let names = split_list(text(vars)?);
        let pr = Arc::new(PolyRing::new(field, &names)?);
        let gens = split_list(text(ideal)?)
            .into_iter()
            .map(|g| parse_polynomial(g, &pr))
            .collect::<Result<Vec<Polynomial>, Error>>()?;
        let ring = QuotientRing::new(pr, gens)?;
        put(out, Box::into_raw(Box::new(QhomRing(ring))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn qhom_ring_free(r: *mut QhomRing) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

#[no_mangle]
pub unsafe extern "C" fn qhom_ring_describe(r: *const QhomRing, out: *mut *mut c_char) -> QhomStatus {
    guard(|| put_string(out, handle(r)?.0.describe()))
}

#[no_mangle]
pub unsafe extern "C" fn qhom_ring_dim(r: *const QhomRing, out: *mut i32) -> QhomStatus {
    guard(|| put(out, qhom::invariants::ring_dim(&handle(r)?.0)))
}

#[no_mangle]
pub unsafe extern "C" fn qhom_ring_depth(r: *const QhomRing, out: *mut u32) -> QhomStatus {
    guard(|| put(out, qhom::invariants::ring_depth(&handle(r)?.0)? as u32))
}

#[no_mangle]
pub unsafe extern "C" fn qhom_ring_is_cm(r: *const QhomRing, out: *mut bool) -> QhomStatus {
    guard(|| put(out, qhom::invariants::is_cm(&handle(r)?.0)?))
}

#[no_mangle]
pub unsafe extern "C" fn qhom_ring_is_gorenstein(r: *const QhomRing, out: *mut bool) -> QhomStatus {
    guard(|| put(out, qhom::invariants::is_gorenstein(&handle(r)?.0)?))
}

fn new_module(out: *mut *mut QhomModule, m: GradedModule) -> Result<(), Fail> {
    unsafe { put(out, Box::into_raw(Box::new(QhomModule(m)))) }
}

/// The residue field `k = R/m`.
#[no_mangle]
pub unsafe extern "C" fn qhom_module_residue_field(r: *const QhomRing, out: *mut *mut QhomModule) -> QhomStatus {
    guard(|| new_module(out, GradedModule::residue_field(handle(r)?.0.clone())))
}

/// `R/I` for a comma-separated list of generators of `I`.
#[no_mangle]
pub unsafe extern "C" fn qhom_module_cyclic(
    r: *const QhomRing,
    ideal: *const c_char,
    out: *mut *mut QhomModule,
) -> QhomStatus {
    guard(|| {
        let ring = &handle(r)?.0;
        let gens = split_list(text(ideal)?)
            .into_iter()
            .map(|g| parse_polynomial(g, ring.poly()))
            .collect::<Result<Vec<Polynomial>, Error>>()?;
        new_module(out, GradedModule::cyclic(ring.clone(), &gens)?)
    })
}

/// `⊕ R(-t_i)`; `twists` may be NULL when `n` is 0.
#[no_mangle]
pub unsafe extern "C" fn qhom_module_free_module(
    r: *const QhomRing,
    twists: *const i32,
    n: usize,
    out: *mut *mut QhomModule,
) -> QhomStatus {
    guard(|| {
        let ring = &handle(r)?.0;
        let t = if n == 0 {
            Vec::new()
        } else if twists.is_null() {
            return Err(Fail(QhomStatus::NullPointer, "null twist array".into()));
        } else {
            std::slice::from_raw_parts(twists, n).to_vec()
        };
        new_module(out, GradedModule::free(ring.clone(), t))
    })
}

#[no_mangle]
pub unsafe extern "C" fn qhom_module_free(m: *mut QhomModule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

#[no_mangle]
pub unsafe extern "C" fn qhom_module_depth(m: *const QhomModule, out: *mut u32) -> QhomStatus {
    guard(|| put(out, qhom::invariants::depth(&handle(m)?.0)? as u32))
}

/// Writes `dim_k M_d` for `d = lo..=hi` into `dims`, which must hold `hi - lo + 1` entries.
#[no_mangle]
pub unsafe extern "C" fn qhom_module_hilbert(m: *const QhomModule, lo: i32, hi: i32, dims: *mut i64) -> QhomStatus {
    guard(|| {
        let m = &handle(m)?.0;
        if hi < lo {
            return Err(Fail(QhomStatus::InvalidInput, "empty degree range".into()));
        }
        if dims.is_null() {
            return Err(Fail(QhomStatus::NullPointer, "null output buffer".into()));
        }
        let values = m.hilbert_series().dims(lo, hi);
        ptr::copy_nonoverlapping(values.as_ptr(), dims, values.len());
        Ok(())
    })
}

/// Certified quasi-projective dimension as JSON (value, route, certificate, trail).
#[no_mangle]
pub unsafe extern "C" fn qhom_qpd_json(m: *const QhomModule, seed: u64, out: *mut *mut c_char) -> QhomStatus {
    guard(|| {
        let v = qpd_certified(&handle(m)?.0, options(seed).verdict())?;
        put_string(out, json_text(&qhom::report::verdict_json(&v)))
    })
}

/// Certified quasi-injective dimension as JSON (value, route, certificate or obstruction, trail).
#[no_mangle]
pub unsafe extern "C" fn qhom_qid_json(m: *const QhomModule, seed: u64, out: *mut *mut c_char) -> QhomStatus {
    guard(|| {
        let v = qid_certified(&handle(m)?.0, options(seed).verdict())?;
        put_string(out, json_text(&qhom::report::verdict_json(&v)))
    })
}

/// Runs a script and writes the session JSON. Returns `QHOM_STATUS_RUNTIME` with the JSON still
/// written when some statements failed.
#[no_mangle]
pub unsafe extern "C" fn qhom_run_script(script: *const c_char, seed: u64, out: *mut *mut c_char) -> QhomStatus {
    guard(|| {
        let session = run_script(text(script)?, options(seed))?;
        put_string(out, json_text(&session.to_json()))?;
        match session.failures() {
            0 => Ok(()),
            n => Err(Fail(QhomStatus::Runtime, format!("{n} statement(s) failed"))),
        }
    })
}

/// Runs the theorem harness on the shipped corpus and writes the report JSON.
#[no_mangle]
pub unsafe extern "C" fn qhom_verify_corpus(seed: u64, out: *mut *mut c_char, violations: *mut usize) -> QhomStatus {
    guard(|| {
        let opts = options(seed);
        let report = theorem_harness(&corpus::standard()?, &opts)?;
        put(violations, report.violations())?;
        put_string(out, json_text(&report.to_json(&opts)))
    })
}
