//! C ABI over `sktorus`.
//!
//! Every fallible function returns an [`SktStatus`] and writes its result through an out-pointer.
//! Handles are opaque and must be released with the matching `*_free` function.
//! After a non-`Ok` status, [`skt_last_error`] describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use sktorus::cheby::{chebyshev_of_ke, generalized_demoivre};
use sktorus::cli::{cmd_gauss_criterion, run_all, Scalars, Settings, Status};
use sktorus::qcoeff::CycContext;
use sktorus::qtorus::SymElement;
use sktorus::surface::{fixture, flip, Quasitriangulation};
use sktorus::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SktStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    UnknownName = 4,
    Dimension = 5,
    NotInvertible = 6,
    BudgetExceeded = 7,
    Json = 8,
    Panic = 9,
}

/// Quasitriangulation handle.
pub struct SktQuasitri(Quasitriangulation);

/// Torus element with Laurent coefficients in `t = q^(1/2)`.
pub struct SktElement(SymElement);

/// Cyclotomic context `Z[t]/Phi_m`.
pub struct SktContext(Arc<CycContext>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SktStatus {
    match e {
        Error::Dimension { .. } | Error::TorusMismatch => SktStatus::Dimension,
        Error::NotInvertible(_) | Error::InexactDivision(_) | Error::ZeroElement(_) => SktStatus::NotInvertible,
        Error::UnknownName(_) => SktStatus::UnknownName,
        Error::Budget(_) => SktStatus::BudgetExceeded,
        Error::Json(_) => SktStatus::Json,
        Error::Invalid(_) | Error::Malformed(_) => SktStatus::InvalidInput,
    }
}

struct Fail(SktStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SktStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SktStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            SktStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(SktStatus::NullPointer, "null pointer argument".into())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(SktStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = CString::new(s)
        .map_err(|_| Fail(SktStatus::Json, "interior NUL".into()))?
        .into_raw();
    Ok(())
}

unsafe fn put_value<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = v;
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

/// Message for the last failure on this thread, or NULL. Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn skt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn skt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string produced by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn skt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a quasitriangulation from JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skt_quasitri_from_json(json: *const c_char, out: *mut *mut SktQuasitri) -> SktStatus {
    guard(|| {
        let q = Quasitriangulation::from_json(str_arg(json)?)?;
        put(out, SktQuasitri(q))
    })
}

/// Loads a bundled fixture by name (`annulus`, `square`, `eye`, `pentagon`).
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skt_quasitri_fixture(name: *const c_char, out: *mut *mut SktQuasitri) -> SktStatus {
    guard(|| put(out, SktQuasitri(fixture(str_arg(name)?)?)))
}

/// # Safety
/// `q` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skt_quasitri_free(q: *mut SktQuasitri) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Vertex matrix as JSON `{"index": [...], "rows": [[...]]}`; free with [`skt_string_free`].
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skt_quasitri_vertex_matrix_json(q: *const SktQuasitri, out: *mut *mut c_char) -> SktStatus {
    guard(|| {
        let m = handle(q)?.0.vertex_matrix()?;
        let s = serde_json::to_string(&m).map_err(|e| Fail(SktStatus::Json, e.to_string()))?;
        put_string(out, s)
    })
}

/// Serializes the quasitriangulation; free with [`skt_string_free`].
///
/// # Safety
/// `q` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skt_quasitri_to_json(q: *const SktQuasitri, out: *mut *mut c_char) -> SktStatus {
    guard(|| {
        let s = handle(q)?.0.to_json();
        put_string(out, s)
    })
}

/// Flips `edge`, producing a new handle.
///
/// # Safety
/// `q` must be a live handle, `edge` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skt_quasitri_flip(
    q: *const SktQuasitri,
    edge: *const c_char,
    out: *mut *mut SktQuasitri,
) -> SktStatus {
    guard(|| {
        let f = flip(&handle(q)?.0, str_arg(edge)?)?;
        put(out, SktQuasitri(f.target))
    })
}

/// Cyclotomic context for a primitive `m`-th root `t`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skt_context_new(m: u64, out: *mut *mut SktContext) -> SktStatus {
    guard(|| put(out, SktContext(CycContext::new(m)?)))
}

/// `N = ord(xi^4)` with `xi = t^2`.
///
/// # Safety
/// `ctx` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skt_context_big_n(ctx: *const SktContext, out: *mut u64) -> SktStatus {
    guard(|| put_value(out, handle(ctx)?.0.big_n()))
}

/// # Safety
/// `ctx` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skt_context_free(ctx: *mut SktContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Closed form of `T_n(K + K^-1 + E)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skt_element_demoivre(n: u32, out: *mut *mut SktElement) -> SktStatus {
    guard(|| put(out, SktElement(generalized_demoivre(n)?)))
}

/// Direct evaluation of `T_n(K + K^-1 + E)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skt_element_chebyshev_ke(n: u32, out: *mut *mut SktElement) -> SktStatus {
    guard(|| put(out, SktElement(chebyshev_of_ke(n)?)))
}

/// Product `a * b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skt_element_mul(
    a: *const SktElement,
    b: *const SktElement,
    out: *mut *mut SktElement,
) -> SktStatus {
    guard(|| {
        let p = handle(a)?.0.try_mul(&handle(b)?.0)?;
        put(out, SktElement(p))
    })
}

/// Sum `a + b`.
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skt_element_add(
    a: *const SktElement,
    b: *const SktElement,
    out: *mut *mut SktElement,
) -> SktStatus {
    guard(|| {
        let p = handle(a)?.0.try_add(&handle(b)?.0)?;
        put(out, SktElement(p))
    })
}

/// Exact equality, after specializing to `ctx` when it is non-NULL.
///
/// # Safety
/// `a`, `b` must be live handles, `ctx` NULL or live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skt_element_equal(
    a: *const SktElement,
    b: *const SktElement,
    ctx: *const SktContext,
    out: *mut bool,
) -> SktStatus {
    guard(|| {
        let (a, b) = (&handle(a)?.0, &handle(b)?.0);
        if a.torus() != b.torus() {
            return Err(Error::TorusMismatch.into());
        }
        let eq = match ctx.as_ref() {
            Some(c) => a.specialize(&c.0) == b.specialize(&c.0),
            None => a == b,
        };
        put_value(out, eq)
    })
}

/// Canonical JSON, specialized to `ctx` when it is non-NULL; free with [`skt_string_free`].
///
/// # Safety
/// `e` must be a live handle, `ctx` NULL or live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skt_element_to_json(
    e: *const SktElement,
    ctx: *const SktContext,
    out: *mut *mut c_char,
) -> SktStatus {
    guard(|| {
        let e = &handle(e)?.0;
        let v = match ctx.as_ref() {
            Some(c) => e.specialize(&c.0).to_json(),
            None => e.to_json(),
        };
        put_string(out, v.to_string())
    })
}

/// # Safety
/// `e` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn skt_element_free(e: *mut SktElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Whether `(X+Y)^N = X^N + Y^N` in the `XY = xi^4 YX` torus; symbolic when `ctx` is NULL.
///
/// # Safety
/// `ctx` must be NULL or live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn skt_gauss_criterion(n: u32, ctx: *const SktContext, out: *mut bool) -> SktStatus {
    guard(|| {
        let s = match ctx.as_ref() {
            Some(c) => Scalars::Root(c.0.clone()),
            None => Scalars::Symbolic,
        };
        let r = cmd_gauss_criterion(&s, n)?;
        put_value(out, r.computed == Some(true))
    })
}

/// Runs every built-in verification; writes the number of failures. A zero budget skips enumerations.
///
/// # Safety
/// `failures` must be writable.
#[no_mangle]
pub unsafe extern "C" fn skt_verify_run_all(budget: u64, failures: *mut u32) -> SktStatus {
    guard(|| {
        let s = Settings {
            scalars: Scalars::Symbolic,
            json: false,
            budget,
            fixture_dir: None,
        };
        let n = run_all(&s)?.iter().filter(|r| r.status == Status::Fail).count();
        put_value(failures, n as u32)
    })
}
