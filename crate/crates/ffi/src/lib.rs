//! C ABI for `salpeter-bounds`.
//!
//! Energies are computed through an opaque [`SbContext`], which owns the
//! memoized `e(m)` cache and may be shared between threads. Every call
//! returns an [`SbStatus`]; on failure a description is available from
//! [`sb_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use salpeter_bounds::bounds::{self, SystemSpec};
use salpeter_bounds::pfunction::EnergyFunction;
use salpeter_bounds::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotConverged = 3,
    NumericalFailure = 4,
    Panic = 5,
}

/// Both bounds for one system.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SbBounds {
    pub lower: f64,
    pub upper: f64,
    pub p_lower: f64,
    pub p_upper: f64,
    pub mu: f64,
}

/// Opaque evaluation context.
pub struct SbContext {
    ef: EnergyFunction,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> SbStatus {
    match err {
        Error::InvalidArgument(_) => SbStatus::InvalidArgument,
        Error::NotConverged { .. } => SbStatus::NotConverged,
        _ => SbStatus::NumericalFailure,
    }
}

/// Runs `f`, stores its value in `out`, and turns errors and panics into a status.
fn guarded<T, F>(out: *mut T, f: F) -> SbStatus
where
    F: FnOnce() -> salpeter_bounds::Result<T>,
{
    if out.is_null() {
        set_last_error("output pointer is null");
        return SbStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            // SAFETY: checked non-null above; the caller provides writable storage.
            unsafe { out.write(v) };
            SbStatus::Ok
        }
        Ok(Err(e)) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic");
            SbStatus::Panic
        }
    }
}

/// # Safety
/// `ctx` must be null or a live pointer from [`sb_context_new`].
unsafe fn context<'a>(ctx: *const SbContext) -> Option<&'a SbContext> {
    ctx.as_ref()
}

/// New context with relative tolerance `tol` for `e(m)` (pass 0 for the
/// default 1e-8). Returns null if `tol` is out of range.
#[no_mangle]
pub extern "C" fn sb_context_new(tol: f64) -> *mut SbContext {
    let tol = if tol == 0.0 { 1e-8 } else { tol };
    if !(1e-12..1.0).contains(&tol) {
        set_last_error("tolerance must lie in [1e-12, 1)");
        return ptr::null_mut();
    }
    Box::into_raw(Box::new(SbContext { ef: EnergyFunction::new(tol) }))
}

/// # Safety
/// `ctx` must be null or a pointer from [`sb_context_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sb_context_free(ctx: *mut SbContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

macro_rules! with_context {
    ($ctx:expr) => {
        match context($ctx) {
            Some(c) => c,
            None => {
                set_last_error("context pointer is null");
                return SbStatus::NullPointer;
            }
        }
    };
}

/// Ground energy `e(m)` of `√(m² + p²) + r²`.
///
/// # Safety
/// `ctx` from [`sb_context_new`]; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sb_e_of_m(ctx: *const SbContext, m: f64, out: *mut f64) -> SbStatus {
    let c = with_context!(ctx);
    guarded(out, || c.ef.e_of_m(m))
}

/// # Safety
/// `ctx` from [`sb_context_new`]; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sb_p_of_m(ctx: *const SbContext, m: f64, out: *mut f64) -> SbStatus {
    let c = with_context!(ctx);
    guarded(out, || c.ef.p_of_m(m).map(|p| p.value()))
}

/// # Safety
/// `ctx` from [`sb_context_new`]; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sb_bounds(ctx: *const SbContext, n: u32, m: f64, gamma: f64, out: *mut SbBounds) -> SbStatus {
    let c = with_context!(ctx);
    guarded(out, || {
        let b = bounds::bounds_pair(&c.ef, &SystemSpec::new(n, m, gamma)?)?;
        Ok(SbBounds {
            lower: b.lower,
            upper: b.upper,
            p_lower: b.p_lower.value(),
            p_upper: b.p_upper.value(),
            mu: b.mu,
        })
    })
}

/// # Safety
/// `ctx` from [`sb_context_new`]; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sb_lower_bound(ctx: *const SbContext, n: u32, m: f64, gamma: f64, out: *mut f64) -> SbStatus {
    let c = with_context!(ctx);
    guarded(out, || bounds::lower_bound(&c.ef, &SystemSpec::new(n, m, gamma)?))
}

/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sb_upper_bound(n: u32, m: f64, gamma: f64, out: *mut f64) -> SbStatus {
    guarded(out, || bounds::upper_bound(&SystemSpec::new(n, m, gamma)?))
}

/// # Safety
/// `ctx` from [`sb_context_new`]; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sb_two_body_exact(ctx: *const SbContext, m: f64, gamma: f64, out: *mut f64) -> SbStatus {
    let c = with_context!(ctx);
    guarded(out, || bounds::two_body_exact(&c.ef, m, gamma))
}

/// Schrödinger-limit energy; needs `m > 0`.
///
/// # Safety
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sb_nonrel_energy(n: u32, m: f64, gamma: f64, out: *mut f64) -> SbStatus {
    guarded(out, || bounds::nonrel_energy(&SystemSpec::new(n, m, gamma)?))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn sb_status_string(status: SbStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        SbStatus::Ok => b"ok\0",
        SbStatus::NullPointer => b"null pointer\0",
        SbStatus::InvalidArgument => b"invalid argument\0",
        SbStatus::NotConverged => b"solver did not converge\0",
        SbStatus::NumericalFailure => b"numerical failure\0",
        SbStatus::Panic => b"internal panic\0",
    };
    s.as_ptr().cast()
}

/// Message for the last failure on this thread. Valid until the next
/// failing call on the same thread; empty if nothing has failed.
#[no_mangle]
pub extern "C" fn sb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
