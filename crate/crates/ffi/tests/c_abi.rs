use std::ffi::CStr;
use std::ptr;

use salpeter_bounds_ffi::*;

const AIRY_ZERO: f64 = 2.338_107_410_459_767;

fn message() -> String {
    unsafe { CStr::from_ptr(sb_last_error_message()) }.to_string_lossy().into_owned()
}

#[test]
fn energies_through_the_handle() {
    let ctx = sb_context_new(0.0);
    assert!(!ctx.is_null());
    unsafe {
        let mut e = 0.0;
        assert_eq!(sb_e_of_m(ctx, 0.0, &mut e), SbStatus::Ok);
        assert!((e - AIRY_ZERO).abs() < 1e-7);

        let mut p = 0.0;
        assert_eq!(sb_p_of_m(ctx, 0.0, &mut p), SbStatus::Ok);
        assert!((p - 1.376_083_543_343_775).abs() < 1e-7);

        let mut b = SbBounds::default();
        assert_eq!(sb_bounds(ctx, 2, 0.0, 1.0, &mut b), SbStatus::Ok);
        assert!((b.lower - 4f64.cbrt() * AIRY_ZERO).abs() < 1e-6);
        assert!((b.upper - 3.0 * 1.5f64.powf(2.0 / 3.0)).abs() < 1e-9);
        assert_eq!(b.p_upper, 1.5);

        let mut lo = 0.0;
        let mut exact = 0.0;
        assert_eq!(sb_lower_bound(ctx, 2, 1.0, 0.5, &mut lo), SbStatus::Ok);
        assert_eq!(sb_two_body_exact(ctx, 1.0, 0.5, &mut exact), SbStatus::Ok);
        assert!((lo - exact).abs() <= 1e-10 * exact);

        let mut up = 0.0;
        assert_eq!(sb_upper_bound(3, 1.0, 1.0, &mut up), SbStatus::Ok);
        assert!(lo < up);

        let mut nr = 0.0;
        assert_eq!(sb_nonrel_energy(3, 1000.0, 1.0, &mut nr), SbStatus::Ok);
        assert!((nr - (3000.0 + 3.0 * (1.0f64 / 2000.0).sqrt() * 3f64.sqrt() * 2.0)).abs() < 1e-9);

        sb_context_free(ctx);
    }
}

#[test]
fn errors_are_reported() {
    assert!(sb_context_new(1e-20).is_null());
    let ctx = sb_context_new(1e-8);
    unsafe {
        let mut v = 0.0;
        assert_eq!(sb_e_of_m(ctx, -1.0, &mut v), SbStatus::InvalidArgument);
        assert!(!message().is_empty());
        assert_eq!(sb_upper_bound(1, 0.0, 1.0, &mut v), SbStatus::InvalidArgument);
        assert_eq!(sb_nonrel_energy(2, 0.0, 1.0, &mut v), SbStatus::InvalidArgument);
        assert_eq!(sb_e_of_m(ctx, 1.0, ptr::null_mut()), SbStatus::NullPointer);
        assert_eq!(sb_e_of_m(ptr::null(), 1.0, &mut v), SbStatus::NullPointer);
        assert_eq!(message(), "context pointer is null");
        sb_context_free(ctx);
        sb_context_free(ptr::null_mut());
    }
    let s = unsafe { CStr::from_ptr(sb_status_string(SbStatus::NotConverged)) };
    assert_eq!(s.to_str().unwrap(), "solver did not converge");
}

#[test]
fn context_is_shareable_across_threads() {
    struct Shared(*mut SbContext);
    unsafe impl Send for Shared {}
    unsafe impl Sync for Shared {}
    impl Shared {
        fn get(&self) -> *mut SbContext {
            self.0
        }
    }

    let ctx = Shared(sb_context_new(0.0));
    let values: Vec<f64> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let c = &ctx;
                s.spawn(move || {
                    let mut v = 0.0;
                    assert_eq!(unsafe { sb_e_of_m(c.get(), 2.0, &mut v) }, SbStatus::Ok);
                    v
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert!(values.windows(2).all(|w| w[0] == w[1]));
    unsafe { sb_context_free(ctx.0) };
}

#[test]
fn header_declares_the_api() {
    let header = include_str!("../include/salpeter_bounds.h");
    for name in [
        "typedef struct SbContext SbContext",
        "SB_STATUS_OK = 0",
        "SB_STATUS_NOT_CONVERGED",
        "sb_context_new",
        "sb_context_free",
        "sb_e_of_m",
        "sb_p_of_m",
        "sb_bounds",
        "sb_two_body_exact",
        "sb_nonrel_energy",
        "sb_last_error_message",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}
